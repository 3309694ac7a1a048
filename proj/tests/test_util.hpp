#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "geninv/cli.hpp"

namespace testutil {

// Drops the elapsed_ms line so transcripts compare byte-identically.
inline std::string strip_elapsed(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind("elapsed_ms=", 0) != 0) out += line + "\n";
    return out;
}

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

inline CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = geninv::run_cli(args, out, err);
    return CliResult{code, out.str(), err.str()};
}

}  // namespace testutil
