#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geninv {

// Runs one command. args excludes the program name.
// Exit codes: 0 = computed positive answer or passing report, 2 = computed
// negative answer (nonexistence / not regular / failing report), 1 = usage or
// capability error with a one-line diagnostic on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geninv
