#pragma once

#include <stdexcept>
#include <string>

namespace geninv {

// Bad caller input: mixed-ring operands, malformed literals, violated
// operation preconditions.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The request is well formed but this build cannot decide it: infinite ring,
// enumeration bound exceeded, 64-bit rational overflow.
class capability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A checked internal identity failed. Every theorem-derived fast path
// re-evaluates its defining equations; reaching this means one of them does
// not hold and the computation must abort loudly.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Literal parse failure with a 1-based column (and line, when reading files).
class parse_error : public usage_error {
public:
    parse_error(const std::string& what, std::size_t column, std::size_t line = 0)
        : usage_error(what), column(column), line(line) {}
    std::size_t column;
    std::size_t line;
};

}  // namespace geninv
