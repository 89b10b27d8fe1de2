#pragma once

#include <stdexcept>
#include <string>

namespace dcmapf {

// Raised when a search exceeds its configured state budget.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an input violates a documented precondition.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

}  // namespace dcmapf
