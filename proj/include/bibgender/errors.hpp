#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bibgender {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally malformed input: wrong field count, unparsable number,
// unknown code. Carries the 1-based line of the offending record.
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line(line) {}
    std::size_t line;
};

// Input that parses but violates a data invariant (duplicate rows,
// sub-minimum counts, missing provenance).
struct IntegrityError : Error {
    IntegrityError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line(line) {}
    explicit IntegrityError(const std::string& message) : Error(message), line(0) {}
    std::size_t line;
};

// A labeled subgroup with no SSA-resolvable author at the requested shift.
struct ZeroResolvableError : Error {
    using Error::Error;
};

// Missing (group, year) observations when assembling the composite.
struct CoverageError : Error {
    CoverageError(const std::string& message, std::vector<std::pair<std::string, int>> missing)
        : Error(message), gaps(std::move(missing)) {}
    std::vector<std::pair<std::string, int>> gaps;
};

}  // namespace bibgender
