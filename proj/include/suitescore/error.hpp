#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace suitescore {

enum class ErrorKind {
    Format,         // structural problem in an input file (missing header, ragged row)
    Parse,          // a cell that is not a number
    Duplicate,      // repeated benchmark or counter name
    Order,          // non-monotonic timestamps
    Size,           // too few rows/samples for the requested analysis
    Argument,       // caller passed an out-of-range argument
    Dimension,      // vector length mismatch
    Completeness,   // a required time series is missing
    Comparability,  // suites do not share a counter set
    Validation,     // dataset invariant violated
    DegenerateTarget,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Location fields are 0 when unknown;
/// line and column are 1-based.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(message), kind_(kind), line_(line), column_(column) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    ErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace suitescore
