#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arena {

/// Malformed or inconsistent input data. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A CSV row failed validation; `row()` is the 1-based line number (the header is line 1).
class ParseError : public DataError {
public:
    ParseError(std::size_t row, const std::string& what)
        : DataError("row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

/// Bad command-line or configuration usage. The CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arena
