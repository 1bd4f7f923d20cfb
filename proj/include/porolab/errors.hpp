#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace porolab {

/// Syntax or semantic diagnostic from the DSL front end (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + msg),
          line_(line),
          col_(col) {}

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

/// A set invariant could not be established at any depth within the declared
/// search bound (CLI exit code 3).
class ElaborationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Hard analysis failure: violated precondition, non-component gap entry,
/// internal consistency breach (CLI exit code 3).
class AnalysisError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace porolab
