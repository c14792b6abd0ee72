#pragma once

#include <stdexcept>
#include <string>

namespace assc {

/// Bad arguments or violated data invariants (CLI exit code 2).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem trouble: missing files, unwritable paths (CLI exit code 1).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed file contents; carries the offending line and field.
class ParseError : public IoError {
public:
    ParseError(const std::string& path, int line, int field, const std::string& what)
        : IoError(path + ":" + std::to_string(line) + ":" + std::to_string(field) + ": " + what),
          line_(line),
          field_(field) {}

    int line() const { return line_; }
    int field() const { return field_; }

private:
    int line_;
    int field_;
};

/// Numerical breakdown, e.g. an eigensolver that did not converge (CLI exit code 3).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace assc
