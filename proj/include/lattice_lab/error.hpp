#pragma once

#include <stdexcept>
#include <string>

namespace lattice_lab {

/// Base class of every domain error raised by the library. The CLI maps
/// these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter combination (odd n for q-ary, delta = 1, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The basis rows are linearly dependent.
class RankError : public Error {
public:
    using Error::Error;
};

/// gen_basis could not produce a full-rank basis within its retry limit.
class GenerationError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace lattice_lab
