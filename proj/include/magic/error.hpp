#pragma once

#include <stdexcept>
#include <string>

namespace magic {

// Base of every error raised by the toolkit. The CLI maps each subtype to an
// exit code (see exit_code_for).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad symbol index, bad text format, mismatched alphabets.
class InputError : public Error {
public:
    using Error::Error;
};

// (n, alpha) outside the interval a generator or parameter function supports.
class RangeError : public Error {
public:
    using Error::Error;
};

// A configured cap (subset states, monoid elements, enumeration size) was hit.
class ResourceError : public Error {
public:
    using Error::Error;
};

// A construction was applied where it does not preserve the language, or an
// internal certificate failed its own invariant check.
class ConstructionError : public Error {
public:
    using Error::Error;
};

}  // namespace magic
