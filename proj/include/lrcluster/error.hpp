#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition (dimension mismatch, empty input, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Numerical failure: non-converged factorization, indefinite Gram matrix.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Malformed container file or plan document.
class FormatError : public Error {
public:
    using Error::Error;
};

// Lookup of an id that is not present.
class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace lrc
