#pragma once

#include <stdexcept>
#include <string>

namespace kedmd {

/// Malformed or out-of-domain arguments. CLI exit code 1.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested Matérn order has no closed form here.
class UnsupportedOrderError : public InputError {
public:
    using InputError::InputError;
};

/// Factorization breakdown or non-finite intermediate values. CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failures. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kedmd
