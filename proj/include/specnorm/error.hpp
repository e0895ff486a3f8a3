#pragma once

#include <stdexcept>
#include <string>

namespace specnorm {

/// Raised for malformed input: bad dimension, out-of-range point, bad file.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two operands live in different ambient groups.
class AmbientMismatch : public InvalidArgument {
public:
    AmbientMismatch() : InvalidArgument("ambient dimension mismatch") {}
};

/// Some value sits at distance >= 1/2 - guard from every integer.
class NotAlmostInteger : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroInSet : public InvalidArgument {
public:
    ZeroInSet() : InvalidArgument("set must not contain 0") {}
};

class SearchBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace specnorm
