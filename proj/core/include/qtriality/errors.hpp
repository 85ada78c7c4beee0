#pragma once

#include <stdexcept>
#include <string>

namespace qtriality {

// Base class for all precondition/state violations raised by this library.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotPSD : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidProbabilities : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MissingSetting : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientData : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace qtriality
