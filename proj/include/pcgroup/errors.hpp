#pragma once

#include <stdexcept>
#include <string>

namespace pcgroup {

/// Malformed text input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation outside its mathematical domain (division by zero, mixed fields,
/// wrong group, failed precondition).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Piece list that does not describe a bijection of [0,1).
struct InvalidBijection : DomainError {
    using DomainError::DomainError;
};

/// Construction exists in principle but the engine has no explicit algorithm.
struct NotImplemented : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A bounded search ran out of candidates.
struct SearchFailure : DomainError {
    using DomainError::DomainError;
};

}  // namespace pcgroup
