#pragma once

#include <stdexcept>
#include <string>

namespace segal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Composition or construction with incompatible ranks.
class RankMismatch : public Error {
public:
    using Error::Error;
};

/// A coface, codegeneracy, Segal arrow or slice index outside its range.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// A requested level lies above the truncation ceiling of a structure.
class TruncationExceeded : public Error {
public:
    using Error::Error;
};

/// Input data violates a structural law; the message names the law and a witness.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An n-fold bar construction (n >= 2) was requested for a noncommutative monoid.
class NonCommutative : public Error {
public:
    NonCommutative(std::string message, std::size_t left, std::size_t right)
        : Error(std::move(message)), left_(left), right_(right) {}

    std::size_t left() const noexcept { return left_; }
    std::size_t right() const noexcept { return right_; }

private:
    std::size_t left_;
    std::size_t right_;
};

/// Preconditions of the H-space extraction (exact Segal condition, single vertex) fail.
class SegalViolation : public Error {
public:
    using Error::Error;
};

/// Checked fixed-width arithmetic overflowed.
class Overflow : public Error {
public:
    using Error::Error;
};

}  // namespace segal
