#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eiscong {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap (Bernoulli index, root-scan modulus) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A rational value has the modulus in its denominator and cannot be reduced.
class NotLIntegral : public Error {
public:
    NotLIntegral(const std::string& what, std::int64_t index = -1)
        : Error(what), index_(index) {}
    /// Coefficient index that failed, or -1 when not applicable.
    std::int64_t index() const noexcept { return index_; }

private:
    std::int64_t index_;
};

class Weight2NotCuspidalAtInfinity : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NoDegreeOnePrime : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string field = {}, std::size_t line = 0)
        : Error(what), field_(std::move(field)), line_(line) {}
    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class NetworkError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace eiscong
