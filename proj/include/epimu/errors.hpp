#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace epimu {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation's stated precondition does not hold for its arguments.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ColorAbsentError : public PreconditionError {
public:
    explicit ColorAbsentError(int color)
        : PreconditionError("color " + std::to_string(color) + " is absent from the simplex")
    {
    }
};

class ColorMismatchError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(const std::string& name) : Error("unbound propositional variable '" + name + "'") {}
};

class StateNotInModelError : public Error {
public:
    using Error::Error;
};

class UndefinedFlipError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class UnverifiedMorphismError : public Error {
public:
    using Error::Error;
};

class PartialAssignmentError : public Error {
public:
    using Error::Error;
};

class NonSpernerColoringError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Raised when the downward fixpoint iteration exceeds its iteration cap.
class IterationCapError : public Error {
public:
    using Error::Error;
};

/// A configuration or search exceeds a configured size limit. `count` is the offending size.
class ResourceLimitError : public Error {
public:
    ResourceLimitError(const std::string& what, std::uint64_t count, std::uint64_t limit)
        : Error(what + " (" + std::to_string(count) + " > limit " + std::to_string(limit) + ")"),
          count_(count),
          limit_(limit)
    {
    }
    std::uint64_t count() const { return count_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t count_;
    std::uint64_t limit_;
};

/// Serialized input that does not describe a model.
class FormatError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error("parse error at position " + std::to_string(position) + ": " + msg), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace epimu
