#pragma once

#include <stdexcept>
#include <string>

namespace pteq {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dimension mismatch (non-square input, incompatible product shapes, ...).
class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(what) {}
};

// Attempt to invert a singular matrix; carries the rank that elimination found.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, int rank_found)
        : Error(what), rank_found(rank_found) {}
    int rank_found;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// A value object (design instance, quadratic form, ...) fails its invariants.
class InstanceError : public Error {
public:
    explicit InstanceError(const std::string& what) : Error(what) {}
};

// Malformed JSON input or a file that cannot be read.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// An internal consistency check failed. These guard identities that hold for
// every valid input, so seeing one is a high-severity diagnostic, not a user
// error.
class InternalCheckError : public Error {
public:
    explicit InternalCheckError(const std::string& what) : Error(what) {}
};

} // namespace pteq
