#pragma once

#include <stdexcept>
#include <string>

namespace secohom {

/// Base class for every error the engine raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: a table of the wrong shape, an unparsable scalar, a bad index.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An algebraic axiom failed. The message names the axiom and the offending indices.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A cochain space would exceed the configured basis-count cap.
class SizeCapError : public Error {
public:
    SizeCapError(unsigned long long requested, unsigned long long cap)
        : Error("size cap exceeded (requested " + std::to_string(requested) + " > cap " +
                std::to_string(cap) + ")"),
          requested_(requested), cap_(cap) {}

    unsigned long long requested() const noexcept { return requested_; }
    unsigned long long cap() const noexcept { return cap_; }

private:
    unsigned long long requested_;
    unsigned long long cap_;
};

/// An operation was called outside its domain (noncommutative A for Hodge, M != A for cup, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace secohom
