#pragma once

#include <stdexcept>
#include <string>

namespace updown {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad ballots, out-of-range k, duplicate identifiers,
/// invalid parameters, infeasible outcomes, oversized committees.
/// The message starts with a stable token (e.g. "BallotOverlap: ...").
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A file or JSON document could not be decoded.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An exhaustive sweep was requested beyond its configured bound.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// An operation over a voter group or candidate set got an empty set.
class EmptyGroup : public Error {
public:
    using Error::Error;
};

/// The weak-veto audit requires a qualifying pivot candidate; none exists.
class NotApplicable : public Error {
public:
    using Error::Error;
};

/// The scoring function cannot produce a representation violation.
class NoViolationPossible : public Error {
public:
    using Error::Error;
};

} // namespace updown
