#pragma once

#include <stdexcept>
#include <string>

namespace packcolor {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete kind onto a stable exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range caller input (bad cell, plant color > m, ragged grid).
class InputError : public Error {
public:
    using Error::Error;
};

// The request is well-formed but exceeds a hard size guard.
class RefusalError : public Error {
public:
    using Error::Error;
};

// Text that should be DIMACS or solver output could not be understood.
class ParseError : public Error {
public:
    using Error::Error;
};

// A model or decoded coloring failed an independent check.
class IntegrityError : public Error {
public:
    using Error::Error;
};

// The outside world misbehaved: solver could not be spawned, temp files, I/O.
class EnvironmentError : public Error {
public:
    using Error::Error;
};

} // namespace packcolor
