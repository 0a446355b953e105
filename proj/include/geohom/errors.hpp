#pragma once

#include <stdexcept>
#include <string>

namespace geohom {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Raised by solve_string when H contains a predator.
class PredatorPresent : public Error {
public:
    PredatorPresent() : Error("PREDATOR_PRESENT: target graph contains a predator") {}
};

}
