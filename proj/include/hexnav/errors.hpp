#pragma once

#include <stdexcept>
#include <string>

namespace hexnav {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class UnknownTag : public Error {
public:
  using Error::Error;
};

class NotAdjacent : public Error {
public:
  using Error::Error;
};

class Unreachable : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class NoNeighbors : public Error {
public:
  using Error::Error;
};

class BadSymbol : public Error {
public:
  using Error::Error;
};

}  // namespace hexnav
