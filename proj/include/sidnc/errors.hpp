#pragma once

#include <stdexcept>
#include <string>

namespace sidnc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
public:
  using Error::Error;
};

/// A coding set contains two packets wanted by the same receiver.
class ConflictingCodingSet : public Error {
public:
  using Error::Error;
};

/// A solution does not cover every wanted packet, or holds a non-clique.
class InvalidSolution : public Error {
public:
  using Error::Error;
};

/// An exponential search exceeded its configured cap.
class SizeLimitExceeded : public Error {
public:
  using Error::Error;
};

class BranchLimitExceeded : public Error {
public:
  using Error::Error;
};

class EmptyDomain : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace sidnc
