#pragma once

#include <stdexcept>
#include <string>

namespace drivewatch {

// Base for everything this library throws on bad input or bad state.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Manifest / file / schema problems. Message carries the trial id and
// field where that is known.
class ValidationError : public Error {
public:
  using Error::Error;
};

// I/O failures (missing files, unwritable paths, short reads).
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace drivewatch
