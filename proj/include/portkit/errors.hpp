#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace portkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected)
      : Error("parse error at offset " + std::to_string(position) +
              ": expected " + expected),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class DepthExceeded : public Error {
 public:
  explicit DepthExceeded(int limit)
      : Error("value exceeds nesting depth limit " + std::to_string(limit)) {}
};

class ReservedWordAsIdentifier : public Error {
 public:
  explicit ReservedWordAsIdentifier(const std::string& word)
      : Error("reserved word used as identifier: " + word) {}
};

class InvalidSymbol : public Error {
 public:
  explicit InvalidSymbol(const std::string& name)
      : Error("invalid event symbol: '" + name + "'") {}
};

class InvalidLifetime : public Error {
 public:
  explicit InvalidLifetime(double seconds)
      : Error("event lifetime must be > 0, got " + std::to_string(seconds)) {}
};

class NegativeStep : public Error {
 public:
  explicit NegativeStep(double seconds)
      : Error("clock cannot step backwards (dt = " + std::to_string(seconds) +
              ")") {}
};

class UnknownPort : public Error {
 public:
  explicit UnknownPort(const std::string& name)
      : Error("unknown port: " + name) {}
};

class DirectionMismatch : public Error {
 public:
  explicit DirectionMismatch(const std::string& detail)
      : Error("connection endpoint direction mismatch: " + detail) {}
};

class MonitorInitFailed : public Error {
 public:
  explicit MonitorInitFailed(const std::string& label)
      : Error("monitor create() failed on connection " + label) {}
};

class AlreadyAttached : public Error {
 public:
  explicit AlreadyAttached(const std::string& label)
      : Error("connection " + label + " already has a monitor") {}
};

class UnknownConnection : public Error {
 public:
  explicit UnknownConnection(const std::string& label)
      : Error("unknown connection: " + label) {}
};

class TooManyVariables : public Error {
 public:
  explicit TooManyVariables(std::size_t count)
      : Error("consistency check refused: " + std::to_string(count) +
              " event variables exceed the enumeration cap of 20") {}
};

/// Error in a monitor pipeline definition file. `line` is 1-based.
class MonitorSpecError : public Error {
 public:
  MonitorSpecError(int line, const std::string& reason)
      : Error("monitor spec line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class UnknownStage : public MonitorSpecError {
 public:
  UnknownStage(int line, const std::string& name)
      : MonitorSpecError(line, "unknown stage '" + name + "'") {}
};

class BadPath : public MonitorSpecError {
 public:
  BadPath(int line, const std::string& text)
      : MonitorSpecError(line, "bad access path '" + text + "'") {}
};

class CompileError : public Error {
 public:
  using Error::Error;
};

class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(const std::string& name)
      : Error("unbound parameter $" + name), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& path) : Error("cannot read " + path) {}
};

class ManifestError : public Error {
 public:
  ManifestError(int line, const std::string& reason)
      : Error("manifest line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class UnknownObject : public Error {
 public:
  explicit UnknownObject(const std::string& id)
      : Error("unknown world object: " + id) {}
};

}  // namespace portkit
