#pragma once

#include <stdexcept>
#include <string>

namespace handmenu {

/// An argument lies outside the domain an operation accepts.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A PPM/PGM file or other byte stream does not follow its format.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A frame source could not be constructed or failed mid-stream.
class SourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration document failed validation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The player socket is unreachable or broke and could not be re-established.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The player answered with something that is not a valid reply.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(const std::string& what, std::string raw_line)
      : std::runtime_error(what), raw_line_(std::move(raw_line)) {}

  const std::string& raw_line() const noexcept { return raw_line_; }

 private:
  std::string raw_line_;
};

}  // namespace handmenu
