#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stegpat {

enum class Errc {
  MalformedId,
  ParseError,
  NotFound,
  AmbiguousKey,
  UnknownBinding,
  UnsupportedCarrier,
  InvalidParams,
  InsufficientCapacity,
  FrameError,
  InvalidScript,
  Io,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::MalformedId: return "MalformedId";
    case Errc::ParseError: return "ParseError";
    case Errc::NotFound: return "NotFound";
    case Errc::AmbiguousKey: return "AmbiguousKey";
    case Errc::UnknownBinding: return "UnknownBinding";
    case Errc::UnsupportedCarrier: return "UnsupportedCarrier";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InsufficientCapacity: return "InsufficientCapacity";
    case Errc::FrameError: return "FrameError";
    case Errc::InvalidScript: return "InvalidScript";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

/// Base exception for every recoverable failure in the library. The code is
/// what callers branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class CapacityError : public Error {
 public:
  CapacityError(std::size_t needed, std::size_t available)
      : Error(Errc::InsufficientCapacity,
              "needed " + std::to_string(needed) + " bits, available " +
                  std::to_string(available) + " bits"),
        needed_(needed),
        available_(available) {}

  std::size_t needed() const noexcept { return needed_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t needed_;
  std::size_t available_;
};

/// Parse failure with a 1-based line number (0 when not line-oriented).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(Errc::ParseError, line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace stegpat
