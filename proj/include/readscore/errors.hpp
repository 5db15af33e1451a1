#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace readscore {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class FileError : public Error {
 public:
  explicit FileError(std::string path, const std::string& detail)
      : Error(path + ": " + detail), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Malformed structured input (manifest row, config line, stride header, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A byte outside the canonical stream encoding. `position` is the byte
/// offset in the text handed to the parser (file offset when loading .als).
class IllegalCharacterError : public FormatError {
 public:
  IllegalCharacterError(std::size_t position, char character,
                        const std::string& context = {})
      : FormatError(context + (context.empty() ? "" : ": ") +
                    "illegal character '" + printable(character) +
                    "' at position " + std::to_string(position)),
        position_(position),
        character_(character) {}
  std::size_t position() const noexcept { return position_; }
  char character() const noexcept { return character_; }

 private:
  static std::string printable(char c) {
    if (c >= 0x20 && c < 0x7f) return std::string(1, c);
    char buf[8];
    std::snprintf(buf, sizeof(buf), "\\x%02x", static_cast<unsigned char>(c));
    return buf;
  }
  std::size_t position_;
  char character_;
};

/// Frame stride must be a positive number of milliseconds.
class NonPositiveStrideError : public FormatError {
 public:
  explicit NonPositiveStrideError(double stride_ms)
      : FormatError("stride_ms must be > 0, got " + std::to_string(stride_ms)) {}
};

/// Scoring rejects NaN or infinite feature values.
class NonFiniteInputError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration (parameter invariants, CLI values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A generator profile that does not fit the frame budget.
class InfeasibleProfileError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace readscore
