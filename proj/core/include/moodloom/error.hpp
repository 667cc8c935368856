#pragma once

#include <stdexcept>
#include <string>

namespace moodloom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input file (lexicons, tag lexicons, datasets, models).
class LoadError : public Error {
 public:
  LoadError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  explicit LoadError(const std::string& what) : Error(what) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class EmptyLyricsError : public Error {
 public:
  using Error::Error;
};

/// No sentence of a song carries lexicon affect, so it cannot be placed on
/// the valence/arousal plane.
class AffectUnavailableError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class PartitionError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Network or HTTP failure talking to the tag service, after retries.
class FetchError : public Error {
 public:
  using Error::Error;
};

}  // namespace moodloom
