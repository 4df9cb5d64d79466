#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace guibench {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedAction : public Error {
 public:
  MalformedAction(std::size_t position, std::string reason)
      : Error("malformed action at " + std::to_string(position) + ": " + reason),
        position_(position),
        reason_(std::move(reason)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

class MissingSection : public Error {
 public:
  explicit MissingSection(std::string name)
      : Error("missing section <" + name + ">"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class EmptySection : public Error {
 public:
  explicit EmptySection(std::string name)
      : Error("empty section <" + name + ">"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class InfeasibleBudget : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class EmptyDenominator : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, std::string reason)
      : Error(file + ":" + std::to_string(line) + ": " + reason),
        file_(std::move(file)),
        line_(line),
        reason_(std::move(reason)) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string reason_;
};

class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string episode_id, std::string detail)
      : Error("episode '" + episode_id + "': " + detail),
        episode_id_(std::move(episode_id)),
        detail_(std::move(detail)) {}

  const std::string& episode_id() const noexcept { return episode_id_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string episode_id_;
  std::string detail_;
};

class MissingScreenshot : public Error {
 public:
  explicit MissingScreenshot(std::string path)
      : Error("missing screenshot: " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Model client failures. Both are raised only after the retry budget is spent.
class ClientTimeout : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace guibench
