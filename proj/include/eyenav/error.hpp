#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eyenav {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate quaternion, non-orthonormal matrix, bad frustum, ...
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An operation received a pose or trace tagged with the wrong coordinate space.
class SpaceMismatchError : public Error {
 public:
  using Error::Error;
};

class UnknownSceneError : public Error {
 public:
  explicit UnknownSceneError(const std::string& scene)
      : Error("unknown scene '" + scene + "'"), scene_(scene) {}

  const std::string& scene() const noexcept { return scene_; }

 private:
  std::string scene_;
};

/// Malformed input text. `row` is the 1-based data row (0 for the header or
/// whole-file problems) and `column` names the offending column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t row = 0, std::string column = {})
      : Error(format(message, row, column)), row_(row), column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t row,
                            const std::string& column) {
    std::string out = message;
    if (row > 0) out += " at row " + std::to_string(row);
    if (!column.empty()) out += ", column " + column;
    return out;
  }

  std::size_t row_;
  std::string column_;
};

/// Filesystem problems (unreadable root, missing file, failed write).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Bad caller-supplied parameters (analytics on too few frames, bad motion parameters...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace eyenav
