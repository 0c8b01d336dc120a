#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace paretolens {

enum class ErrorCode {
  MalformedJson,
  SchemaViolation,
  DimensionMismatch,
  NonFiniteValue,
  Io,
  RaggedRows,
  UnparsableCell,
  RowCountMismatch,
  ObjectiveDimMismatch,
  LengthMismatch,
  EmptyReferenceSet,
  TooFewSolutions,
  EmptyInput,
  TooFewPoints,
  NonFiniteInput,
  MethodMismatch,
  EmptyPoints,
  MalformedPolygon,
  InvalidArgument,
  Stage,
  Registry,
  Bind,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Root of every error raised by the library. Each subclass carries the
/// structured fields of its failure so callers never parse messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class MalformedJson : public Error {
 public:
  explicit MalformedJson(const std::string& detail);
};

class SchemaViolation : public Error {
 public:
  SchemaViolation(std::string path, const std::string& detail);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::string where, std::size_t expected, std::size_t got);
  const std::string& where() const noexcept { return where_; }
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::string where_;
  std::size_t expected_;
  std::size_t got_;
};

class NonFiniteValue : public Error {
 public:
  explicit NonFiniteValue(std::string location);
  /// Cell form used by the CSV reader (0-based file line and column).
  NonFiniteValue(std::size_t row, std::size_t col);
  const std::string& location() const noexcept { return location_; }
  const std::optional<std::pair<std::size_t, std::size_t>>& cell() const noexcept {
    return cell_;
  }

 private:
  std::string location_;
  std::optional<std::pair<std::size_t, std::size_t>> cell_;
};

class IoError : public Error {
 public:
  IoError(std::string path, const std::string& detail);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class RaggedRows : public Error {
 public:
  RaggedRows(std::size_t row, std::size_t expected_cols, std::size_t got_cols);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class UnparsableCell : public Error {
 public:
  UnparsableCell(std::size_t row, std::size_t col, const std::string& text);
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class RowCountMismatch : public Error {
 public:
  RowCountMismatch(std::size_t decision_rows, std::size_t objective_rows);
  std::size_t decision_rows() const noexcept { return decision_rows_; }
  std::size_t objective_rows() const noexcept { return objective_rows_; }

 private:
  std::size_t decision_rows_;
  std::size_t objective_rows_;
};

class ObjectiveDimMismatch : public Error {
 public:
  ObjectiveDimMismatch(std::size_t reference_dim, std::size_t objective_dim);
  std::size_t reference_dim() const noexcept { return reference_dim_; }
  std::size_t objective_dim() const noexcept { return objective_dim_; }

 private:
  std::size_t reference_dim_;
  std::size_t objective_dim_;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t lhs, std::size_t rhs);
};

class EmptyReferenceSet : public Error {
 public:
  EmptyReferenceSet();
};

class TooFewSolutions : public Error {
 public:
  TooFewSolutions(std::size_t got, std::size_t required);
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what);
};

class TooFewPoints : public Error {
 public:
  TooFewPoints(std::size_t got, std::size_t required);
  std::size_t got() const noexcept { return got_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t got_;
  std::size_t required_;
};

class NonFiniteInput : public Error {
 public:
  NonFiniteInput(std::size_t row, std::size_t col);
};

class MethodMismatch : public Error {
 public:
  explicit MethodMismatch(const std::string& detail);
};

class EmptyPoints : public Error {
 public:
  EmptyPoints();
};

class MalformedPolygon : public Error {
 public:
  explicit MalformedPolygon(const std::string& detail);
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& detail);
};

/// A pipeline stage failed; the original error is kept as `cause()`.
class StageError : public Error {
 public:
  StageError(std::string stage, std::exception_ptr cause, const std::string& cause_message);
  const std::string& stage() const noexcept { return stage_; }
  std::exception_ptr cause() const noexcept { return cause_; }

 private:
  std::string stage_;
  std::exception_ptr cause_;
};

class RegistryError : public Error {
 public:
  explicit RegistryError(const std::string& detail);
};

class BindError : public Error {
 public:
  BindError(std::string host, int port);
  const std::string& host() const noexcept { return host_; }
  int port() const noexcept { return port_; }

 private:
  std::string host_;
  int port_;
};

}  // namespace paretolens
