#include "paretolens/errors.hpp"

#include <string>

namespace paretolens {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::UnparsableCell: return "UnparsableCell";
    case ErrorCode::RowCountMismatch: return "RowCountMismatch";
    case ErrorCode::ObjectiveDimMismatch: return "ObjectiveDimMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorCode::TooFewSolutions: return "TooFewSolutions";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::MethodMismatch: return "MethodMismatch";
    case ErrorCode::EmptyPoints: return "EmptyPoints";
    case ErrorCode::MalformedPolygon: return "MalformedPolygon";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Stage: return "StageError";
    case ErrorCode::Registry: return "RegistryError";
    case ErrorCode::Bind: return "BindError";
  }
  return "Unknown";
}

namespace {

std::string cell_text(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", col " + std::to_string(col);
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

MalformedJson::MalformedJson(const std::string& detail)
    : Error(ErrorCode::MalformedJson, detail) {}

SchemaViolation::SchemaViolation(std::string path, const std::string& detail)
    : Error(ErrorCode::SchemaViolation, path + ": " + detail), path_(std::move(path)) {}

DimensionMismatch::DimensionMismatch(std::string where, std::size_t expected, std::size_t got)
    : Error(ErrorCode::DimensionMismatch,
            where + ": expected " + std::to_string(expected) + ", got " + std::to_string(got)),
      where_(std::move(where)),
      expected_(expected),
      got_(got) {}

NonFiniteValue::NonFiniteValue(std::string location)
    : Error(ErrorCode::NonFiniteValue, location), location_(std::move(location)) {}

NonFiniteValue::NonFiniteValue(std::size_t row, std::size_t col)
    : Error(ErrorCode::NonFiniteValue, cell_text(row, col)),
      location_(cell_text(row, col)),
      cell_(std::make_pair(row, col)) {}

IoError::IoError(std::string path, const std::string& detail)
    : Error(ErrorCode::Io, path + ": " + detail), path_(std::move(path)) {}

RaggedRows::RaggedRows(std::size_t row, std::size_t expected_cols, std::size_t got_cols)
    : Error(ErrorCode::RaggedRows, "row " + std::to_string(row) + " has " +
                                       std::to_string(got_cols) + " cells, expected " +
                                       std::to_string(expected_cols)),
      row_(row) {}

UnparsableCell::UnparsableCell(std::size_t row, std::size_t col, const std::string& text)
    : Error(ErrorCode::UnparsableCell, cell_text(row, col) + ": '" + text + "'"),
      row_(row),
      col_(col) {}

RowCountMismatch::RowCountMismatch(std::size_t decision_rows, std::size_t objective_rows)
    : Error(ErrorCode::RowCountMismatch,
            "decision matrix has " + std::to_string(decision_rows) +
                " rows, objective matrix has " + std::to_string(objective_rows)),
      decision_rows_(decision_rows),
      objective_rows_(objective_rows) {}

ObjectiveDimMismatch::ObjectiveDimMismatch(std::size_t reference_dim, std::size_t objective_dim)
    : Error(ErrorCode::ObjectiveDimMismatch,
            "reference points have " + std::to_string(reference_dim) +
                " objectives, solutions have " + std::to_string(objective_dim)),
      reference_dim_(reference_dim),
      objective_dim_(objective_dim) {}

LengthMismatch::LengthMismatch(std::size_t lhs, std::size_t rhs)
    : Error(ErrorCode::LengthMismatch,
            "vector lengths " + std::to_string(lhs) + " and " + std::to_string(rhs)) {}

EmptyReferenceSet::EmptyReferenceSet()
    : Error(ErrorCode::EmptyReferenceSet, "reference set is empty") {}

TooFewSolutions::TooFewSolutions(std::size_t got, std::size_t required)
    : Error(ErrorCode::TooFewSolutions, "got " + std::to_string(got) + " solutions, need at least " +
                                            std::to_string(required)) {}

EmptyInput::EmptyInput(const std::string& what) : Error(ErrorCode::EmptyInput, what) {}

TooFewPoints::TooFewPoints(std::size_t got, std::size_t required)
    : Error(ErrorCode::TooFewPoints,
            "got " + std::to_string(got) + " points, need at least " + std::to_string(required)),
      got_(got),
      required_(required) {}

NonFiniteInput::NonFiniteInput(std::size_t row, std::size_t col)
    : Error(ErrorCode::NonFiniteInput, cell_text(row, col)) {}

MethodMismatch::MethodMismatch(const std::string& detail)
    : Error(ErrorCode::MethodMismatch, detail) {}

EmptyPoints::EmptyPoints() : Error(ErrorCode::EmptyPoints, "no points to estimate from") {}

MalformedPolygon::MalformedPolygon(const std::string& detail)
    : Error(ErrorCode::MalformedPolygon, detail) {}

InvalidArgument::InvalidArgument(const std::string& detail)
    : Error(ErrorCode::InvalidArgument, detail) {}

StageError::StageError(std::string stage, std::exception_ptr cause,
                       const std::string& cause_message)
    : Error(ErrorCode::Stage, "stage '" + stage + "' failed: " + cause_message),
      stage_(std::move(stage)),
      cause_(std::move(cause)) {}

RegistryError::RegistryError(const std::string& detail) : Error(ErrorCode::Registry, detail) {}

BindError::BindError(std::string host, int port)
    : Error(ErrorCode::Bind, "cannot bind " + host + ":" + std::to_string(port)),
      host_(std::move(host)),
      port_(port) {}

}  // namespace paretolens
