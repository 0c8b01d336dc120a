#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "paretolens/matrix.hpp"
#include "paretolens/model.hpp"

namespace paretolens::ingest {

struct RawInputBundle {
  std::filesystem::path decision_matrix_path;
  std::filesystem::path objective_matrix_path;
  std::optional<std::filesystem::path> reference_matrix_path;
  std::optional<std::string> problem_name;
  std::optional<std::string> algorithm_name;
};

/// Parses CSV text. Cells are split on commas when a line contains one,
/// otherwise on whitespace. Blank lines are ignored. The first non-blank
/// line is treated as a header iff one of its cells is not a number.
/// Row numbers in errors are 0-based line numbers of the text.
Matrix parse_matrix(std::string_view text);

/// Reads and parses a CSV file; throws IoError when it cannot be read.
Matrix read_matrix(const std::filesystem::path& path);

/// Pairs decision row i with objective row i as solution i.
std::pair<SolutionSet, ReferenceSet> build_sets(const Matrix& decision, const Matrix& objective,
                                                const Matrix& reference,
                                                std::string problem_name = "unknown",
                                                std::string algorithm_name = "unknown");

std::pair<SolutionSet, ReferenceSet> build_sets(const RawInputBundle& bundle);

}  // namespace paretolens::ingest
