#include "paretolens/ingest.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "paretolens/errors.hpp"

namespace paretolens::ingest {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) break;
      const auto start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      cells.push_back(line.substr(start, pos - start));
    }
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  // Overflow and underflow are still numbers; strtod yields +-HUGE_VAL or ~0.
  if (ec == std::errc::result_out_of_range && ptr == cell.data() + cell.size()) {
    return std::strtod(std::string(cell).c_str(), nullptr);
  }
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::vector<double>> rows;
  std::size_t cols = 0;
  bool first_content_line = true;
  std::size_t line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string raw;
  for (; std::getline(lines, raw); ++line_no) {
    const auto line = trim(raw);
    if (line.empty()) continue;
    const std::size_t this_line = line_no;

    const auto cells = split_cells(line);
    std::vector<double> values;
    values.reserve(cells.size());
    std::optional<std::size_t> bad_col;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = parse_number(cells[c]);
      if (!v) {
        bad_col = c;
        break;
      }
      values.push_back(*v);
    }

    const bool header = first_content_line && bad_col.has_value();
    first_content_line = false;
    if (header) continue;
    if (bad_col) throw UnparsableCell(this_line, *bad_col, std::string(cells[*bad_col]));

    if (rows.empty()) {
      cols = values.size();
    } else if (values.size() != cols) {
      throw RaggedRows(this_line, cols, values.size());
    }
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (!std::isfinite(values[c])) throw NonFiniteValue(this_line, c);
    }
    rows.push_back(std::move(values));
  }
  return Matrix::from_rows(rows);
}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path.string(), "read failed");
  return parse_matrix(buffer.str());
}

std::pair<SolutionSet, ReferenceSet> build_sets(const Matrix& decision, const Matrix& objective,
                                                const Matrix& reference, std::string problem_name,
                                                std::string algorithm_name) {
  if (decision.rows() != objective.rows()) {
    throw RowCountMismatch(decision.rows(), objective.rows());
  }
  if (decision.empty()) throw EmptyInput("solution matrices contain no rows");
  if (decision.cols() < 1) throw InvalidArgument("decision matrix needs at least one column");
  if (objective.cols() < 2) {
    throw InvalidArgument("objective matrix needs at least two columns, got " +
                          std::to_string(objective.cols()));
  }
  if (!reference.empty() && reference.cols() != objective.cols()) {
    throw ObjectiveDimMismatch(reference.cols(), objective.cols());
  }

  const std::size_t n = decision.rows();
  SolutionSet set;
  set.meta = make_meta(std::move(problem_name), std::move(algorithm_name), decision.cols(),
                       objective.cols(), n, reference.rows());
  set.solutions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = set.solutions[i];
    s.id = i;
    const auto dec = decision.row(i);
    const auto obj = objective.row(i);
    s.decision.assign(dec.begin(), dec.end());
    s.objective.assign(obj.begin(), obj.end());
  }

  ReferenceSet refs;
  refs.points = reference.to_rows();
  return {std::move(set), std::move(refs)};
}

std::pair<SolutionSet, ReferenceSet> build_sets(const RawInputBundle& bundle) {
  const Matrix decision = read_matrix(bundle.decision_matrix_path);
  const Matrix objective = read_matrix(bundle.objective_matrix_path);
  const Matrix reference =
      bundle.reference_matrix_path ? read_matrix(*bundle.reference_matrix_path) : Matrix{};
  return build_sets(decision, objective, reference, bundle.problem_name.value_or("unknown"),
                    bundle.algorithm_name.value_or("unknown"));
}

}  // namespace paretolens::ingest
