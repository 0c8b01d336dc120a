#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "artifact_codec.hpp"
#include "paretolens/artifact_io.hpp"
#include "paretolens/errors.hpp"

namespace paretolens {

using nlohmann::json;
using codec::OrderedJson;

namespace {

// ---- encoding --------------------------------------------------------------

OrderedJson points_to_json(const std::vector<Point2>& points) {
  OrderedJson out = OrderedJson::array();
  for (const auto& p : points) out.push_back({p[0], p[1]});
  return out;
}

OrderedJson meta_to_json(const ProblemMeta& meta) {
  OrderedJson sense = OrderedJson::array();
  for (Sense s : meta.objective_sense) sense.push_back(s == Sense::Minimize ? "min" : "max");
  OrderedJson j;
  j["problem"] = meta.problem_name;
  j["algorithm"] = meta.algorithm_name;
  j["n_dec"] = meta.n_decision_vars;
  j["n_obj"] = meta.n_objectives;
  j["n_solutions"] = meta.n_solutions;
  j["n_references"] = meta.n_references;
  j["sense"] = std::move(sense);
  return j;
}

OrderedJson annotations_to_json(const Annotations& a) {
  OrderedJson dominated = OrderedJson::array();
  for (bool d : a.dominated) dominated.push_back(d);
  OrderedJson j;
  j["nearest_ref_dist"] = a.nearest_ref_distance;
  j["nearest_sol_dist"] = a.nearest_sol_distance;
  j["nearest_sol_idx"] = a.nearest_sol_index;
  j["dominated"] = std::move(dominated);
  j["cluster"] = a.cluster_label;
  return j;
}

// ---- decoding --------------------------------------------------------------

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string item(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaViolation(path.empty() ? "$" : path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaViolation(child(path, key), "missing required field");
  return *it;
}

const json& array_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaViolation(path, "expected an array");
  return j;
}

double as_real(const json& j, const std::string& path) {
  if (j.is_null()) throw NonFiniteValue(path);
  if (!j.is_number()) throw SchemaViolation(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw NonFiniteValue(path);
  return v;
}

std::size_t as_count(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::size_t>(j.get<std::int64_t>());
  }
  throw SchemaViolation(path, "expected a non-negative integer");
}

std::string as_text(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaViolation(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> real_vector(const json& j, const std::string& path,
                                std::optional<std::size_t> expected = std::nullopt) {
  array_of(j, path);
  if (expected && j.size() != *expected) throw DimensionMismatch(path, *expected, j.size());
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_real(j[k], item(path, k)));
  return out;
}

std::vector<Point2> point_list(const json& j, const std::string& path, std::size_t expected) {
  array_of(j, path);
  if (j.size() != expected) throw DimensionMismatch(path, expected, j.size());
  std::vector<Point2> out(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    const auto v = real_vector(j[i], item(path, i), 2);
    out[i] = {v[0], v[1]};
  }
  return out;
}

ProblemMeta meta_from_json(const json& j) {
  const std::string path = "meta";
  ProblemMeta meta;
  meta.problem_name = as_text(field(j, "problem", path), "meta.problem");
  meta.algorithm_name = as_text(field(j, "algorithm", path), "meta.algorithm");
  meta.n_decision_vars = as_count(field(j, "n_dec", path), "meta.n_dec");
  meta.n_objectives = as_count(field(j, "n_obj", path), "meta.n_obj");
  if (meta.n_objectives < 2) throw SchemaViolation("meta.n_obj", "at least 2 objectives required");
  meta.n_solutions = as_count(field(j, "n_solutions", path), "meta.n_solutions");
  meta.n_references = as_count(field(j, "n_references", path), "meta.n_references");
  const auto& sense = array_of(field(j, "sense", path), "meta.sense");
  if (sense.size() != meta.n_objectives) {
    throw DimensionMismatch("meta.sense", meta.n_objectives, sense.size());
  }
  for (std::size_t k = 0; k < sense.size(); ++k) {
    const auto s = as_text(sense[k], item("meta.sense", k));
    if (s == "min") {
      meta.objective_sense.push_back(Sense::Minimize);
    } else if (s == "max") {
      meta.objective_sense.push_back(Sense::Maximize);
    } else {
      throw SchemaViolation(item("meta.sense", k), "expected \"min\" or \"max\"");
    }
  }
  return meta;
}

Annotations annotations_from_json(const json& j, std::size_t n, std::size_t r) {
  const std::string path = "annotations";
  Annotations a;
  const std::size_t nn = n >= 2 ? n : 0;
  a.nearest_ref_distance =
      real_vector(field(j, "nearest_ref_dist", path), "annotations.nearest_ref_dist",
                  r == 0 ? 0 : n);
  a.nearest_sol_distance =
      real_vector(field(j, "nearest_sol_dist", path), "annotations.nearest_sol_dist", nn);

  const auto& idx = array_of(field(j, "nearest_sol_idx", path), "annotations.nearest_sol_idx");
  if (idx.size() != nn) throw DimensionMismatch("annotations.nearest_sol_idx", nn, idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    a.nearest_sol_index.push_back(as_count(idx[i], item("annotations.nearest_sol_idx", i)));
  }

  const auto& dom = array_of(field(j, "dominated", path), "annotations.dominated");
  if (dom.size() != n) throw DimensionMismatch("annotations.dominated", n, dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (!dom[i].is_boolean()) {
      throw SchemaViolation(item("annotations.dominated", i), "expected a boolean");
    }
    a.dominated.push_back(dom[i].get<bool>());
  }

  const auto& cl = array_of(field(j, "cluster", path), "annotations.cluster");
  if (cl.size() != n) throw DimensionMismatch("annotations.cluster", n, cl.size());
  for (std::size_t i = 0; i < cl.size(); ++i) {
    if (!cl[i].is_number_integer()) {
      throw SchemaViolation(item("annotations.cluster", i), "expected an integer");
    }
    const auto label = cl[i].get<std::int64_t>();
    if (label < -1 || label > std::numeric_limits<int>::max()) {
      throw SchemaViolation(item("annotations.cluster", i), "label out of range");
    }
    a.cluster_label.push_back(static_cast<int>(label));
  }
  return a;
}

}  // namespace

namespace codec {

OrderedJson density_to_json(const DensityField& field) {
  OrderedJson j;
  j["w"] = field.grid_width;
  j["h"] = field.grid_height;
  j["bounds"] = {field.bounds.x_min, field.bounds.x_max, field.bounds.y_min, field.bounds.y_max};
  j["bandwidth"] = field.bandwidth;
  j["values"] = field.values;
  j["outliers"] = field.outlier_indices;
  return j;
}

DensityField density_from_json(const json& j, const std::string& path, std::size_t n_references) {
  DensityField d;
  d.grid_width = as_count(field(j, "w", path), child(path, "w"));
  d.grid_height = as_count(field(j, "h", path), child(path, "h"));
  const auto b = real_vector(field(j, "bounds", path), child(path, "bounds"), 4);
  d.bounds = {b[0], b[1], b[2], b[3]};
  d.bandwidth = as_real(field(j, "bandwidth", path), child(path, "bandwidth"));
  d.values = real_vector(field(j, "values", path), child(path, "values"),
                         d.grid_width * d.grid_height);
  const auto& outliers = array_of(field(j, "outliers", path), child(path, "outliers"));
  for (std::size_t k = 0; k < outliers.size(); ++k) {
    d.outlier_indices.push_back(as_count(outliers[k], item(child(path, "outliers"), k)));
  }
  validate(d, n_references, path);
  return d;
}

json parse_json_text(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw MalformedJson("document is not valid JSON");
  return doc;
}

}  // namespace codec

std::string serialize_artifact(const AnalysisArtifact& a) {
  OrderedJson doc;
  doc["schema_version"] = a.schema_version;
  doc["meta"] = meta_to_json(a.meta());

  OrderedJson solutions = OrderedJson::array();
  for (const auto& s : a.solutions.solutions) {
    OrderedJson entry;
    entry["id"] = s.id;
    entry["dec"] = s.decision;
    entry["obj"] = s.objective;
    solutions.push_back(std::move(entry));
  }
  doc["solutions"] = std::move(solutions);

  OrderedJson refs = OrderedJson::array();
  for (const auto& r : a.references.points) refs.push_back(r);
  doc["references"] = std::move(refs);

  OrderedJson layout;
  layout["method"] = std::string(to_string(a.layout.method));
  layout["seed"] = a.layout.seed;
  layout["decision"] = points_to_json(a.layout.decision_coords);
  layout["objective"] = points_to_json(a.layout.objective_coords);
  layout["reference"] = points_to_json(a.layout.reference_coords);
  doc["layout"] = std::move(layout);

  doc["density"] = a.density ? codec::density_to_json(*a.density) : OrderedJson(nullptr);
  doc["annotations"] = annotations_to_json(a.annotations);
  return doc.dump();
}

AnalysisArtifact parse_artifact(std::string_view text) {
  const json doc = codec::parse_json_text(text);
  if (!doc.is_object()) throw SchemaViolation("$", "root must be an object");

  AnalysisArtifact a;
  a.schema_version = as_text(field(doc, "schema_version", ""), "schema_version");
  const auto major = [](std::string_view v) { return v.substr(0, v.find('.')); };
  if (major(a.schema_version) != major(kSchemaVersion)) {
    throw SchemaViolation("schema_version", "unsupported version '" + a.schema_version + "'");
  }

  a.solutions.meta = meta_from_json(field(doc, "meta", ""));
  const auto& meta = a.solutions.meta;

  const auto& sols = array_of(field(doc, "solutions", ""), "solutions");
  if (sols.size() != meta.n_solutions) {
    throw DimensionMismatch("solutions", meta.n_solutions, sols.size());
  }
  a.solutions.solutions.reserve(sols.size());
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const std::string path = item("solutions", i);
    Solution s;
    s.id = as_count(field(sols[i], "id", path), child(path, "id"));
    s.decision = real_vector(field(sols[i], "dec", path), child(path, "dec"), meta.n_decision_vars);
    s.objective = real_vector(field(sols[i], "obj", path), child(path, "obj"), meta.n_objectives);
    a.solutions.solutions.push_back(std::move(s));
  }

  const auto& refs = array_of(field(doc, "references", ""), "references");
  if (refs.size() != meta.n_references) {
    throw DimensionMismatch("references", meta.n_references, refs.size());
  }
  for (std::size_t j = 0; j < refs.size(); ++j) {
    a.references.points.push_back(real_vector(refs[j], item("references", j), meta.n_objectives));
  }

  const auto& layout = field(doc, "layout", "");
  const auto method = as_text(field(layout, "method", "layout"), "layout.method");
  if (method == "tsne") {
    a.layout.method = ProjectionMethod::Tsne;
  } else if (method == "umap") {
    a.layout.method = ProjectionMethod::Umap;
  } else {
    throw SchemaViolation("layout.method", "expected \"tsne\" or \"umap\"");
  }
  a.layout.seed = as_count(field(layout, "seed", "layout"), "layout.seed");
  const std::size_t n = meta.n_solutions;
  const std::size_t r = meta.n_references;
  a.layout.decision_coords = point_list(field(layout, "decision", "layout"), "layout.decision", n);
  a.layout.objective_coords =
      point_list(field(layout, "objective", "layout"), "layout.objective", n);
  a.layout.reference_coords =
      point_list(field(layout, "reference", "layout"), "layout.reference", r);

  const auto& density = field(doc, "density", "");
  if (!density.is_null()) a.density = codec::density_from_json(density, "density", r);

  a.annotations = annotations_from_json(field(doc, "annotations", ""), n, r);

  validate(a);
  return a;
}

std::string serialize_density(const DensityField& field) {
  return codec::density_to_json(field).dump();
}

DensityField parse_density(std::string_view text, std::size_t n_references) {
  return codec::density_from_json(codec::parse_json_text(text), "", n_references);
}

}  // namespace paretolens
