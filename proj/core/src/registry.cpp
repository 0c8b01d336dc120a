#include <algorithm>
#include <fstream>
#include <sstream>

#include "artifact_codec.hpp"
#include "paretolens/artifact_io.hpp"
#include "paretolens/errors.hpp"
#include "paretolens/server.hpp"

namespace paretolens::server {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

DatasetRegistry DatasetRegistry::from_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw RegistryError("'" + dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  DatasetRegistry registry;
  std::vector<std::string> failures;
  for (const auto& file : files) {
    try {
      registry.add_file(file.stem().string(), file);
    } catch (const std::exception& e) {
      failures.push_back(file.filename().string() + ": " + e.what());
    }
  }
  if (!failures.empty()) {
    std::string msg = std::to_string(failures.size()) + " invalid artifact file(s)";
    for (const auto& f : failures) msg += "\n  " + f;
    throw RegistryError(msg);
  }
  return registry;
}

void DatasetRegistry::add(std::string id, AnalysisArtifact artifact) {
  validate(artifact);
  auto body = std::make_shared<const std::string>(serialize_artifact(artifact));
  insert({std::move(id), {}, std::make_shared<const AnalysisArtifact>(std::move(artifact)),
          std::move(body)});
}

void DatasetRegistry::add_file(std::string id, const std::filesystem::path& path) {
  auto body = std::make_shared<const std::string>(slurp(path));
  auto artifact = std::make_shared<const AnalysisArtifact>(parse_artifact(*body));
  insert({std::move(id), path, std::move(artifact), std::move(body)});
}

void DatasetRegistry::insert(Entry entry) {
  if (entry.id.empty()) throw RegistryError("dataset id must not be empty");
  if (entries_.count(entry.id)) throw RegistryError("duplicate dataset id '" + entry.id + "'");
  std::string key = entry.id;
  entries_.emplace(std::move(key), std::move(entry));
}

const DatasetRegistry::Entry* DatasetRegistry::find(std::string_view id) const {
  const auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> DatasetRegistry::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, entry] : entries_) out.push_back(id);
  return out;
}

std::string dataset_listing(const DatasetRegistry& registry) {
  codec::OrderedJson list = codec::OrderedJson::array();
  for (const auto& id : registry.ids()) {
    const auto& meta = registry.find(id)->artifact->meta();
    codec::OrderedJson e;
    e["id"] = id;
    e["problem"] = meta.problem_name;
    e["algorithm"] = meta.algorithm_name;
    e["n_solutions"] = meta.n_solutions;
    e["n_objectives"] = meta.n_objectives;
    e["n_decision_vars"] = meta.n_decision_vars;
    e["n_references"] = meta.n_references;
    list.push_back(std::move(e));
  }
  return list.dump();
}

}  // namespace paretolens::server
