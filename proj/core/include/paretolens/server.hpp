#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paretolens/model.hpp"

namespace paretolens::server {

/// Read-only map from dataset id to a parsed artifact plus the exact bytes
/// it was loaded from. Built once at startup, then shared across requests.
class DatasetRegistry {
 public:
  struct Entry {
    std::string id;
    std::filesystem::path path;  // empty for in-memory entries
    std::shared_ptr<const AnalysisArtifact> artifact;
    std::shared_ptr<const std::string> body;
  };

  /// Registers every *.json file in `dir` under its filename stem. Throws
  /// RegistryError naming each file that fails to parse or validate.
  static DatasetRegistry from_directory(const std::filesystem::path& dir);

  /// Throws RegistryError on a duplicate id.
  void add(std::string id, AnalysisArtifact artifact);
  void add_file(std::string id, const std::filesystem::path& path);

  const Entry* find(std::string_view id) const;
  std::vector<std::string> ids() const;  // sorted
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  void insert(Entry entry);
  std::map<std::string, Entry, std::less<>> entries_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  /// Served at /. Without it a small built-in index page answers GET /.
  std::optional<std::filesystem::path> static_dir;
};

/// HTTP front end over a registry:
///   GET  /api/datasets
///   GET  /api/datasets/{id}
///   POST /api/datasets/{id}/lasso   body {"polygon": [[x, y], ...]}
class Server {
 public:
  explicit Server(std::shared_ptr<const DatasetRegistry> registry, ServerOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the listening socket; port 0 picks a free port. Returns the
  /// bound port. Throws BindError.
  int bind(int port);
  /// Serves until stop(). Requires a prior successful bind().
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// JSON bodies the routes produce, exposed for tests and embedding.
std::string dataset_listing(const DatasetRegistry& registry);

}  // namespace paretolens::server
