// paretolens: preprocess MOEA outputs into an analysis artifact, or serve
// a directory of artifacts over HTTP.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "paretolens/errors.hpp"
#include "paretolens/pipeline.hpp"
#include "paretolens/server.hpp"

namespace {

namespace pl = paretolens;

struct PreprocessArgs {
  std::string dec, obj, ref, out, projection, problem, algorithm, config;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

struct ServeArgs {
  std::string data;
  int port = 8080;
  std::string static_dir;
  std::string host = "127.0.0.1";
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pl::IoError(path, "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_preprocess(const PreprocessArgs& args) {
  pl::pipeline::PipelineConfig config;
  if (!args.config.empty()) {
    config = pl::pipeline::PipelineConfig::from_json_overrides(read_text(args.config));
  }
  if (args.seed) config.seed = *args.seed;
  if (args.projection == "umap") config.projection.method = pl::ProjectionMethod::Umap;
  if (args.projection == "tsne") config.projection.method = pl::ProjectionMethod::Tsne;

  pl::ingest::RawInputBundle bundle;
  bundle.decision_matrix_path = args.dec;
  bundle.objective_matrix_path = args.obj;
  if (!args.ref.empty()) bundle.reference_matrix_path = args.ref;
  if (!args.problem.empty()) bundle.problem_name = args.problem;
  if (!args.algorithm.empty()) bundle.algorithm_name = args.algorithm;

  const auto result = pl::pipeline::run_pipeline(bundle, config);
  std::ofstream out(args.out, std::ios::binary | std::ios::trunc);
  if (!out) throw pl::IoError(args.out, "cannot write");
  out << result.json;
  out.close();
  if (!out) throw pl::IoError(args.out, "write failed");

  if (args.timing) std::cout << result.timing.to_json() << "\n";
  return 0;
}

int run_serve(const ServeArgs& args) {
  auto registry = std::make_shared<const pl::server::DatasetRegistry>(
      pl::server::DatasetRegistry::from_directory(args.data));
  pl::server::ServerOptions options;
  options.host = args.host;
  if (!args.static_dir.empty()) options.static_dir = args.static_dir;

  // Signals are blocked here and consumed by a watcher thread, which keeps
  // the shutdown path out of an async signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  pl::server::Server server(registry, options);
  const int port = server.bind(args.port);
  std::cout << "serving " << registry->size() << " dataset(s) on http://" << args.host << ":"
            << port << "\n"
            << std::flush;

  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() may also return on its own; make sure the watcher wakes up.
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ParetoLens preprocessing engine and dataset server"};
  app.require_subcommand(1);

  PreprocessArgs pre;
  auto* preprocess = app.add_subcommand("preprocess", "Build an analysis artifact from matrices");
  preprocess->add_option("--dec", pre.dec, "Decision matrix (CSV or whitespace separated)")
      ->required();
  preprocess->add_option("--obj", pre.obj, "Objective matrix")->required();
  preprocess->add_option("--ref", pre.ref, "Reference (true Pareto front) matrix");
  preprocess->add_option("--out", pre.out, "Output artifact JSON path")->required();
  preprocess->add_option("--projection", pre.projection, "Projection method")
      ->check(CLI::IsMember({"tsne", "umap"}));
  preprocess->add_option("--seed", pre.seed, "Random seed");
  preprocess->add_option("--problem", pre.problem, "Problem name");
  preprocess->add_option("--algorithm", pre.algorithm, "Algorithm name");
  preprocess->add_option("--config", pre.config, "JSON file of configuration overrides");
  preprocess->add_flag("--timing", pre.timing, "Print stage timings as JSON");

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Serve a directory of artifacts over HTTP");
  serve->add_option("--data", srv.data, "Directory of *.json artifacts")->required();
  serve->add_option("--port", srv.port, "Port (0 picks a free one and prints it)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--static", srv.static_dir, "Frontend assets served at /");
  serve->add_option("--host", srv.host, "Listen address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*preprocess) return run_preprocess(pre);
    return run_serve(srv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
