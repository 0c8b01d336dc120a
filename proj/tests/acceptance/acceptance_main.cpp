// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "paretolens/artifact_io.hpp"
#include "paretolens/clustering.hpp"
#include "paretolens/density.hpp"
#include "paretolens/dominance.hpp"
#include "paretolens/ingest.hpp"
#include "paretolens/metrics.hpp"
#include "paretolens/pipeline.hpp"
#include "paretolens/projection.hpp"
#include "paretolens/server.hpp"
#include "paretolens/tsne.hpp"
#include "violations.hpp"

using namespace paretolens;
using Clock = std::chrono::steady_clock;

namespace {

// Each check appends failure reasons; an empty list means PASS.
struct Report {
  std::vector<std::string> failures;
  std::string notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int g_failed = 0;

void criterion(const char* name, const std::function<void(Report&)>& body) {
  Report r;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool ok = r.failures.empty();
  if (!ok) ++g_failed;
  std::printf("%s %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", name, secs, r.notes.empty() ? "" : " ",
              r.notes.c_str());
  for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Matrix random_objectives(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix out(n, m);
  // Half the instances use a coarse integer grid so ties and duplicates occur.
  if (seed % 2 == 0) {
    std::uniform_int_distribution<int> u(0, 4);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < m; ++c) out(i, c) = u(rng);
  } else {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < m; ++c) out(i, c) = u(rng);
  }
  return out;
}

void dominance_oracle(Report& r) {
  const std::size_t dims[] = {2, 3, 10};
  double elapsed = 0.0;
  std::size_t mismatches = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto obj = random_objectives(200, dims[k % 3], 1000 + k);
    const auto t0 = Clock::now();
    const auto got = dominance::dominated_flags(obj);
    elapsed += std::chrono::duration<double>(Clock::now() - t0).count();
    if (got != fixtures::brute_dominated(obj)) ++mismatches;
  }
  r.expect(mismatches == 0, std::to_string(mismatches) + " of 50 instances differ from brute force");
  r.expect(elapsed < 1.0, fmt("runtime %.3fs >= 1s", elapsed));
  r.notes = fmt("engine time %.4fs", elapsed);
}

void kde_checks(Report& r) {
  const std::vector<Point2> origin{{0.0, 0.0}};
  const auto f = density::kde_on_grid(origin, 5, 5, {-2.5, 2.5, -2.5, 2.5}, 1.0);
  const double peak = f.at(2, 2), want = 1.0 / (2 * std::acos(-1.0));
  r.expect(std::abs(peak - want) <= 1e-9, fmt("center %.15g vs %.15g", peak, want));

  // Standard normal sample: the reference case for Scott's rule.
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Point2> pts(500);
  for (auto& p : pts) p = {g(rng), g(rng)};
  const auto mass_of = [](const DensityField& field) {
    double s = 0.0;
    for (double v : field.values) s += v;
    return s * field.cell_area();
  };
  const auto field = density::kde_field(pts);
  r.expect(field.grid_width == 256 && field.grid_height == 256, "grid is not 256x256");
  const double mass = mass_of(field);
  r.expect(mass >= 0.97 && mass <= 1.0, fmt("mass %.6f outside [0.97, 1]", mass));

  // Hard-edged support loses more tail past a 10% margin; reported only.
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& p : pts) p = {u(rng), u(rng)};
  const double box = mass_of(density::kde_field(pts));
  r.notes = fmt("mass %.5f (uniform box, informational: %.5f)", mass, box);
}

void lof_checks(Report& r) {
  const auto pts = fixtures::uniform_matrix(50, 2, 4242);
  const auto got = density::lof_scores(pts, 10);
  const auto want = fixtures::brute_lof(pts, 10);
  double worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  r.expect(worst <= 1e-9, fmt("max deviation %.3g", worst));

  Matrix grid(400, 2);
  for (std::size_t i = 0; i < 400; ++i) {
    grid(i, 0) = static_cast<double>(i % 20);
    grid(i, 1) = static_cast<double>(i / 20);
  }
  const double interior = density::lof_scores(grid, 10)[10 * 20 + 10];
  r.expect(interior >= 0.9 && interior <= 1.1, fmt("interior LOF %.4f", interior));
  r.notes = fmt("max dev %.2g, interior %.4f", worst, interior);
}

void hdbscan_checks(Report& r) {
  const auto blobs = fixtures::gaussian_blobs(3, 50, 3, 10.0, 5);
  const auto labels = clustering::hdbscan(blobs.points, {10, 2});
  const int k = fixtures::cluster_count(labels);
  const double agree = fixtures::partition_agreement(blobs.labels, labels);
  r.expect(k == 3, "found " + std::to_string(k) + " clusters");
  r.expect(agree >= 0.95, fmt("agreement %.3f", agree));

  const auto five = clustering::hdbscan(fixtures::uniform_matrix(5, 2, 3), {10, 2});
  r.expect(five == std::vector<int>(5, -1), "5-point input is not all noise");

  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto pts = fixtures::uniform_matrix(60, 3, 500 + seed);
    double w = 0.0;
    for (const auto& e : clustering::mst_mutual_reachability(pts, 2)) w += e.weight;
    worst = std::max(worst, std::abs(w - fixtures::kruskal_mreach_weight(pts, 2)));
  }
  r.expect(worst <= 1e-12, fmt("MST weight deviation %.3g", worst));
  r.notes = fmt("agreement %.3f", agree);
}

void tsne_checks(Report& r) {
  const auto blobs = fixtures::gaussian_blobs(3, 50, 10, 10.0, 1);
  const auto cond = tsne::calibrate_affinities(blobs.points, 30.0);
  double worst = 0.0;
  for (double h : cond.entropy) worst = std::max(worst, std::abs(h - std::log(30.0)));
  r.expect(worst <= 1e-5, fmt("entropy deviation %.3g", worst));

  const tsne::TsneConfig cfg;
  const auto a = tsne::run(blobs.points, cfg, 42);
  double rise = 0.0;
  for (std::size_t s = 1; s < a.kl_trace.size(); ++s) {
    if (a.kl_iterations[s - 1] < cfg.early_exaggeration_iters) continue;
    rise = std::max(rise, a.kl_trace[s] - a.kl_trace[s - 1]);
  }
  r.expect(rise <= 1e-3, fmt("KL rose by %.3g", rise));
  const double purity = fixtures::knn_purity(a.embedding, blobs.labels, 10);
  r.expect(purity >= 0.9, fmt("purity %.3f", purity));
  const auto b = tsne::run(blobs.points, cfg, 42);
  r.expect(a.embedding == b.embedding, "same seed gave different coordinates");
  r.notes = fmt("entropy dev %.2g, purity %.3f", worst, purity);
}

SolutionSet solutions_from(const Matrix& dec, const Matrix& obj) {
  SolutionSet set;
  set.meta = make_meta("p", "a", dec.cols(), obj.cols(), obj.rows(), 0);
  for (std::size_t i = 0; i < obj.rows(); ++i)
    set.solutions.push_back({i, {dec.row(i).begin(), dec.row(i).end()}, {obj.row(i).begin(), obj.row(i).end()}});
  return set;
}

void joint_embedding(Report& r) {
  const auto obj = fixtures::uniform_matrix(100, 3, 21);
  auto ref = fixtures::uniform_matrix(100, 3, 22);
  for (std::size_t c = 0; c < 3; ++c) ref(40, c) = obj(12, c);
  const auto set = solutions_from(fixtures::uniform_matrix(100, 2, 23), obj);
  const auto spec = metrics::NormalizationSpec::fit_joint(obj, ref);
  const auto layout = projection::project_objective_space(set, {ref.to_rows()}, spec, {});
  const auto joint = Matrix::vstack(from_points(layout.solutions), from_points(layout.references));
  r.expect(fixtures::within_closest_fraction(joint, 12, 100 + 40, 0.01),
           "twin is not within the closest 1% of pairs");
}

void pipeline_scaling(Report& r) {
  const auto d = fixtures::dtlz3_like(2000, 19, 10, 500, 2026);
  const auto [set, refs] = ingest::build_sets(d.decision, d.objective, d.reference, "DTLZ3", "NSGA-III");
  const auto result = pipeline::run_pipeline(set, refs, pipeline::PipelineConfig{});
  const auto& t = result.timing;
  const double share = t.projection() / t.total;
  r.expect(t.total < 120.0, fmt("total %.1fs >= 120s", t.total));
  r.expect(share > 0.8, fmt("projection share %.3f <= 0.8", share));
  r.notes = fmt("total %.2fs, projection share %.3f", t.total, share);
}

void artifact_round_trip(Report& r) {
  std::size_t bad = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = fixtures::random_artifact(seed);
    const auto first = serialize_artifact(a);
    if (serialize_artifact(parse_artifact(first)) != first) ++bad;
  }
  r.expect(bad == 0, std::to_string(bad) + " of 100 artifacts did not round-trip");
  const auto violations = fixtures::schema_violations();
  for (const auto& v : violations) {
    std::string detail;
    r.expect(fixtures::rejects_as_expected(v, &detail), v.name + ": " + detail);
  }
  r.notes = std::to_string(violations.size()) + " violation fixtures";
}

void server_contract(Report& r) {
  auto with_refs = fixtures::violation_base();
  auto field = density::kde_field(with_refs.layout.reference_coords, {16, 8, std::nullopt, 0.1});
  field.outlier_indices = {1};
  with_refs.density = field;

  auto registry = std::make_shared<server::DatasetRegistry>();
  registry->add("dtlz3", with_refs);
  registry->add("other", fixtures::random_artifact(3));

  server::Server srv(registry);
  const int port = srv.bind(0);
  std::thread loop([&] { srv.listen(); });
  srv.wait_until_ready();
  httplib::Client cli("127.0.0.1", port);

  if (auto res = cli.Get("/api/datasets")) {
    const auto list = nlohmann::json::parse(res->body);
    std::vector<std::string> ids;
    for (const auto& e : list) ids.push_back(e["id"]);
    r.expect(ids == registry->ids(), "listing does not mirror the registry");
  } else {
    r.expect(false, "listing request failed");
  }
  auto missing = cli.Get("/api/datasets/nope");
  r.expect(missing && missing->status == 404, "unknown id is not 404");

  auto lasso = cli.Post("/api/datasets/dtlz3/lasso", R"({"polygon": [[-1e6,-1e6],[1e6,-1e6],[1e6,1e6],[-1e6,1e6]]})",
                        "application/json");
  if (lasso && lasso->status == 200) {
    const auto body = nlohmann::json::parse(lasso->body);
    r.expect(body["indices"] == nlohmann::json::array({0, 1}), "lasso did not return all reference indices");
    const auto patch = parse_density(body["patch"].dump(), with_refs.references.size());
    double worst = patch.values.size() == field.values.size() ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < patch.values.size() && k < field.values.size(); ++k)
      worst = std::max(worst, std::abs(patch.values[k] - field.values[k]));
    r.expect(worst <= 1e-12, fmt("patch deviates from base by %.3g", worst));
  } else {
    r.expect(false, "all-enclosing lasso request failed");
  }
  auto two = cli.Post("/api/datasets/dtlz3/lasso", R"({"polygon": [[0,0],[1,1]]})", "application/json");
  r.expect(two && two->status == 400, "2-vertex polygon is not 400");

  srv.stop();
  loop.join();
}

}  // namespace

int main() {
  criterion("dominance matches brute force on 50 instances", dominance_oracle);
  criterion("KDE point mass and grid mass", kde_checks);
  criterion("LOF matches brute force; grid interior near 1", lof_checks);
  criterion("HDBSCAN three blobs, small input noise, MST oracle", hdbscan_checks);
  criterion("t-SNE calibration, KL trace, purity, determinism", tsne_checks);
  criterion("joint embedding keeps duplicated points together", joint_embedding);
  criterion("pipeline DTLZ3 N=2000 n=19 m=10 under 120s, projection > 80%", pipeline_scaling);
  criterion("artifact round-trip and schema violations", artifact_round_trip);
  criterion("server contract", server_contract);
  std::printf("%d criterion(s) failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
