#include <cmath>
#include <limits>
#include <string>

#include "artifact_codec.hpp"
#include "paretolens/errors.hpp"
#include "paretolens/pipeline.hpp"

namespace paretolens::pipeline {

namespace {

using nlohmann::json;

// Walks one JSON object, rejecting keys the handler does not consume.
template <typename Fn>
void each_key(const json& obj, const std::string& path, Fn&& handle) {
  if (!obj.is_object()) throw InvalidArgument("config '" + path + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!handle(key, value, where)) throw InvalidArgument("unknown config key '" + where + "'");
  }
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InvalidArgument("config '" + where + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InvalidArgument("config '" + where + "' must be finite");
  return d;
}

double as_positive(const json& v, const std::string& where) {
  const double d = as_number(v, where);
  if (!(d > 0.0)) throw InvalidArgument("config '" + where + "' must be > 0");
  return d;
}

std::uint64_t as_unsigned(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw InvalidArgument("config '" + where + "' must be a non-negative integer");
}

int as_int(const json& v, const std::string& where) {
  const auto u = as_unsigned(v, where);
  if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    throw InvalidArgument("config '" + where + "' is too large");
  }
  return static_cast<int>(u);
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw InvalidArgument("config '" + where + "' must be a string");
  return v.get<std::string>();
}

void apply_tsne(const json& obj, tsne::TsneConfig& c) {
  each_key(obj, "projection.tsne", [&](const std::string& k, const json& v, const std::string& w) {
    if (k == "perplexity") c.perplexity = as_positive(v, w);
    else if (k == "learning_rate") c.learning_rate = as_positive(v, w);
    else if (k == "iterations") c.iterations = as_int(v, w);
    else if (k == "early_exaggeration_factor") c.early_exaggeration_factor = as_positive(v, w);
    else if (k == "early_exaggeration_iters") c.early_exaggeration_iters = as_int(v, w);
    else if (k == "momentum_initial") c.momentum_initial = as_number(v, w);
    else if (k == "momentum_final") c.momentum_final = as_number(v, w);
    else if (k == "momentum_switch_iter") c.momentum_switch_iter = as_int(v, w);
    else if (k == "kl_sample_every") c.kl_sample_every = as_int(v, w);
    else return false;
    return true;
  });
}

void apply_umap(const json& obj, umap::UmapConfig& c) {
  each_key(obj, "projection.umap", [&](const std::string& k, const json& v, const std::string& w) {
    if (k == "n_neighbors") c.n_neighbors = as_unsigned(v, w);
    else if (k == "min_dist") c.min_dist = as_number(v, w);
    else if (k == "epochs") c.epochs = as_int(v, w);
    else if (k == "spread") c.spread = as_positive(v, w);
    else if (k == "learning_rate") c.learning_rate = as_positive(v, w);
    else if (k == "negative_sample_rate") c.negative_sample_rate = as_int(v, w);
    else if (k == "repulsion_strength") c.repulsion_strength = as_number(v, w);
    else return false;
    return true;
  });
}

ProjectionMethod parse_method(const std::string& s, const std::string& where) {
  if (s == "tsne") return ProjectionMethod::Tsne;
  if (s == "umap") return ProjectionMethod::Umap;
  throw InvalidArgument("config '" + where + "' must be \"tsne\" or \"umap\"");
}

}  // namespace

PipelineConfig PipelineConfig::from_json_overrides(std::string_view text, PipelineConfig base) {
  const json root = codec::parse_json_text(text);
  PipelineConfig& c = base;
  each_key(root, "", [&](const std::string& k, const json& v, const std::string& w) {
    if (k == "seed") {
      c.seed = as_unsigned(v, w);
    } else if (k == "normalization") {
      const auto s = as_string(v, w);
      if (s == "min_max_joint") c.normalization = metrics::NormalizationMode::MinMaxJoint;
      else if (s == "none") c.normalization = metrics::NormalizationMode::None;
      else throw InvalidArgument("config 'normalization' must be \"min_max_joint\" or \"none\"");
    } else if (k == "sense") {
      if (!v.is_array()) throw InvalidArgument("config 'sense' must be an array");
      c.objective_sense.clear();
      for (const auto& e : v) {
        const auto s = as_string(e, w);
        if (s == "min") c.objective_sense.push_back(Sense::Minimize);
        else if (s == "max") c.objective_sense.push_back(Sense::Maximize);
        else throw InvalidArgument("config 'sense' entries must be \"min\" or \"max\"");
      }
    } else if (k == "projection") {
      each_key(v, w, [&](const std::string& pk, const json& pv, const std::string& pw) {
        if (pk == "method") c.projection.method = parse_method(as_string(pv, pw), pw);
        else if (pk == "tsne") apply_tsne(pv, c.projection.tsne);
        else if (pk == "umap") apply_umap(pv, c.projection.umap);
        else return false;
        return true;
      });
    } else if (k == "hdbscan") {
      each_key(v, w, [&](const std::string& hk, const json& hv, const std::string& hw) {
        if (hk == "min_cluster_size") c.hdbscan.min_cluster_size = as_unsigned(hv, hw);
        else if (hk == "min_samples") c.hdbscan.min_samples = as_unsigned(hv, hw);
        else return false;
        return true;
      });
    } else if (k == "kde") {
      each_key(v, w, [&](const std::string& kk, const json& kv, const std::string& kw) {
        if (kk == "grid_w") c.kde.grid_width = as_unsigned(kv, kw);
        else if (kk == "grid_h") c.kde.grid_height = as_unsigned(kv, kw);
        else if (kk == "margin") c.kde.margin = as_number(kv, kw);
        else if (kk == "bandwidth") {
          if (kv.is_string() && kv.get<std::string>() == "auto") c.kde.bandwidth.reset();
          else c.kde.bandwidth = as_positive(kv, kw);
        } else return false;
        return true;
      });
    } else if (k == "lof") {
      each_key(v, w, [&](const std::string& lk, const json& lv, const std::string& lw) {
        if (lk == "k") c.lof.k = as_unsigned(lv, lw);
        else if (lk == "threshold") c.lof.threshold = as_number(lv, lw);
        else return false;
        return true;
      });
    } else {
      return false;
    }
    return true;
  });
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::from_json_overrides(std::string_view text) {
  return from_json_overrides(text, PipelineConfig{});
}

void PipelineConfig::validate() const {
  const auto& t = projection.tsne;
  if (!(t.perplexity > 0.0)) throw InvalidArgument("tsne perplexity must be > 0");
  if (t.iterations < 1) throw InvalidArgument("tsne iterations must be >= 1");
  if (t.kl_sample_every < 1) throw InvalidArgument("tsne kl_sample_every must be >= 1");
  const auto& u = projection.umap;
  if (u.n_neighbors < 2) throw InvalidArgument("umap n_neighbors must be >= 2");
  if (u.min_dist < 0.0 || u.min_dist > u.spread) {
    throw InvalidArgument("umap min_dist must lie in [0, spread]");
  }
  if (u.epochs < 1) throw InvalidArgument("umap epochs must be >= 1");
  if (hdbscan.min_cluster_size < 2) throw InvalidArgument("hdbscan min_cluster_size must be >= 2");
  if (hdbscan.min_samples < 1) throw InvalidArgument("hdbscan min_samples must be >= 1");
  if (kde.grid_width < 1 || kde.grid_height < 1) throw InvalidArgument("kde grid must be >= 1x1");
  if (kde.margin < 0.0) throw InvalidArgument("kde margin must be >= 0");
  if (kde.bandwidth && !(*kde.bandwidth > 0.0)) throw InvalidArgument("kde bandwidth must be > 0");
  if (lof.k < 1) throw InvalidArgument("lof k must be >= 1");
  if (!(lof.threshold > 0.0)) throw InvalidArgument("lof threshold must be > 0");
}

}  // namespace paretolens::pipeline
