#include "paretolens/server.hpp"

#include <httplib.h>

#include <cmath>

#include "artifact_codec.hpp"
#include "paretolens/density.hpp"
#include "paretolens/errors.hpp"

namespace paretolens::server {

namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kIndexPage = R"(<!doctype html>
<html>
<head><meta charset="utf-8"><title>ParetoLens</title></head>
<body>
<h1>ParetoLens</h1>
<p>No frontend bundle was configured. Start the server with <code>--static DIR</code> to serve one.</p>
<ul id="datasets"></ul>
<script>
fetch('/api/datasets').then(r => r.json()).then(list => {
  const ul = document.getElementById('datasets');
  for (const d of list) {
    const li = document.createElement('li');
    const a = document.createElement('a');
    a.href = '/api/datasets/' + encodeURIComponent(d.id);
    a.textContent = d.id + ' (' + d.problem + ', ' + d.algorithm + ', N=' + d.n_solutions + ')';
    li.appendChild(a);
    ul.appendChild(li);
  }
});
</script>
</body>
</html>
)";

void json_error(httplib::Response& res, int status, const std::string& message) {
  codec::OrderedJson body;
  body["error"] = message;
  res.status = status;
  res.set_content(body.dump(), kJson);
}

// {"polygon": [[x, y], ...]}; anything else is a MalformedPolygon.
std::vector<Point2> parse_polygon(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = codec::parse_json_text(text);
  } catch (const MalformedJson&) {
    throw MalformedPolygon("request body is not valid JSON");
  }
  if (!doc.is_object() || !doc.contains("polygon") || !doc["polygon"].is_array()) {
    throw MalformedPolygon("body must be {\"polygon\": [[x, y], ...]}");
  }
  std::vector<Point2> vertices;
  for (const auto& v : doc["polygon"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw MalformedPolygon("each vertex must be [x, y]");
    }
    vertices.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return vertices;
}

}  // namespace

struct Server::Impl {
  std::shared_ptr<const DatasetRegistry> registry;
  ServerOptions options;
  httplib::Server http;
  int port = -1;

  void routes();
  void lasso(const httplib::Request& req, httplib::Response& res);
};

void Server::Impl::routes() {
  // httplib defaults to SO_REUSEPORT, which lets a second server share a busy
  // port silently. Plain SO_REUSEADDR makes that a bind failure.
  http.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  http.set_default_headers({
      {"Access-Control-Allow-Origin", "*"},
      {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });
  http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  http.Get("/api/datasets", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(dataset_listing(*registry), kJson);
  });

  http.Get(R"(/api/datasets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const auto* entry = registry->find(req.matches[1].str());
    if (!entry) return json_error(res, 404, "unknown dataset");
    res.set_content(*entry->body, kJson);
  });

  http.Post(R"(/api/datasets/([^/]+)/lasso)",
            [this](const httplib::Request& req, httplib::Response& res) { lasso(req, res); });

  bool mounted = false;
  if (options.static_dir) {
    mounted = http.set_mount_point("/", options.static_dir->string());
    if (!mounted) throw IoError(options.static_dir->string(), "static directory not found");
  }
  if (!mounted) {
    http.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kIndexPage, "text/html; charset=utf-8");
    });
  }

  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    json_error(res, res.status, res.status == 404 ? "not found" : httplib::status_message(res.status));
  });
  http.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        json_error(res, 500, what);
      });
}

void Server::Impl::lasso(const httplib::Request& req, httplib::Response& res) {
  const auto* entry = registry->find(req.matches[1].str());
  if (!entry) return json_error(res, 404, "unknown dataset");

  std::optional<density::LassoPolygon> polygon;
  try {
    polygon = density::LassoPolygon::create(parse_polygon(req.body));
  } catch (const MalformedPolygon& e) {
    return json_error(res, 400, e.what());
  }

  const auto& artifact = *entry->artifact;
  if (!artifact.density || artifact.references.empty()) {
    return json_error(res, 409, "no reference set");
  }
  const auto result =
      density::lasso_patch(*artifact.density, artifact.layout.reference_coords, *polygon);
  codec::OrderedJson body;
  body["indices"] = result.indices;
  body["patch"] = codec::density_to_json(result.patch);
  res.set_content(body.dump(), kJson);
}

Server::Server(std::shared_ptr<const DatasetRegistry> registry, ServerOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (!registry) throw InvalidArgument("server needs a registry");
  impl_->registry = std::move(registry);
  impl_->options = std::move(options);
  impl_->routes();
}

Server::~Server() { stop(); }

int Server::bind(int port) {
  auto& http = impl_->http;
  const auto& host = impl_->options.host;
  if (port == 0) {
    impl_->port = http.bind_to_any_port(host);
    if (impl_->port < 0) throw BindError(host, port);
  } else {
    if (!http.bind_to_port(host, port)) throw BindError(host, port);
    impl_->port = port;
  }
  return impl_->port;
}

void Server::listen() {
  if (impl_->port < 0) throw InvalidArgument("listen() before bind()");
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace paretolens::server
