#include <doctest.h>

#include <httplib.h>
#include <json.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "fixtures.hpp"
#include "paretolens/artifact_io.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout and stderr together.
Outcome run(const std::string& args) {
  const std::string cmd = std::string(PARETOLENS_CLI_PATH) + " " + args + " 2>&1";
  Outcome o;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, n);
  const int status = ::pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Inputs {
  fixtures::TempDir dir;
  std::string dec, obj, ref;
  Inputs() {
    const auto d = fixtures::dtlz3_like(60, 6, 3, 40, 11);
    dec = dir.file("dec.csv", fixtures::csv(d.decision)).string();
    obj = dir.file("obj.csv", fixtures::csv(d.objective)).string();
    ref = dir.file("ref.csv", fixtures::csv(d.reference)).string();
  }
  std::string base(const std::string& out) const {
    return "preprocess --dec " + dec + " --obj " + obj + " --ref " + ref + " --out " + out;
  }
};

}  // namespace

TEST_CASE("preprocess writes a valid artifact") {
  Inputs in;
  const auto out = (in.dir.path() / "a.json").string();
  const auto r = run(in.base(out) + " --problem DTLZ3 --algorithm NSGA-III --seed 5");
  INFO(r.out);
  REQUIRE(r.code == 0);
  const auto artifact = paretolens::parse_artifact(slurp(out));
  CHECK(artifact.meta().problem_name == "DTLZ3");
  CHECK(artifact.meta().algorithm_name == "NSGA-III");
  CHECK(artifact.layout.seed == 5);
  CHECK(artifact.solutions.size() == 60);
  CHECK(artifact.references.size() == 40);
}

TEST_CASE("reruns are byte-identical") {
  Inputs in;
  const auto a = (in.dir.path() / "a.json").string();
  const auto b = (in.dir.path() / "b.json").string();
  REQUIRE(run(in.base(a)).code == 0);
  REQUIRE(run(in.base(b)).code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("timing flag prints the report") {
  Inputs in;
  const auto r = run(in.base((in.dir.path() / "a.json").string()) + " --timing --projection umap");
  REQUIRE(r.code == 0);
  const auto t = json::parse(r.out);
  CHECK(t["projection"].get<double>() <= t["total"].get<double>());
  CHECK(t["stages"].contains("clustering"));
}

TEST_CASE("usage errors exit with 2") {
  Inputs in;
  CHECK(run("preprocess --dec " + in.dec + " --out x.json").code == 2);
  CHECK(run("").code == 2);
  CHECK(run(in.base("x.json") + " --projection pca").code == 2);
  CHECK(run("serve").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("runtime errors exit with 1 and say why") {
  Inputs in;
  const auto out = (in.dir.path() / "a.json").string();
  SUBCASE("bad config key") {
    const auto cfg = in.dir.file("c.json", R"({"sede": 3})");
    const auto r = run(in.base(out) + " --config " + cfg.string());
    CHECK(r.code == 1);
    CHECK(r.out.find("sede") != std::string::npos);
  }
  SUBCASE("missing input file") {
    const auto r = run("preprocess --dec /nonexistent/d.csv --obj " + in.obj + " --out " + out);
    CHECK(r.code == 1);
    CHECK(r.out.find("IoError") != std::string::npos);
  }
  SUBCASE("row count mismatch") {
    const auto short_obj = in.dir.file("short.csv", "1,2,3\n");
    const auto r = run("preprocess --dec " + in.dec + " --obj " + short_obj.string() + " --out " + out);
    CHECK(r.code == 1);
    CHECK(r.out.find("RowCountMismatch") != std::string::npos);
  }
  SUBCASE("serve refuses a malformed artifact and names it") {
    fixtures::TempDir data;
    data.file("broken.json", "{\"schema_version\": ");
    const auto r = run("serve --port 0 --data " + data.path().string());
    CHECK(r.code == 1);
    CHECK(r.out.find("broken.json") != std::string::npos);
  }
}

TEST_CASE("serve on port 0 reports the chosen port and answers") {
  Inputs in;
  fixtures::TempDir data;
  REQUIRE(run(in.base((data.path() / "dtlz.json").string())).code == 0);

  int fds[2];
  REQUIRE(::pipe(fds) == 0);
  const pid_t pid = ::fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    ::dup2(fds[1], STDOUT_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    const std::string dir = data.path().string();
    ::execl(PARETOLENS_CLI_PATH, PARETOLENS_CLI_PATH, "serve", "--port", "0", "--data", dir.c_str(),
            static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(fds[1]);
  std::string line;
  char c;
  while (::read(fds[0], &c, 1) == 1 && c != '\n') line += c;
  ::close(fds[0]);
  INFO(line);
  const auto colon = line.rfind(':');
  REQUIRE(colon != std::string::npos);
  const int port = std::stoi(line.substr(colon + 1));
  CHECK(port > 0);
  CHECK(line.find("serving 1 dataset(s)") == 0);

  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Get("/api/datasets");
  REQUIRE(res);
  CHECK(json::parse(res->body)[0]["id"] == "dtlz");

  ::kill(pid, SIGTERM);
  int status = 0;
  ::waitpid(pid, &status, 0);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
}
