#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "sessioncomm/pipeline.hpp"

using namespace sessioncomm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("sessioncomm_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int cli(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void small_synth(const fs::path& dir) {
  REQUIRE(cli({"synth", "--out", dir.string(), "--sessions-per-group", "12", "--seed", "4"}) == 0);
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(cli({"--help"}) == 0);
  CHECK(cli({}) == 1);
  CHECK(cli({"communities", "--no-such-flag"}) == 1);
  CHECK(cli({"synth", "--noise", "0.9"}) == 1);
  CHECK(cli({"sessionize", "--input", "/nonexistent/log.csv"}) == 1);
}

TEST_CASE("downstream stage without its input exits 2") {
  TempDir dir("missing");
  std::string err;
  CHECK(cli({"communities", "--out", dir.path.string()}, &err) == 2);
  CHECK(cli({"cluster", "--out", dir.path.string()}) == 2);
}

TEST_CASE("pipeline equals the stage sequence byte for byte") {
  TempDir dir("stages");
  small_synth(dir.path);
  const auto log = (dir.path / "log.csv").string();
  const auto catalog = (dir.path / "catalog.csv").string();
  const auto a = (dir.path / "a").string();
  const auto b = (dir.path / "b").string();

  REQUIRE(cli({"pipeline", "--input", log, "--catalog", catalog, "--k", "3", "--out", a}) == 0);

  REQUIRE(cli({"sessionize", "--input", log, "--out", b}) == 0);
  REQUIRE(cli({"graph", "--out", b}) == 0);
  REQUIRE(cli({"communities", "--k", "3", "--out", b}) == 0);
  REQUIRE(cli({"distances", "--out", b}) == 0);
  REQUIRE(cli({"labels", "--catalog", catalog, "--out", b}) == 0);
  REQUIRE(cli({"cluster", "--out", b}) == 0);
  REQUIRE(cli({"project", "--out", b}) == 0);
  REQUIRE(cli({"report", "--out", b}) == 0);

  for (const auto& entry : fs::recursive_directory_iterator(fs::path(a) / "report")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    INFO(rel.string());
    CHECK(slurp(entry.path()) == slurp(fs::path(b) / rel));
  }
}

TEST_CASE("config file supplies defaults and flags override it") {
  TempDir dir("config");
  small_synth(dir.path);
  const auto conf = dir.path / "run.ini";
  std::ofstream(conf) << "k = 3\nseed = 3\n";
  const auto out = (dir.path / "run").string();
  REQUIRE(cli({"pipeline", "--config", conf.string(), "--input", (dir.path / "log.csv").string(), "--out", out}) == 0);
  auto spectrum = slurp(fs::path(out) / "spectrum.json");
  CHECK(spectrum.find("\"k\": 3") != std::string::npos);

  const auto out2 = (dir.path / "run2").string();
  REQUIRE(cli({"pipeline", "--config", conf.string(), "--k", "4", "--input", (dir.path / "log.csv").string(), "--out",
               out2}) == 0);
  CHECK(slurp(fs::path(out2) / "spectrum.json").find("\"k\": 4") != std::string::npos);
}

TEST_CASE("strict parsing failure aborts, lenient parsing records rejects") {
  TempDir dir("strict");
  std::ofstream(dir.path / "bad.csv") << "timestamp,user_id,object_id\n1,u,a\nnot-a-number,u,b\n";
  const auto input = (dir.path / "bad.csv").string();
  CHECK(cli({"sessionize", "--strict", "--input", input, "--out", dir.path.string()}) == 3);
  CHECK(cli({"sessionize", "--input", input, "--out", dir.path.string()}) == 0);
  CHECK(slurp(dir.path / "rejects.csv").find("\n3,") != std::string::npos);
}

TEST_CASE("installed binary reports exit codes") {
  const std::string bin = SESSIONCOMM_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("--help") == 0);
  CHECK(status("graph --bogus") == 1);
  TempDir dir("binary");
  CHECK(status("graph --out " + dir.path.string()) == 2);
}
