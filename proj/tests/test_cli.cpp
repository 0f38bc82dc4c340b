#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "pfk/cli.hpp"
#include "pfk/error.hpp"

using namespace pfk;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = PFK_CORPUS_DIR;

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output run_cli(cli::RunConfig c) {
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

cli::RunConfig config(std::string command, std::string input) {
  cli::RunConfig c;
  c.command = std::move(command);
  c.inputs = {std::move(input)};
  return c;
}

std::string corpus_file(const std::string& name) { return (kCorpus / (name + ".gsp")).string(); }

class TempDir {
 public:
  TempDir() {
    static int n = 0;
    path_ = fs::temp_directory_path() / ("pfk_cli_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
  }

 private:
  fs::path path_;
};

}  // namespace

TEST(Cli, Abelianize) {
  const Output o = run_cli(config("abelianize", corpus_file("n223")));
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "Z^2\n");
}

TEST(Cli, CheckParafreeJson) {
  cli::RunConfig c = config("check-parafree", corpus_file("b23"));
  c.json = true;
  const Output o = run_cli(c);
  EXPECT_EQ(o.code, cli::kNotParafree);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["verdict"], "not-parafree");
  EXPECT_TRUE(j["certificate"].is_null());
  bool failed = false;
  for (const auto& cond : j["conditions"])
    if (cond["id"] == "hnn.3") failed = cond["status"] == "failed";
  EXPECT_TRUE(failed);

  const Output k = run_cli([] {
    cli::RunConfig r = config("check-parafree", corpus_file("k12"));
    r.json = true;
    return r;
  }());
  EXPECT_EQ(k.code, cli::kParafree);
  EXPECT_EQ(nlohmann::json::parse(k.out)["r_ab"], 2);
  EXPECT_EQ(run_cli(config("check-parafree", corpus_file("b12"))).code, cli::kInconclusive);
}

TEST(Cli, JsonIsByteIdenticalAcrossRuns) {
  for (const std::string name : {"k12", "b23", "graph_loop", "n223_z"}) {
    cli::RunConfig c = config("check-parafree", corpus_file(name));
    c.json = true;
    EXPECT_EQ(run_cli(c).out, run_cli(c).out) << name;
  }
  cli::RunConfig b = config("betti", corpus_file("f2"));
  b.json = true;
  EXPECT_EQ(run_cli(b).out, run_cli(b).out);
}

TEST(Cli, Betti) {
  cli::RunConfig c = config("betti", corpus_file("f2"));
  c.json = true;
  const Output o = run_cli(c);
  ASSERT_EQ(o.code, 0);
  const auto j = nlohmann::json::parse(o.out);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[1]["index"], 4);
  EXPECT_DOUBLE_EQ(j[1]["ratio"].get<double>(), 1.25);
  EXPECT_DOUBLE_EQ(j[2]["ratio"].get<double>(), 129.0 / 128.0);

  c.primes = {4};
  EXPECT_EQ(run_cli(c).code, cli::kError);
}

TEST(Cli, Fox) {
  TempDir dir;
  dir.write("c.gsp", "< x, y | [x, y] >\n");
  const Output o = run_cli(config("fox", (dir.path() / "c.gsp").string()));
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out,
            "d r1 / d x = -x^-1 + x^-1 y^-1\n"
            "d r1 / d y = -x^-1 y^-1 + x^-1 y^-1 x\n");
}

TEST(Cli, MagnusAndSolve) {
  cli::RunConfig m = config("magnus", "[x, y]");
  m.degree = 2;
  EXPECT_EQ(run_cli(m).out, "1 1\nX*Y 1\nY*X -1\n");

  cli::RunConfig s = config("solve", "x1 [x2, x1] [x3, x2]");
  s.primes = {2};
  s.degree = 2;
  s.assign = {"x2=a", "x3=b"};
  const Output o = run_cli(s);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("omega(x1, c) = 1: yes"), std::string::npos);
  s.seed = 7;
  EXPECT_EQ(run_cli(s).out.substr(0, o.out.find('\n')), o.out.substr(0, o.out.find('\n')));
}

TEST(Cli, ShippedCorpusPasses) {
  const Output o = run_cli(config("corpus", kCorpus.string()));
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  EXPECT_NE(o.out.find(", 0 mismatches, 0 errors"), std::string::npos);
}

TEST(Cli, EmptyCorpus) {
  TempDir dir;
  const Output o = run_cli(config("corpus", dir.path().string()));
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("0 entries"), std::string::npos);
}

TEST(Cli, CorruptedCorpusEntry) {
  TempDir dir;
  dir.write("bad.gsp", "< x, y | x^ >\n");
  dir.write("bad.expect", "parafree\n");
  const Output o = run_cli(config("corpus", dir.path().string()));
  EXPECT_EQ(o.code, cli::kError);
}

TEST(Cli, MissingSidecar) {
  TempDir dir;
  dir.write("f.gsp", "< x, y >\n");
  EXPECT_EQ(run_cli(config("corpus", dir.path().string())).code, cli::kError);
}

TEST(Cli, MismatchedExpectation) {
  TempDir dir;
  dir.write("f.gsp", "< x, y >\n");
  dir.write("f.expect", "not-parafree\n");
  const Output o = run_cli(config("corpus", dir.path().string()));
  EXPECT_EQ(o.code, cli::kNotParafree);
  EXPECT_NE(o.out.find("MISMATCH"), std::string::npos);
}

TEST(Cli, Errors) {
  const Output missing = run_cli(config("abelianize", "/nonexistent/x.gsp"));
  EXPECT_EQ(missing.code, cli::kError);
  EXPECT_EQ(missing.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(run_cli(config("frobnicate", corpus_file("f2"))).code, cli::kError);
  cli::RunConfig c = config("magnus", "x");
  c.degree = 0;
  EXPECT_THROW(cli::validate(c), InvalidArgument);
}
