#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tropiso/cli.hpp"
#include "tropiso/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = tropiso::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tropiso_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& contents) const {
    tropiso::io::write_file(path / name, contents);
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("scalar subcommands") {
  TempDir tmp;
  auto unit3 = tmp.file("unit3.json", R"({"semiring":"max","data":[[1,0,0],[0,1,0],[0,0,1]]})");
  auto r = run({"tvol", "--semiring", "max", unit3});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  CHECK(run({"tdiam", unit3}).out == "2\n");
  CHECK(run({"tdet", unit3}).out == "3\n");
  CHECK(nlohmann::json::parse(run({"tdet", unit3, "--format", "json"}).out)["witness"] == nlohmann::json({0, 1, 2}));
  CHECK(run({"tdist", unit3, "--rows", "0,2"}).out == "2\n");
  auto csv = tmp.file("m.csv", "3,1\n1,2\n");
  CHECK(run({"tdist", csv}).out == "3\n");
  CHECK(nlohmann::json::parse(run({"tvol", unit3, "--format", "json"}).out)["tvol"] == "2");
}

TEST_CASE("error and usage exit codes") {
  TempDir tmp;
  auto r = run({"tvol", (tmp.path / "missing.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.rfind("ERROR:io:", 0) == 0);
  auto bad = tmp.file("bad.json", R"({"semiring":"max","data":[[1,2],[3]]})");
  CHECK(run({"tvol", bad}).err.rfind("ERROR:parse:", 0) == 0);
  auto one = tmp.file("one.json", R"({"semiring":"max","data":[[1]]})");
  auto d1 = run({"tvol", one});
  CHECK(d1.code == 1);
  CHECK(d1.err.rfind("ERROR:dimension:", 0) == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"tvol", one, "--semiring", "plus"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  auto zero = tmp.file("zero.json", R"({"semiring":"max","data":[[0,0],[0,0]]})");
  auto q = run({"qvol", zero, "--require-generic"});
  CHECK(q.code == 1);
  CHECK(q.err.rfind("ERROR:not-sign-generic:", 0) == 0);
  CHECK(q.err.find('\n') == q.err.size() - 1);
}

TEST_CASE("qvol on a file with two matrices") {
  TempDir tmp;
  auto ab = tmp.file("ab.json", R"({"matrices":{"A":{"data":[[0,0,0],[0,0,0]]},"B":{"data":[[0,-1,-2],[0,-2,-4]]}}})");
  auto r = run({"qvol", ab});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j[0]["value"] == "0");
  CHECK(j[1]["value"] == "-1");
  CHECK(run({"qvol", ab, "--method", "lp"}).code == 0);
  CHECK(nlohmann::json::parse(run({"qvol", ab, "--method", "lp"}).out)[1]["value"] == "-1");
  auto sg = nlohmann::json::parse(run({"sign-generic", ab}).out);
  CHECK(sg[0]["verdict"] == "MixedParity");
}

TEST_CASE("matrix-valued subcommands") {
  TempDir tmp;
  auto b = tmp.file("b.json", R"({"semiring":"min","data":[[0,1,5],[1,0,1],[5,1,0]]})");
  CHECK(run({"kleene", b, "--format", "csv"}).out == "0,1,2\n1,0,1\n2,1,0\n");
  auto rnd = tmp.file("r.json", R"({"semiring":"max","data":[[3,1,4],[1,5,9],[2,6,5]]})");
  auto s = nlohmann::json::parse(run({"standardize", rnd}).out);
  CHECK(s["variant"] == "max-standard");
  CHECK(s["matrix"]["data"][0] == nlohmann::json({1, 0, 0}));
  auto b1 = tmp.file("b1.json", R"({"semiring":"min","data":[[0,1,1],[1,0,1],[1,1,0]]})");
  auto iso = nlohmann::json::parse(run({"iso-check", b1, "--variant", "min"}).out);
  CHECK(iso["classification"] == "isodiametric");
  CHECK(iso["tvol"] == "2");
}

TEST_CASE("polytrope writes report and drawing") {
  TempDir tmp;
  auto b1 = tmp.file("b_lambda_1.json", R"({"semiring":"min","data":[[0,1,1],[1,0,1],[1,1,0]]})");
  auto rep = (tmp.path / "out.json").string(), svg = (tmp.path / "out.svg").string();
  auto r = run({"polytrope", b1, "--report", rep, "--svg", svg});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(tropiso::io::read_file(rep));
  CHECK(j["facets"].size() == 6);
  CHECK(j["vertices"].size() == 6);
  CHECK(tropiso::io::read_file(svg).find("<svg") != std::string::npos);
  CHECK(run({"render", b1}).out == tropiso::io::read_file(svg));
}

TEST_CASE("seeded output is reproducible and independent of jobs") {
  auto a = run({"iso-sample", "--dim", "5", "--seed", "9", "--count", "6", "--jobs", "1"});
  auto b = run({"iso-sample", "--dim", "5", "--seed", "9", "--count", "6", "--jobs", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out).size() == 6);
  CHECK(run({"iso-sample", "--dim", "5", "--seed", "10", "--count", "6"}).out != a.out);
}

TEST_CASE("dequant-slope, bound-check, caps") {
  TempDir tmp;
  auto w = tmp.file("w.json", R"({"data":[[0,1,0],[0,0,1]]})");
  auto r = run({"dequant-slope", w, "--t-grid", "1e3,1e4,1e5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,volume,log_ratio\n1000,", 0) == 0);
  CHECK(r.out.find("# qvol,2") != std::string::npos);
  CHECK(run({"dequant-slope", w, "--t-grid", "1e3,x"}).code == 2);
  auto bc = nlohmann::json::parse(run({"bound-check", tmp.file("o.json", R"({"data":[[1,3,1],[1,1,3]]})")}).out);
  CHECK(bc["volume"] == "2");
  CHECK(bc["holds"] == true);

  auto z = tmp.file("z.json", R"({"data":[[0,0,0,0],[0,0,0,0]]})");
  CHECK(nlohmann::json::parse(run({"sign-generic", z, "--cap", "1"}).out)["verdict"] == "Unknown");
  setenv("TROPISO_CAP", "1", 1);
  CHECK(nlohmann::json::parse(run({"sign-generic", z}).out)["verdict"] == "Unknown");
  setenv("TROPISO_CAP", "oops", 1);
  CHECK(run({"sign-generic", z}).code == 2);
  unsetenv("TROPISO_CAP");
  CHECK(nlohmann::json::parse(run({"sign-generic", z}).out)["verdict"] == "MixedParity");
}

TEST_CASE("paper-suite passes") {
  auto r = run({"paper-suite"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
