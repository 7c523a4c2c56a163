#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

std::string const kData   = RELHYP_DATA_DIR;
std::string const kGolden = RELHYP_GOLDEN_DIR;

struct Outcome {
  int         code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "relhyp");
  std::vector<char const*> argv;
  for (auto const& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  int code = relhyp::cli::main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(char const* name) {
  return kData + "/" + name;
}

std::string golden(char const* name) {
  std::ifstream in(kGolden + "/" + name, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string last_line(std::string const& text) {
  auto end   = text.find_last_not_of('\n');
  auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST_CASE("simulate on the phi-bigon") {
  auto r = invoke({"simulate", data("free_s1m0.normalized.json"), data("bigon_s1m0.diagram.json")});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(last_line(r.out) == "TOTAL complete_points=2 bound=2 pass=true");
  CHECK(r.out == golden("simulate_bigon.txt"));
}

TEST_CASE("simulate reports the interior collision of a mirror pair") {
  auto r = invoke({"simulate", data("free_s1m1.normalized.json"), data("mirror_pair_s1m1.diagram.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("COLLISION interior vertex:") != std::string::npos);
  CHECK(r.out.find("INTERIOR free=false localized=true phi_reduced=false") != std::string::npos);
  CHECK(r.out == golden("simulate_mirror_pair.txt"));
}

TEST_CASE("golden reports") {
  CHECK(invoke({"normalize", data("free_s1m1.json")}).out == golden("normalize_s1m1.txt"));
  CHECK(invoke({"validate", data("free_s1m1.normalized.json"), data("mirror_pair_s1m1.diagram.json")}).out
        == golden("validate_mirror_pair.txt"));
  CHECK(invoke({"stats", data("free_s1m1.normalized.json"), data("kcell_s1m1.diagram.json")}).out
        == golden("stats_kcell.txt"));
  CHECK(invoke({"--format", "json", "simulate", data("free_s1m0.normalized.json"), data("bigon_s1m0.diagram.json")}).out
        == golden("simulate_bigon.json"));
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"simulate", data("free_s1m1.normalized.json"), data("random12_s1m1.diagram.json")};
  auto a = invoke(args);
  auto b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto s1 = invoke({"sample", data("free_s1m1.normalized.json"), "--seed", "3", "--faces", "8"});
  auto s2 = invoke({"sample", data("free_s1m1.normalized.json"), "--seed", "3", "--faces", "8"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("normalize a free product case") {
  auto r = invoke({"normalize", data("free_product.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "FREE_PRODUCT G*<x>_3 g=a.b\n");
}

TEST_CASE("verify the commuting pair certificate") {
  auto r = invoke({"verify", data("cyclic3.json"), data("cyclic3_commutator.cert.json"), "--allow-nonunimodular"});
  CHECK(r.code == 0);
  CHECK(r.out == "VERIFIED context=starting h=1 e=1\n");
}

TEST_CASE("prove and round-trip through a certificate file") {
  auto path = (std::filesystem::temp_directory_path() / "relhyp_cli_test.cert.json").string();
  auto word = "t^-1.a.t.a.a.t^-1.a.t.a^-1.t^-1.a^-1.t.t^-1.a^-1.t.a^-1";
  auto r    = invoke({"prove", data("cyclic3.json"), word, "--allow-nonunimodular", "--max-terms", "1", "-o", path});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PROVED terms=1", 0) == 0);
  auto v = invoke({"verify", data("cyclic3.json"), path, "--allow-nonunimodular"});
  CHECK(v.code == 0);
  std::filesystem::remove(path);
}

TEST_CASE("unknown and refuted results exit 1") {
  auto r = invoke({"prove", data("free_s1m1.json"), "a.t", "--max-terms", "2", "--max-conj-len", "1"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("UNKNOWN", 0) == 0);

  auto path = (std::filesystem::temp_directory_path() / "relhyp_cli_refuted.cert.json").string();
  std::ofstream(path) << R"({"u": "a", "terms": []})";
  auto v = invoke({"verify", data("cyclic3.json"), path, "--allow-nonunimodular"});
  CHECK(v.code == 1);
  CHECK(v.out.rfind("REFUTED", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("input errors exit 2 with one ERROR line") {
  std::vector<std::vector<std::string>> cases{
      {},
      {"bogus"},
      {"simulate", data("free_s1m1.normalized.json")},
      {"prove", data("free_s1m1.json"), "a", "--max-terms", "99"},
      {"--format", "xml", "normalize", data("free_s1m1.json")},
      {"normalize", data("missing.json")},
      {"normalize", data("cyclic3.json")},
      {"simulate", data("free_s1m1.json"), data("kcell_s1m1.diagram.json")},
      {"simulate", data("free_s1m0.normalized.json"), data("kcell_s1m1.diagram.json")},
      {"prove", data("free_s1m1.json"), "a.z"},
      {"verify", data("cyclic3.json"), data("cyclic3_commutator.cert.json")},
  };
  for (auto const& args : cases) {
    auto r = invoke(args);
    CAPTURE(r.err);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("ERROR: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}
