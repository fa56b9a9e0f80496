#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "twistcheck/app.hpp"

using nlohmann::json;
using twistcheck::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

// Runs from the source tree so that relative script paths in goldens match.
Run run(std::vector<std::string> args) {
  static const bool moved = [] {
    fs::current_path(TWISTCHECK_SOURCE_DIR);
    unsetenv("TWISTCHECK_FORMAT");
    return true;
  }();
  (void)moved;
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void strip_seconds(json& j) {
  if (j.is_object()) {
    j.erase("seconds");
    for (auto& [k, v] : j.items()) strip_seconds(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_seconds(v);
  }
}

fs::path temp_dir() {
  fs::path d = fs::temp_directory_path() / ("twistcheck_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = temp_dir() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("golden JSON for every subcommand") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"verify_corollary13", {"verify", "relations/corollary13.rel"}},
      {"verify_mutations", {"verify", "relations/refuted/corollary13_mutations.rel"}},
      {"verify_sweep_homology", {"verify", "relations/hkp_homology_sweep.rel"}},
      {"catalog_chain_m2", {"catalog", "chain", "--m", "2"}},
      {"catalog_hkp_k3", {"catalog", "hkp", "--k", "3"}},
      {"milnor_z0_3_z1_3", {"milnor", "--poly", "z0^3+z1^3"}},
      {"milnor_weights", {"milnor", "--poly", "z0^2+z1^3", "--weights", "3,2", "--degree", "6"}},
      {"fiber_k3", {"fiber", "--k", "3"}},
      {"count_n2_k3", {"count", "--n", "2", "--k", "3"}},
      {"powers_k6", {"powers", "--k", "6"}},
      {"surface_validate_S_1_3", {"surface", "validate", "S_1_3"}},
      {"derivation_cor13", {"derivation", "derivations/cor13_to_star.dv"}},
  };
  for (const auto& [name, args] : cases) {
    CAPTURE(name);
    std::vector<std::string> a = args;
    a.push_back("--json");
    Run r = run(a);
    json got = json::parse(r.out);
    json want = json::parse(slurp(fs::path("tests/golden") / (name + ".json")));
    strip_seconds(got);
    strip_seconds(want);
    CHECK(got == want);
    if (got.contains("exit_code")) CHECK(got["exit_code"] == r.code);
  }
}

TEST_CASE("documented examples") {
  Run f = run({"fiber", "--k", "3", "--json"});
  CHECK(f.code == 0);
  CHECK(json::parse(f.out) == json::parse(R"({"genus":1,"boundary":3,"euler":-3,"h1_rank":4})"));

  Run c = run({"count", "--n", "2", "--k", "3"});
  CHECK(c.code == 0);
  CHECK(c.out.find("twist_count: 12") != std::string::npos);

  Run m = run({"milnor", "--poly", "z0^3+z1^3"});
  CHECK(m.code == 0);
  CHECK(m.out.find("milnor number: 4") != std::string::npos);
  CHECK(m.out.find("weights: 1, 1") != std::string::npos);
  CHECK(m.out.find("degree: 3") != std::string::npos);

  Run chain = run({"catalog", "chain", "--m", "2"});
  CHECK(chain.code == 0);
  CHECK(chain.out.find("(D1*D2)^6 == Db") != std::string::npos);
  Run hkp = run({"catalog", "hkp", "--k", "3"});
  CHECK(hkp.out.find("surface F_3_3") != std::string::npos);
  Run star = run({"catalog", "star"});
  CHECK(star.out.find("(Dg*Dp*Db*Dy)^3 == Db1*Db2*Db3") != std::string::npos);

  Run v = run({"verify", "relations/corollary13.rel"});
  CHECK(v.code == 0);
  CHECK(v.out.find("1 assertion: 1 verified") != std::string::npos);
  Run mut = run({"verify", "relations/refuted/corollary13_mutations.rel"});
  CHECK(mut.code == 1);
  CHECK(mut.out.find("witness:") != std::string::npos);

  CHECK(run({"surface", "validate", "S_1_3"}).code == 0);
  CHECK(run({"derivation", "derivations/cor13_to_star.dv"}).code == 0);
}

TEST_CASE("homology-only reports say necessary condition only") {
  Run r = run({"verify", "relations/corollary13.rel", "--engine", "homology"});
  CHECK(r.code == 0);
  CHECK(r.out.find("passed (necessary condition only)") != std::string::npos);
  Run j = run({"verify", "relations/corollary13.rel", "--engine", "homology", "--json"});
  json out = json::parse(j.out);
  CHECK(out["results"][0]["verdict"] == "passed (necessary condition only)");
  CHECK(out["summary"]["necessary_condition_only"] == 1);
}

TEST_CASE("catalog output round trips through verify") {
  fs::path p = temp_dir() / "star.rel";
  CHECK(run({"catalog", "star", "-o", p.string()}).code == 0);
  CHECK(run({"verify", p.string()}).code == 0);
  fs::path q = temp_dir() / "rev.rel";
  CHECK(run({"catalog", "hkp", "--k", "3", "--order", "reversed", "-o", q.string()}).code == 0);
  CHECK(run({"verify", q.string()}).code == 1);
}

TEST_CASE("verbosity and formats") {
  Run v2 = run({"verify", "relations/refuted/lemma_other_side.rel", "-vv"});
  CHECK(v2.code == 1);
  CHECK(v2.out.find("witness:") != std::string::npos);
  Run j = run({"verify", "relations/refuted/lemma_other_side.rel", "--format", "json", "-vv"});
  json out = json::parse(j.out);
  CHECK(out["results"][0].contains("witness_detail"));
  setenv("TWISTCHECK_FORMAT", "json", 1);
  Run e = run({"fiber", "--k", "4"});
  unsetenv("TWISTCHECK_FORMAT");
  CHECK(json::parse(e.out)["genus"] == 3);
  CHECK(run({"fiber", "--k", "4", "--format", "yaml"}).code == 2);
}

TEST_CASE("exit codes are total over the corpus") {
  std::string s13 = slurp("data/surfaces/S_1_3.json");
  json corrupt = json::parse(slurp("data/surfaces/S_1_1.json"));
  corrupt["curves"][0]["twist"]["b"] = "b a a";
  fs::path corrupt_path = write_temp("corrupt.json", corrupt.dump());
  fs::path malformed_json = write_temp("malformed.json", "{\"name\": ");
  fs::path empty_dv = write_temp("empty.dv", "");
  fs::path empty_rel = write_temp("empty.rel", "");
  fs::path bad_rel = write_temp("bad.rel", "surface S_1_3\nassert (Dr * == Db1\n");
  fs::path unbound = write_temp("unbound.rel", "surface S_1_3\nassert Dq == Dr\n");
  fs::path no_surface = write_temp("nosurf.rel", "surface nosuch\nassert Dq == Dr\n");
  fs::path bad_dv = write_temp("bad.dv", "surface S_1_3\ninitial Dr == Dr\nstep fold: Dr == Dr\n");
  fs::path forged = write_temp(
      "forged.dv", "surface S_1_3\ninitial Dg * Dg' * Dr == Dr\nstep free_cancel: Dg == Dr\n");

  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> corpus = {
      {{"verify", "relations/corollary13.rel"}, 0},
      {{"verify", "relations/star.rel"}, 0},
      {{"verify", "relations/braids.rel", "-j", "4"}, 0},
      {{"verify", "relations/chain_m3_squared.rel"}, 0},
      {{"verify", "relations/refuted/chain_m2_exponent5.rel"}, 1},
      {{"verify", "relations/refuted/hkp_k4_reversed.rel"}, 1},
      {{"verify", "missing.rel"}, 2},
      {{"verify", empty_rel.string()}, 2},
      {{"verify", bad_rel.string()}, 2},
      {{"verify", unbound.string()}, 2},
      {{"verify", no_surface.string()}, 2},
      {{"verify", "relations/corollary13.rel", "--engine", "both", "--engine", "x"}, 2},
      {{"verify", "relations/hkp_k4.rel", "--engine", "exact"}, 2},
      {{"verify"}, 2},
      {{}, 2},
      {{"nosuch"}, 2},
      {{"catalog"}, 2},
      {{"catalog", "nosuch"}, 2},
      {{"catalog", "chain", "--m", "0"}, 2},
      {{"catalog", "chain", "--m", "x"}, 2},
      {{"catalog", "chain", "--m", "2", "--variant", "odd"}, 2},
      {{"catalog", "hkp", "--k", "1"}, 2},
      {{"catalog", "corollary"}, 0},
      {{"milnor", "--poly", "z0 + "}, 2},
      {{"milnor", "--poly", "z0^2*z1 + z1^5 + z0^3"}, 2},
      {{"milnor", "--poly", "z0^2+z1^3", "--weights", "1,1", "--degree", "2"}, 1},
      {{"milnor", "--poly", "z0^2+z1^3", "--weights", "3", "--degree", "6"}, 2},
      {{"fiber", "--k", "0"}, 2},
      {{"fiber", "--k", "10"}, 0},
      {{"count", "--n", "0", "--k", "3"}, 2},
      {{"count", "--n", "5", "--k", "10"}, 0},
      {{"powers", "--k", "12"}, 0},
      {{"surface", "validate", "S_1_3"}, 0},
      {{"surface", "validate", "F_5_5"}, 0},
      {{"surface", "validate", "data/surfaces/S_1_2.json"}, 0},
      {{"surface", "validate", corrupt_path.string()}, 1},
      {{"surface", "validate", malformed_json.string()}, 2},
      {{"surface", "validate", "nosuch"}, 2},
      {{"surface", "validate", "nosuch/missing.json"}, 2},
      {{"derivation", "derivations/cor13_to_star.dv"}, 0},
      {{"derivation", forged.string()}, 1},
      {{"derivation", empty_dv.string()}, 2},
      {{"derivation", bad_dv.string()}, 2},
      {{"derivation", "missing.dv"}, 2},
  };
  for (const Case& c : corpus) {
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    CAPTURE(joined);
    Run r = run(c.args);
    CHECK(r.code == c.code);
    if (c.code == 2) CHECK_FALSE(r.err.empty());
  }

  Run bad = run({"surface", "validate", corrupt_path.string()});
  CHECK(bad.out.find("FAIL") != std::string::npos);
  Run fd = run({"derivation", forged.string()});
  CHECK(fd.out.find("step 1") != std::string::npos);
  fs::remove_all(temp_dir());
}
