#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grpd/cli.hpp"
#include "grpd/comorphism.hpp"
#include "grpd/io.hpp"

using namespace grpd;

namespace {
  std::string const data = GRPD_TEST_DATA;

  struct Result {
    int         code;
    std::string out;
    std::string err;
  };

  Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string file(char const* name) {
    return data + "/" + name;
  }

  bool contains(std::string const& hay, std::string const& needle) {
    return hay.find(needle) != std::string::npos;
  }

  std::string last_line(std::string const& s) {
    auto t = s.substr(0, s.find_last_not_of('\n') + 1);
    return t.substr(t.find_last_of('\n') + 1);
  }
}  // namespace

TEST_CASE("validate") {
  auto r = run({"validate", file("sigma_z2.grpd")});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(r.out == "OK\n");
  CHECK(run({"validate", file("swap.comor")}).code == cli::EXIT_OK);
  CHECK(run({"validate", file("flip.bis"), "--carrier", file("sigma_z2.grpd")}).code == cli::EXIT_OK);
  CHECK(run({"validate", file("flip.bis")}).code == cli::EXIT_INPUT_ERROR);

  r = run({"validate", file("bad_inverse.grpd")});
  CHECK(r.code == cli::EXIT_FAIL);
  CHECK(contains(r.err, "inverse law"));

  r = run({"validate", file("truncated.grpd")});
  CHECK(r.code == cli::EXIT_INPUT_ERROR);
  CHECK(contains(r.err, "line 9, column 1"));

  CHECK(run({"validate", file("nope.grpd")}).code == cli::EXIT_INPUT_ERROR);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == cli::EXIT_INPUT_ERROR);
  CHECK(run({"frobnicate"}).code == cli::EXIT_INPUT_ERROR);
  CHECK(run({"validate", file("sigma_z2.grpd"), "--bogus"}).code == cli::EXIT_INPUT_ERROR);
  CHECK(run({"verify", file("sigma_z2.grpd")}).code == cli::EXIT_INPUT_ERROR);
  CHECK(run({"verify", file("sigma_z2.grpd"), "--theorem1", "--prop1"}).code == cli::EXIT_INPUT_ERROR);
  for (auto caps : {"0,1,1", "4,24", "a,b,c", "4,24,-1", "1,2,3,4,5"}) {
    CAPTURE(caps);
    CHECK(run({"verify", file("sigma_z2.grpd"), "--theorem1", "--caps", caps}).code == cli::EXIT_INPUT_ERROR);
  }
  CHECK(run({"--help"}).code == cli::EXIT_OK);
}

TEST_CASE("bisections") {
  auto r = run({"bisections", file("indiscrete3.grpd")});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(contains(r.out, "order: 6\n"));
  CHECK(contains(r.out, "  0: 0 4 8\n"));
  CHECK(contains(r.out, "table:\n"));
  CHECK(contains(run({"bisections", file("discrete2.grpd")}).out, "order: 1\n"));
}

TEST_CASE("pbis") {
  auto r = run({"pbis", file("sigma_z2.grpd"), "--table"});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(r.out
        == "size: 3\natoms: 0\ncomplete atomic: yes\nelements:\n  0: 0\n  1: 1\n  2: -\n"
           "table:\n  0 1 2\n  1 0 2\n  2 2 2\nstar: 0 1 2\n");
  CHECK(contains(run({"pbis", file("indiscrete3.grpd")}).out, "size: 34\n"));
}

TEST_CASE("enumerate") {
  CHECK(run({"enumerate", file("sigma_z2.grpd"), file("indiscrete2.grpd")}).out == "comorphisms: 2\n");
  auto r = run({"enumerate", file("sigma_z2.grpd"), file("indiscrete2.grpd"), "--functors"});
  CHECK(r.out == "functors: 2\n");
  r = run({"enumerate", file("indiscrete2.grpd"), file("indiscrete2.grpd"), "--list"});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(contains(r.out, "# 0\n"));
}

TEST_CASE("compose, factorize and pushforward") {
  auto r = run({"compose", file("swap.comor"), file("swap.comor")});
  CHECK(r.code == cli::EXIT_INPUT_ERROR);  // codomain is not the domain

  auto dir = std::filesystem::temp_directory_path() / "grpd_cli_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "id.comor");
    out << io::serialize_comorphism(Comorphism::identity(io::read_groupoid(file("indiscrete2.grpd"))));
  }
  r = run({"compose", (dir / "id.comor").string(), file("swap.comor")});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(io::parse_comorphism(r.out) == io::read_comorphism(file("swap.comor")));
  std::filesystem::remove_all(dir);

  r = run({"factorize", file("swap.comor")});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(contains(r.out, "recomposes: yes\n"));

  r = run({"pushforward", file("swap.comor"), file("flip.bis")});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(r.out == "bis 1\nc 0 1\nc 1 2\n");
}

TEST_CASE("verify text reports") {
  auto r = run({"verify", file("sigma_z2.grpd"), "--theorem1"});
  CHECK(r.code == cli::EXIT_OK);
  CHECK(last_line(r.out) == "families: 2, Bis: 2, PASS");
  CHECK(contains(r.out, "natural over this universe"));
  CHECK(contains(r.out, "closure: complete"));

  CHECK(last_line(run({"verify", file("indiscrete2.grpd"), "--prop1"}).out) == "families: 1, expected: 1, PASS");
  CHECK(last_line(run({"verify", file("discrete2.grpd"), "--partial"}).out) == "families: 4, PBis: 4, PASS");

  // Output is byte-identical across runs and branching orders.
  auto again = run({"verify", file("sigma_z2.grpd"), "--theorem1", "--seed-order", "5"});
  CHECK(again.out == r.out);

  // A universe too small to hold the coslices cannot confirm the count.
  r = run({"verify", file("sigma_z2.grpd"), "--theorem1", "--caps", "4,24,1"});
  CHECK(r.code == cli::EXIT_FAIL);
  CHECK(contains(r.out, "truncated by caps"));
  CHECK(contains(last_line(r.out), "FAIL"));

  // Inputs larger than the caps are refused.
  r = run({"verify", file("indiscrete3.grpd"), "--theorem1", "--caps", "2,24,40"});
  CHECK(r.code == cli::EXIT_INPUT_ERROR);
  CHECK(contains(r.err, "objects"));
}

TEST_CASE("verify json reports") {
  auto r = run({"verify", file("sigma_z2.grpd"), "--theorem1", "--json"});
  REQUIRE(r.code == cli::EXIT_OK);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["check"] == "theorem1");
  CHECK(j["caps"]["objects"] == 4);
  CHECK(j["caps"]["morphisms"] == 24);
  CHECK(j["caps"]["groupoids"] == 40);
  CHECK(j["caps"]["arrows"] == 2000);
  CHECK(j["universe"]["fully_closed"] == true);
  CHECK(j["universe"]["closures"].size() == 5);
  CHECK(j["families"] == 2);
  CHECK(j["expected"] == 2);
  CHECK(j["flags"]["conjugation_natural"] == true);
  CHECK(j["flags"]["extraction_inverts"] == true);
  CHECK(j["flags"]["group_isomorphic"] == true);
  CHECK(j["witnesses"].size() == 2);
  CHECK(j["result"] == "PASS");

  j = nlohmann::json::parse(run({"verify", file("sigma_z2.grpd"), "--partial", "--json"}).out);
  CHECK(j["families"] == 3);
  CHECK(j["flags"].contains("monoid_isomorphic"));
  CHECK(j["witnesses"][2][0].is_null());

  j = nlohmann::json::parse(run({"verify", file("discrete2.grpd"), "--prop1", "--json"}).out);
  CHECK(j["families"] == 1);
  for (auto key : {"fixes_star", "fixes_generic_arrow", "identity_only"}) {
    CHECK(j["flags"][key] == true);
  }

  auto caps = nlohmann::json::parse(
      run({"verify", file("sigma_z2.grpd"), "--theorem1", "--json", "--caps", "3,10,20,500"}).out)["caps"];
  CHECK(caps["objects"] == 3);
  CHECK(caps["arrows"] == 500);
}
