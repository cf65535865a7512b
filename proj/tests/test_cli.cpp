#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geosweep/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = geosweep::cli::run_command(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("geosweep_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("empty-circle on an empty point list") {
  const auto r = run({"empty-circle", "--container", "0,0,10", "--tol", "1e-6"}, R"({"kind":"points2d","points":[]})");
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["command"]["name"] == "empty-circle");
  CHECK(doc["result"]["radius"].get<double>() == doctest::Approx(10.0).epsilon(1e-7));
  CHECK_FALSE(doc.contains("timing"));
}

TEST_CASE("union-volume of the unit cube") {
  const std::string path = write_temp("cube.json", R"({"kind":"boxes","boxes":[{"lo":[0,0,0],"hi":[1,1,1]}]})");
  const auto r = run({"union-volume", "--in", path, "--verify"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["result"]["volume"].get<double>() == 1.0);
  CHECK(doc["verification"]["passed"] == true);
}

TEST_CASE("nfa-subseq with a separate automaton and verification") {
  const std::string seq = write_temp("seq.json", R"({"kind":"nfa-instance","points":[[3],[1],[4],[1],[5]],"weights":[1,1,1,1,1]})");
  const std::string lis =
      write_temp("lis.json", R"({"kind":"nfa","initial":[true],"final":[true],"edges":[{"from":0,"to":0,"lo":[1e-9],"hi":["inf"]}]})");
  const auto r = run({"nfa-subseq", "--in", seq, "--nfa", lis, "--verify"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["result"]["total_weight"].get<double>() == 3.0);
  CHECK(doc["verification"]["passed"] == true);
  CHECK(doc["verification"]["traceback_rescored"] == true);
}

TEST_CASE("verification only appends") {
  const std::string in = R"({"kind":"circles","circles":[[0,0,1],[1,0,1]]})";
  const auto plain = run({"union-area-circles"}, in);
  const auto checked = run({"union-area-circles", "--verify"}, in);
  REQUIRE(plain.code == 0);
  REQUIRE(checked.code == 0);
  CHECK(json::parse(plain.out)["result"] == json::parse(checked.out)["result"]);
  CHECK(json::parse(checked.out)["verification"]["passed"] == true);
}

TEST_CASE("output is byte-identical across runs") {
  const auto gen = run({"gen", "--kind", "points2d", "--n", "6", "--seed", "9"});
  REQUIRE(gen.code == 0);
  const auto a = run({"empty-circle", "--verify"}, gen.out);
  const auto b = run({"empty-circle", "--verify"}, gen.out);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"gen", "--kind", "points2d", "--n", "6", "--seed", "9"}).out == gen.out);
}

TEST_CASE("generated corpora feed back into every analysis") {
  struct Case {
    std::vector<std::string> gen;
    std::vector<std::string> cmd;
  };
  const std::vector<Case> cases{
      {{"--kind", "circles", "--n", "40"}, {"contain-circles"}},
      {{"--kind", "boxes", "--n", "60", "--d", "3"}, {"contain-rects"}},
      {{"--kind", "boxes", "--n", "60", "--d", "2"}, {"contain-counts"}},
      {{"--kind", "boxes", "--n", "30", "--d", "3"}, {"union-volume"}},
      {{"--kind", "points", "--n", "8", "--d", "2"}, {"empty-rect"}},
      {{"--kind", "polygons", "--n", "4"}, {"union-area-polygons"}},
      {{"--kind", "circles", "--n", "10"}, {"union-area-circles"}},
      {{"--kind", "nfa-instance", "--n", "40", "--m", "3", "--d", "2"}, {"nfa-subseq"}},
      {{"--kind", "values", "--n", "50"}, {"preset-lis"}},
      {{"--kind", "values", "--n", "50"}, {"preset-alt"}},
  };
  for (const auto& c : cases) {
    std::vector<std::string> g{"gen", "--seed", "5"};
    g.insert(g.end(), c.gen.begin(), c.gen.end());
    const auto doc = run(g);
    REQUIRE(doc.code == 0);
    std::vector<std::string> cmd = c.cmd;
    cmd.push_back("--verify");
    const auto r = run(cmd, doc.out);
    CAPTURE(c.cmd[0]);
    CAPTURE(r.err);
    CHECK(r.code == 0);
    if (r.code == 0) CHECK(json::parse(r.out)["verification"]["passed"] == true);
  }
}

TEST_CASE("presets") {
  const auto lis = run({"preset-lis"}, R"({"kind":"values","values":[3,1,4,1,5]})");
  REQUIRE(lis.code == 0);
  CHECK(json::parse(lis.out)["result"]["length"] == 3);
  const auto alt = run({"preset-alt", "--verify"}, R"({"values":[1,5,2,6]})");
  REQUIRE(alt.code == 0);
  CHECK(json::parse(alt.out)["result"]["length"] == 4);
}

TEST_CASE("usage and validation failures exit with 1") {
  auto r = run({"no-such-command"});
  CHECK(r.code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);

  r = run({});
  CHECK(r.code == 1);

  r = run({"union-volume", "--bogus"}, "{}");
  CHECK(r.code == 1);

  r = run({"union-volume"}, R"({"kind":"boxes","boxes":[{"lo":[0,0],"hi":[1]}]})");
  CHECK(r.code == 1);
  CHECK(r.err.find("DimensionMismatch") != std::string::npos);

  r = run({"union-volume"}, "{not json");
  CHECK(r.code == 1);

  r = run({"empty-circle"}, R"({"kind":"points2d","points":[]})");
  CHECK(r.code == 1);  // no container

  r = run({"contain-circles"}, R"({"kind":"boxes","boxes":[]})");
  CHECK(r.code == 1);  // wrong kind

  r = run({"nfa-subseq"}, R"({"kind":"nfa-instance","points":[[1]],"nfa":{"initial":[false],"final":[true],"edges":[]}})");
  CHECK(r.code == 1);
  CHECK(r.err.find("InvalidAutomaton") != std::string::npos);

  r = run({"empty-rect", "--container", "0,0,1,1", "--ratio", "1,0"}, R"({"points":[[0.5,0.5]]})");
  CHECK(r.code == 1);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("empty-circle") != std::string::npos);
}

TEST_CASE("infinities round-trip as strings") {
  CHECK(geosweep::cli::write_number(1.0 / 0.0) == "inf");
  CHECK(geosweep::cli::write_number(-1.0 / 0.0) == "-inf");
  CHECK(geosweep::cli::write_number(std::nan("")).is_null());
  CHECK(geosweep::cli::read_number(json("-inf")) == -1.0 / 0.0);
  CHECK_THROWS(geosweep::cli::read_number(json("infinity")));

  const auto gen = run({"gen", "--kind", "nfa-instance", "--n", "5", "--seed", "12", "--edges", "8"});
  REQUIRE(gen.code == 0);
  const auto doc = json::parse(gen.out);
  bool saw_inf = false;
  for (const auto& e : doc["nfa"]["edges"]) {
    for (const auto& v : e["lo"]) saw_inf = saw_inf || v == "-inf";
    for (const auto& v : e["hi"]) saw_inf = saw_inf || v == "inf";
  }
  CHECK(saw_inf);
}

TEST_CASE("output file and timing") {
  const fs::path out = fs::temp_directory_path() / "geosweep_cli_out.json";
  fs::remove(out);
  const auto r = run({"union-volume", "--out", out.string(), "--timing"}, R"({"boxes":[{"lo":[0],"hi":[2]}]})");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const auto doc = json::parse(f);
  CHECK(doc["result"]["volume"] == 2.0);
  CHECK(doc["timing"]["seconds"].get<double>() >= 0.0);
}
