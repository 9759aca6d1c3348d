#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "njlab/fieldspec.hpp"

using namespace njl;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "cli_tmp_" + name;
  std::ofstream os(path);
  os << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(NJLAB_CLI_PATH) + " " + args + " > cli_tmp_stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

const char* kY2Spec = R"({"family": "y2", "params": {"lambda": "-1", "k": 1}})";
const char* kLinfSpec =
    R"({"family": "linf",
        "params": {"lambda": "1/2", "v1": "1", "alpha": "1", "b1": "0",
                   "g": [["1", 1]]}})";

}  // namespace

TEST_CASE("field specs parse for named families and explicit components") {
  const FieldSpec y2 = parse_field_spec(kY2Spec);
  CHECK(y2.family == "y2");
  CHECK(y2.lambda == Rational(-1));
  CHECK(y2.field == make_y2({Rational(-1), 1, {}}));

  const FieldSpec lf = parse_field_spec(kLinfSpec);
  CHECK(lf.family == "linf");
  CHECK(lf.field.size() == 3);

  const FieldSpec ex = parse_field_spec(
      R"({"nvars": 2, "lambda": "1/2",
          "components": [[{"coeff": "1/2", "exps": [1, 0]}],
                         [{"coeff": "1/2", "exps": [0, 1]},
                          {"coeff": "1", "exps": [2, 0]}]]})");
  CHECK(ex.family.empty());
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK(ex.field == PolyMap({Rational(1, 2) * x,
                             Rational(1, 2) * y + x * x}));
}

TEST_CASE("field spec errors carry a location") {
  CHECK_THROWS_AS(parse_field_spec("not json"), SpecError);
  CHECK_THROWS_AS(parse_field_spec(R"({"family": "mystery", "params": {}})"),
                  SpecError);
  // rationals must be strings or integers, never floats
  CHECK_THROWS_AS(
      parse_field_spec(R"({"family": "y2", "params": {"lambda": 0.5}})"),
      SpecError);
  // the degenerate alpha = 0 instance is rejected at parse time
  CHECK_THROWS_AS(parse_field_spec(
                      R"({"family": "linf",
              "params": {"lambda": "1/2", "v1": "1", "alpha": "0",
                         "b1": "0", "g": [["1", 1]]}})"),
                  SpecError);
}

TEST_CASE("serialization round-trips to the same normalized document") {
  for (const char* text : {kY2Spec, kLinfSpec}) {
    const FieldSpec a = parse_field_spec(text);
    const FieldSpec b = parse_field_spec(serialize_field_spec(a));
    CHECK(a.doc == b.doc);
    CHECK(a.field == b.field);
  }
}

TEST_CASE("csv traces carry full-precision samples") {
  OrbitTrace tr;
  tr.times = {0.0, 0.1};
  VectorXd s(2);
  s << 1.0 / 3.0, -2.0;
  tr.states = {s, 0.5 * s};
  std::ostringstream os;
  emit_trace_csv(tr, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,x1,x2");
  std::getline(is, line);
  CHECK(line.find("0.33333333333333331") != std::string::npos);
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 1);
}

TEST_CASE("json traces echo the verdict and the configuration") {
  DiscreteTrace tr;
  VectorXd s(1);
  s << 2.0;
  tr.states = {s, 2.0 * s};
  tr.verdict = OrbitVerdict::Escapes;
  SimConfig cfg;
  cfg.escape_radius = 123.0;
  const json j = trace_json(tr, cfg);
  CHECK(j["type"] == "iteration");
  CHECK(j["verdict"] == "escapes");
  CHECK(j["config"]["escape_radius"] == 123.0);
  CHECK(j["states"].size() == 2);
}

TEST_CASE("classify subcommand reports the dependence verdict") {
  const std::string cfg = write_temp("y2.json", kY2Spec);
  REQUIRE(run_cli("classify --config " + cfg + " --out cli_tmp_cls.json") == 0);
  const json out = json::parse(slurp("cli_tmp_cls.json"));
  CHECK(out["verdict"] == "dependent");
  CHECK(out["nilpotent"] == true);
}

TEST_CASE("simulate subcommand detects the escaping orbit") {
  const std::string cfg = write_temp("y2b.json", kY2Spec);
  REQUIRE(run_cli("simulate --config " + cfg +
                  " --x0 -18,12,1 --format json --out cli_tmp_sim.json") == 0);
  const json out = json::parse(slurp("cli_tmp_sim.json"));
  CHECK(out["verdict"] == "escapes");
}

TEST_CASE("iterate subcommand runs exactly when asked") {
  const std::string cfg = write_temp("linf.json", kLinfSpec);
  REQUIRE(run_cli("iterate --config " + cfg +
                  " --x0 1,0,0 --nmax 50 --exact --format csv --out "
                  "cli_tmp_it.csv") == 0);
  const std::string text = slurp("cli_tmp_it.csv");
  CHECK(text.rfind("n,x1,x2,x3", 0) == 0);
}

TEST_CASE("verify subcommand succeeds on a fast scope") {
  const int rc = run_cli("verify --scope liorsc-trap,y2-discrete-escape "
                         "--out cli_tmp_ver.json");
  CHECK(rc == 0);
  const json out = json::parse(slurp("cli_tmp_ver.json"));
  CHECK(out["overall"] == "pass");
  CHECK(out["claims"].size() == 2);
}

TEST_CASE("transform subcommand prints the pushed field") {
  const std::string cfg = write_temp("y2c.json", kY2Spec);
  CHECK(run_cli("transform --config " + cfg + " --chart infinity") == 0);
}

TEST_CASE("usage errors exit with the dedicated code") {
  CHECK(run_cli("simulate") == 2);                    // missing --config
  CHECK(run_cli("no-such-subcommand") == 2);
  CHECK(run_cli("classify --config cli_tmp_does_not_exist.json") == 2);
  const std::string bad = write_temp("bad.json", "{\"family\": \"mystery\"}");
  CHECK(run_cli("classify --config " + bad) == 2);
}
