// Command-line front end: classify fields, run continuous/discrete dynamics,
// search for periodic orbits, transform through charts, and execute the
// verification suite.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "njlab/classify.hpp"
#include "njlab/fieldspec.hpp"
#include "njlab/verify.hpp"

namespace {

using namespace njl;

constexpr int kExitOk = 0;
constexpr int kExitClaimFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FieldSpec load_spec(const std::string& config_path) {
  if (config_path.empty())
    throw SpecError("a field description is required", "--config");
  return parse_field_spec(slurp(config_path));
}

std::vector<double> parse_point(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

RatVec parse_point_exact(const std::string& csv) {
  RatVec out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

void write_out(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << payload;
}

json polymap_json(const PolyMap& F) {
  json comps = json::array();
  for (int i = 0; i < F.size(); ++i) comps.push_back(F[i].str());
  return comps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic-numeric laboratory for nilpotent-Jacobian fields"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  std::string config, out_path, format = "json", x0_str = "1,1,1";
  std::uint64_t seed = 20240817;
  double tmax = 200, escape_radius = 1e6, tol = 1e-12;
  app.add_option("--config", config, "field description (JSON file)");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tmax", tmax, "integration horizon");
  app.add_option("--escape-radius", escape_radius, "escape threshold");
  app.add_option("--tol", tol, "numerical tolerance");

  auto* cmd_classify = app.add_subcommand("classify", "classify a field");

  auto* cmd_simulate = app.add_subcommand("simulate", "integrate an orbit");
  cmd_simulate->add_option("--x0", x0_str, "initial point, comma separated");

  int nmax = 1000;
  bool exact = false;
  auto* cmd_iterate = app.add_subcommand("iterate", "iterate the map");
  cmd_iterate->add_option("--x0", x0_str, "initial point, comma separated");
  cmd_iterate->add_option("--nmax", nmax, "iteration budget");
  cmd_iterate->add_flag("--exact", exact, "exact rational iteration");

  int period = 3, nseeds = 100;
  double radius = 50;
  auto* cmd_find = app.add_subcommand("find-periodic", "search periodic orbits");
  cmd_find->add_option("--period", period, "cycle length");
  cmd_find->add_option("--seeds", nseeds, "number of random starts");
  cmd_find->add_option("--radius", radius, "seeding ball radius");

  std::string chart_name = "infinity";
  auto* cmd_transform = app.add_subcommand("transform", "push through a chart");
  cmd_transform->add_option("--chart", chart_name, "infinity|blowup|trap")
      ->check(CLI::IsMember({"infinity", "blowup", "trap"}));

  std::vector<std::string> scope;
  auto* cmd_verify = app.add_subcommand("verify", "run the claim suite");
  cmd_verify->add_option("--scope", scope, "claim ids (default: all)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    SimConfig cfg;
    cfg.t_max = tmax;
    cfg.escape_radius = escape_radius;

    if (cmd_classify->parsed()) {
      const FieldSpec spec = load_spec(config);
      const ClassificationReport rep = classify_field(spec.field, spec.lambda);
      json out = {
          {"lambda", to_string(rep.lambda)},
          {"n", rep.n},
          {"nilpotent", rep.is_nilpotent},
          {"fixes_origin", rep.fixes_origin},
          {"rank", rep.rank_JH},
          {"verdict", rep.verdict == Verdict::N_ld   ? "dependent"
                      : rep.verdict == Verdict::N_li ? "independent"
                                                     : "not-nilpotent"},
          {"negative_lambda", rep.myc_hypothesis},
          {"contractive_lambda", rep.dmyc_hypothesis},
          {"field", polymap_json(spec.field)}};
      if (rep.dependence_kernel_components) {
        json k = json::array();
        for (const auto& v : *rep.dependence_kernel_components)
          k.push_back(to_string(v));
        out["dependence_kernel"] = k;
      }
      write_out(out_path, out.dump(2) + "\n");
      return kExitOk;
    }

    if (cmd_simulate->parsed()) {
      const FieldSpec spec = load_spec(config);
      const OrbitTrace tr =
          integrate(spec.field, to_eigen(parse_point(x0_str)), cfg);
      std::ostringstream payload;
      if (format == "csv")
        emit_trace_csv(tr, payload);
      else
        payload << trace_json(tr, cfg).dump(2) << "\n";
      write_out(out_path, payload.str());
      return kExitOk;
    }

    if (cmd_iterate->parsed()) {
      const FieldSpec spec = load_spec(config);
      DiscreteTrace tr;
      if (exact)
        tr = iterate_map(spec.field, parse_point_exact(x0_str), nmax, cfg);
      else
        tr = iterate_map(spec.field, to_eigen(parse_point(x0_str)), nmax, cfg);
      std::ostringstream payload;
      if (format == "csv")
        emit_trace_csv(tr, payload);
      else
        payload << trace_json(tr, cfg).dump(2) << "\n";
      write_out(out_path, payload.str());
      return kExitOk;
    }

    if (cmd_find->parsed()) {
      const FieldSpec spec = load_spec(config);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-radius, radius);
      std::vector<VectorXd> seeds;
      while (static_cast<int>(seeds.size()) < nseeds) {
        VectorXd x(spec.field.size());
        for (int i = 0; i < spec.field.size(); ++i) x(i) = u(rng);
        if (x.norm() <= radius) seeds.push_back(x);
      }
      const auto orbits = find_periodic(spec.field, period, seeds, tol);
      json out = {{"period", period},
                  {"seed", seed},
                  {"seeds", nseeds},
                  {"orbits", json::array()}};
      for (const auto& orb : orbits) {
        json points = json::array();
        for (const auto& p : orb.points) {
          json row = json::array();
          for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p(i));
          points.push_back(std::move(row));
        }
        json mus = json::array();
        for (const auto& mu : orb.multiplier_eigen.eigenvalues)
          mus.push_back({mu.real(), mu.imag()});
        out["orbits"].push_back({{"points", points},
                                 {"residual", orb.residual},
                                 {"minimal", orb.minimal},
                                 {"multipliers", mus}});
      }
      write_out(out_path, out.dump(2) + "\n");
      return kExitOk;
    }

    if (cmd_transform->parsed()) {
      const FieldSpec spec = load_spec(config);
      const ChartSpec chart = chart_name == "infinity" ? infinity_chart()
                              : chart_name == "blowup" ? blowup_chart()
                                                       : trap_chart();
      const ClearedTransform pushed = chart_transform_cleared(spec.field, chart);
      json out = {{"chart", chart_name},
                  {"orientation", chart.orientation_note},
                  {"extra_factor", pushed.extra.str()},
                  {"field", polymap_json(pushed.field)}};
      write_out(out_path, out.dump(2) + "\n");
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      const auto& ids = all_claim_ids();
      for (const auto& s : scope)
        if (std::find(ids.begin(), ids.end(), s) == ids.end())
          throw SpecError("unknown claim id", s);
      VerifyOptions opt;
      opt.seed = seed;
      const VerifyReport rep = run_verify_suite(scope, opt);
      write_out(out_path, rep.to_json().dump(2) + "\n");
      return rep.overall_pass() ? kExitOk : kExitClaimFail;
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
