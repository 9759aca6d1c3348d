#pragma once

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "njlab/classify.hpp"
#include "njlab/families.hpp"
#include "njlab/fieldspec.hpp"
#include "njlab/flow.hpp"
#include "njlab/iterate.hpp"

namespace njl {

enum class ClaimStatus { Pass, Fail, Evidence };

inline const char* status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Evidence: return "evidence";
  }
  return "?";
}

struct ClaimResult {
  std::string id;
  ClaimStatus status = ClaimStatus::Fail;
  std::string details;
  double ms = 0;
};

struct VerifyReport {
  std::vector<ClaimResult> claims;
  std::uint64_t seed = 0;
  bool overall_pass() const {
    for (const auto& c : claims)
      if (c.status == ClaimStatus::Fail) return false;
    return true;
  }
  json to_json() const {
    json out;
    out["seed"] = seed;
    out["overall"] = overall_pass() ? "pass" : "fail";
    out["claims"] = json::array();
    for (const auto& c : claims)
      out["claims"].push_back({{"id", c.id},
                               {"status", status_name(c.status)},
                               {"details", c.details},
                               {"ms", c.ms}});
    return out;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 20240817;
  // debug hook: exact offset added to the trapping-region p0 (fault injection
  // for testing the certifier itself)
  Rational trap_p0_offset = 0;
};

namespace verify_detail {

inline std::vector<VectorXd> random_ball_seeds(std::mt19937_64& rng, int count,
                                               int dim, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<VectorXd> seeds;
  while (static_cast<int>(seeds.size()) < count) {
    VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x(i) = u(rng);
    if (x.norm() <= radius) seeds.push_back(x);
  }
  return seeds;
}

// The rotation-flow instance F = lambda I + g(z)(a x + b y)(-b, a, 0) with
// a = 1, b = z, g = 1.
inline PolyMap rotation_instance(const Rational& lambda) {
  MultiPoly b(1);
  b.add_term({1}, 1);
  MultiPoly f(2);  // f(z,t) = t
  f.add_term({0, 1}, 1);
  return make_ld_normal(
      {lambda, MultiPoly::constant(1, 1), b, MultiPoly(1), MultiPoly(1), f});
}

inline std::string rat3(const RatVec& v) {
  return "(" + to_string(v[0]) + ", " + to_string(v[1]) + ", " +
         to_string(v[2]) + ")";
}

// ---- individual claims ---------------------------------------------------

inline ClaimResult claim_nilpotency_family(const VerifyOptions&) {
  ClaimResult res{"nilpotency-family"};
  std::ostringstream d;
  struct Case {
    int n, r;
  };
  for (const Case& c : {Case{3, 2}, Case{4, 2}, Case{5, 2}, Case{4, 3}}) {
    PolyMap H = PolyMap::identity(1);
    if (c.r == 2) {
      H = make_hn2(c.n, 1, 1);
    } else {
      MultiPoly a(1);
      a.add_term({1}, 1);
      a.add_term({3}, 1);
      H = make_hnr({c.n, c.r, a});
    }
    const PolyMatrix JH = jacobian(H);
    if (!mat_pow(JH, static_cast<unsigned>(c.n)).is_zero()) {
      res.details = "JH not nilpotent for (n,r)=(" + std::to_string(c.n) +
                    "," + std::to_string(c.r) + ")";
      return res;
    }
    const int rk = rank_function_field(JH);
    if (rk != c.r) {
      res.details = "rank " + std::to_string(rk) + " != r for (n,r)=(" +
                    std::to_string(c.n) + "," + std::to_string(c.r) + ")";
      return res;
    }
    if (c.r == 2 && linear_dependence(H.components())) {
      res.details = "components unexpectedly dependent for n=" +
                    std::to_string(c.n);
      return res;
    }
    d << "(" << c.n << "," << c.r << ") ok; ";
  }
  res.status = ClaimStatus::Pass;
  res.details = d.str();
  return res;
}

inline ClaimResult claim_classification(const VerifyOptions&) {
  ClaimResult res{"classification"};
  const Rational lam(-1);
  const auto rep_y2 = classify_field(make_y2({lam, 1, {}}), lam);
  if (rep_y2.verdict != Verdict::N_ld ||
      !rep_y2.dependence_kernel_components ||
      *rep_y2.dependence_kernel_components != RatVec{0, 0, 1}) {
    res.details = "escape family did not classify as dependent with kernel (0,0,1)";
    return res;
  }
  const PolyMap F32 = PolyMap::scalar(3, lam) + make_hn2(3, 1, 1);
  const auto rep_f32 = classify_field(F32, lam);
  if (rep_f32.verdict != Verdict::N_li) {
    res.details = "rank-2 family did not classify as independent";
    return res;
  }
  MultiPoly f(2);
  f.add_term({0, 1}, 1);  // f = t
  const MultiPoly one = MultiPoly::constant(1, 1);
  MultiPoly bz(1);
  bz.add_term({1}, 1);  // b = z
  const MultiPoly b2 = MultiPoly::constant(1, 2);
  if (litri_test(one, bz, MultiPoly(1), MultiPoly(1), f)) {
    res.details = "litri_test true for independent a=1, b=z";
    return res;
  }
  if (!litri_test(one, b2, MultiPoly(1), MultiPoly(1), f)) {
    res.details = "litri_test false for dependent a=1, b=2";
    return res;
  }
  res.status = ClaimStatus::Pass;
  res.details = "verdicts and triangularizability tests as expected";
  return res;
}

inline ClaimResult claim_cy1_attraction(const VerifyOptions& opt) {
  ClaimResult res{"cy1-attraction"};
  const PolyMap F = rotation_instance(Rational(-1));
  std::mt19937_64 rng(opt.seed);
  const auto seeds = random_ball_seeds(rng, 20, 3, 10);
  for (const auto& s : seeds) {
    const OrbitTrace tr = integrate(F, s);
    if (tr.verdict != OrbitVerdict::ConvergesToOrigin) {
      std::ostringstream d;
      d << "verdict " << verdict_name(tr.verdict) << " from seed ("
        << s(0) << "," << s(1) << "," << s(2) << ")";
      res.details = d.str();
      return res;
    }
  }
  res.status = ClaimStatus::Evidence;
  res.details = "20/20 seeded orbits converge to the origin";
  return res;
}

inline ClaimResult claim_dy1_attraction(const VerifyOptions& opt) {
  ClaimResult res{"dy1-attraction"};
  const PolyMap F = rotation_instance(Rational(1, 2));
  std::mt19937_64 rng(opt.seed + 1);
  const auto seeds = random_ball_seeds(rng, 20, 3, 10);
  for (const auto& s : seeds) {
    const DiscreteTrace tr = iterate_map(F, s, 10000);
    const double final_norm = tr.states.back().lpNorm<Eigen::Infinity>();
    if (tr.verdict != OrbitVerdict::ConvergesToOrigin || final_norm >= 1e-8) {
      res.details = std::string("verdict ") + verdict_name(tr.verdict) +
                    ", final norm " + std::to_string(final_norm);
      return res;
    }
  }
  MultiPoly bz(1);
  bz.add_term({1}, 1);
  const CocycleReport cc = cocycle_contraction(
      Rational(1, 2), MultiPoly::constant(1, 1), bz, MultiPoly::constant(1, 1));
  if (!(cc.K < 1) || !(cc.z0_bound > 0)) {
    res.details = "cocycle bound K=" + std::to_string(cc.K) +
                  ", z0_bound=" + std::to_string(cc.z0_bound);
    return res;
  }
  res.status = ClaimStatus::Evidence;
  std::ostringstream d;
  d << "20/20 discrete orbits converge; cocycle N=" << cc.N << ", K=" << cc.K
    << ", z0_bound=" << cc.z0_bound;
  res.details = d.str();
  return res;
}

inline ClaimResult claim_y2_continuous_escape(const VerifyOptions&) {
  ClaimResult res{"y2-continuous-escape"};
  const PolyMap F = make_y2({Rational(-1), 1, {}});
  const ExpPolyOrbit orbit = y2_escape_orbit(Rational(-1), 1, Rational(1));
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i) times.push_back(5.0 * i / 100);
  const double resid = residual_expporbit(F, orbit, times);
  if (!(resid < 1e-9)) {
    res.details = "closed-form residual " + std::to_string(resid);
    return res;
  }
  VectorXd x0(3);
  x0 << orbit.value(0, 0), orbit.value(1, 0), orbit.value(2, 0);
  const OrbitTrace tr = integrate(F, x0);
  if (tr.verdict != OrbitVerdict::Escapes) {
    res.details = std::string("integration verdict ") + verdict_name(tr.verdict);
    return res;
  }
  res.status = ClaimStatus::Evidence;
  std::ostringstream d;
  d << "residual " << resid << " on [0,5]; orbit from (" << x0(0) << ","
    << x0(1) << "," << x0(2) << ") escapes";
  res.details = d.str();
  return res;
}

inline ClaimResult claim_y2_discrete_escape(const VerifyOptions&) {
  ClaimResult res{"y2-discrete-escape"};
  const Y2DiscreteOrbit orbit =
      y2_discrete_orbit(Rational(1, 2), 1, Rational(1), 64);
  if (orbit.u0 != Rational(-21, 8)) {
    res.details = "u0 = " + to_string(orbit.u0) + " != -21/8";
    return res;
  }
  if (!orbit.verified) {
    res.details = "stepwise exact orbit verification failed";
    return res;
  }
  res.status = ClaimStatus::Pass;
  res.details = "u0 = -21/8; F(p_n) = p_{n+1} exactly for n <= 64";
  return res;
}

inline ClaimResult claim_liorsc_trap(const VerifyOptions& opt) {
  ClaimResult res{"liorsc-trap"};
  const Rational lam(-1);
  TrappingRegion reg = TrappingRegion::standard(lam);
  reg.p0 += opt.trap_p0_offset;
  if (reg.A != -2 || reg.s0 != Rational(-1, 512) ||
      TrappingRegion::standard(lam).p0 != Rational(1, 8) ||
      reg.q0 != Rational(11, 16)) {
    res.details = "region constants differ from the closed forms";
    return res;
  }
  const TrappingReport rep = verify_trapping(trap_w_field(lam), reg, 64);
  if (!rep.certified()) {
    std::ostringstream d;
    d << rep.violations.size() << " violation(s)";
    if (!rep.violations.empty())
      d << "; first: condition " << rep.violations[0].condition << " at "
        << rat3(rep.violations[0].point) << " value "
        << to_string(rep.violations[0].value);
    if (!rep.corner1_zero) d << "; corner combination " << to_string(rep.corner1);
    if (!rep.corner2_positive) d << "; corner bound " << to_string(rep.corner2);
    res.details = d.str();
    return res;
  }
  if (rep.corner2 != Rational(1, 4096)) {
    res.details = "corner bound " + to_string(rep.corner2) + " != 1/4096";
    return res;
  }
  res.status = ClaimStatus::Pass;
  res.details = "zero violations on 64-point faces; corner identities exact";
  return res;
}

inline ClaimResult claim_liorsc_conjugation(const VerifyOptions&) {
  ClaimResult res{"liorsc-conjugation"};
  for (const Rational& lam : {Rational(-1), Rational(-1, 2)}) {
    const Rational a = 1, b = 2;
    const PolyMap X = PolyMap::scalar(3, lam) + make_hn2(3, a, b);
    const PolyMap pushed = conjugate_polynomial(X, liorsc_phi(lam, a, b));
    if (!(pushed == liorsc_y_field(lam))) {
      res.details = "pushforward mismatch at lambda = " + to_string(lam);
      return res;
    }
    const PolyMap W = chart_transform(liorsc_y_field(lam), trap_chart());
    if (!(W == trap_w_field(lam))) {
      res.details = "projective chart mismatch at lambda = " + to_string(lam);
      return res;
    }
  }
  res.status = ClaimStatus::Pass;
  res.details = "symbolic field equalities hold at lambda = -1, -1/2";
  return res;
}

inline ClaimResult claim_teo1li_blowup(const VerifyOptions&) {
  ClaimResult res{"teo1li-blowup"};
  struct Case {
    Rational lambda, beta, A1, A2;
  };
  for (const Case& c : {Case{Rational(-1), 1, 1, 1},
                        Case{Rational(-1, 2), -1, 2, 1},
                        Case{Rational(-2), 3, Rational(1, 2), Rational(5, 3)}}) {
    const PolyMap X = teo1li_field(c.lambda, c.beta, c.A1, c.A2);
    const PolyMap Z1 = chart_transform(X, blowup_chart());
    if (!(Z1 == z1_closed_form(c.lambda, c.beta, c.A1, c.A2))) {
      res.details = "blow-up field differs from the closed form at lambda = " +
                    to_string(c.lambda);
      return res;
    }
  }
  for (const Rational& beta : {Rational(1), Rational(-1)}) {
    const SingularityReport rep =
        teo1li_singularities(Rational(-1), beta, Rational(1), Rational(1));
    std::vector<double> expected = {to_double(-beta / 5),
                                    to_double(-4 * beta / 5),
                                    to_double(-2 * beta)};
    std::sort(expected.begin(), expected.end());
    const auto& got = rep.third_point_eigen.eigenvalues;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(got[i].imag()) > 1e-10 ||
          std::abs(got[i].real() - expected[i]) > 1e-10) {
        res.details = "eigenvalues differ from the closed set for beta = " +
                      to_string(beta);
        return res;
      }
    }
  }
  res.status = ClaimStatus::Pass;
  res.details =
      "blow-up chain matches the closed form; singular points and spectrum exact";
  return res;
}

inline ClaimResult claim_period3_exact(const VerifyOptions&) {
  ClaimResult res{"period3-exact"};
  for (const Rational& lam :
       {Rational(1, 2), Rational(-1, 2), Rational(1, 4)}) {
    const Period3Witness w = period3_exact(lam, 1, 1, 0, 1);
    if (w.charpoly[0] != -rat_pow(lam, 9)) {
      res.details = "constant term mismatch at lambda = " + to_string(lam);
      return res;
    }
    charpoly_df3(w);  // throws on coefficient mismatch
    if (lam == Rational(1, 2) && w.p_at_1 != Rational(-1029, 512)) {
      res.details = "p(1) = " + to_string(w.p_at_1) + " != -1029/512";
      return res;
    }
    MatrixXd M(3, 3);
    {
      const PolyMap F = make_linf(w.params());
      const MapEval f(F);
      VectorXd x(3);
      x << to_double(w.x0), to_double(w.y0), to_double(w.z0);
      M = detail::chain_multiplier(f, x, 3);
    }
    for (const auto& mu : eigenvalues(M).eigenvalues)
      if (std::abs(mu - std::complex<double>(1, 0)) <= 1e-6) {
        res.details = "multiplier too close to 1 at lambda = " + to_string(lam);
        return res;
      }
  }
  res.status = ClaimStatus::Pass;
  res.details =
      "F^3 fixes the closed-form point exactly for lambda in {1/2, -1/2, 1/4}; "
      "charpoly and p(1) identities exact";
  return res;
}

inline ClaimResult claim_period2_absence(const VerifyOptions& opt) {
  ClaimResult res{"period2-absence"};
  MultiPoly g(1);
  g.add_term({1}, 1);
  const PolyMap F = make_linf({Rational(1, 2), 1, 1, 0, g});
  std::mt19937_64 rng(opt.seed + 2);
  const auto seeds = random_ball_seeds(rng, 500, 3, 50);
  const auto orbits = find_periodic(F, 2, seeds);
  for (const auto& orb : orbits)
    if (orb.points[0].lpNorm<Eigen::Infinity>() > 1e-6) {
      std::ostringstream d;
      d << "nonzero period-2 candidate at (" << orb.points[0](0) << ","
        << orb.points[0](1) << "," << orb.points[0](2) << ")";
      res.details = d.str();
      return res;
    }
  res.status = ClaimStatus::Evidence;
  res.details = "500-seed search found only the origin (" +
                std::to_string(orbits.size()) + " converged orbit(s))";
  return res;
}

inline ClaimResult claim_teo39_continuation(const VerifyOptions&) {
  ClaimResult res{"teo39-continuation"};
  const Period3Witness base = period3_exact(Rational(1, 2), 1, 1, 0, 1);
  const ContinuationResult cr = continuation(base, {0.01});
  if (!cr.success || !(cr.orbit.residual < 1e-10) || !cr.orbit.minimal ||
      cr.orbit.period != 3) {
    std::ostringstream d;
    d << "success=" << cr.success << " residual=" << cr.orbit.residual
      << " minimal=" << cr.orbit.minimal << " reached s=" << cr.last_good_s;
    res.details = d.str();
    return res;
  }
  res.status = ClaimStatus::Evidence;
  std::ostringstream d;
  d << "homotopy reached the target; residual " << cr.orbit.residual;
  res.details = d.str();
  return res;
}

inline ClaimResult claim_liorsc_lift(const VerifyOptions&) {
  ClaimResult res{"liorsc-lift"};
  const Rational lam(1, 2), a = 1, b = 1;
  // F_{3,2} with these a,b equals the one-variable-g family with
  // g(t)=t, b1=-a, beta=-b, v1=1; its exact 3-periodic point seeds the lift.
  const Period3Witness w = period3_exact(lam, 1, -b, -a, 1);
  MultiPoly ap(1);
  ap.add_term({1}, a);
  ap.add_term({2}, b);
  const PolyMap F4 = PolyMap::scalar(4, lam) + make_hnr({4, 2, ap});
  const MapEval f4(F4);
  VectorXd seed(4);
  seed << to_double(w.x0), to_double(w.y0), to_double(w.z0), 0;
  VectorXd y = seed;
  for (int i = 0; i < 3; ++i) y = f4(y);
  const double lam3 = to_double(rat_pow(lam, 3));
  seed(3) = y(3) / (1 - lam3);
  const auto orbits = find_periodic(F4, 3, {seed});
  if (orbits.empty() || !(orbits[0].residual < 1e-10) || !orbits[0].minimal) {
    res.details = orbits.empty() ? "search did not converge"
                                 : "residual " + std::to_string(orbits[0].residual);
    return res;
  }
  // the lifted point projects onto the three-variable cycle
  VectorXd p3(3);
  p3 << to_double(w.x0), to_double(w.y0), to_double(w.z0);
  if ((orbits[0].points[0].head(3) - p3).lpNorm<Eigen::Infinity>() > 1e-8) {
    res.details = "lifted orbit does not project onto the base cycle";
    return res;
  }
  res.status = ClaimStatus::Pass;
  res.details = "four-variable lift is 3-periodic with residual " +
                std::to_string(orbits[0].residual);
  return res;
}

inline ClaimResult claim_property_suites(const VerifyOptions& opt) {
  ClaimResult res{"property-suites"};
  std::mt19937_64 rng(opt.seed + 3);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 5), expo(0, 3);
  auto random_poly = [&](int nvars) {
    MultiPoly p(nvars);
    for (int t = 0; t < 6; ++t) {
      MultiPoly::Exps e(nvars);
      for (int i = 0; i < nvars; ++i) e[i] = expo(rng);
      p.add_term(std::move(e), Rational(num(rng), den(rng)));
    }
    return p;
  };
  // ring axioms + Leibniz + substitution/evaluation compatibility
  for (int trial = 0; trial < 25; ++trial) {
    const MultiPoly p = random_poly(3), q = random_poly(3), r = random_poly(3);
    if (!(p * (q + r) == p * q + p * r) || !(p * q == q * p) ||
        !((p + q) + r == p + (q + r))) {
      res.details = "ring axiom violated";
      return res;
    }
    const MultiPoly dpq = differentiate(p * q, trial % 3);
    if (!(dpq == differentiate(p, trial % 3) * q +
                     p * differentiate(q, trial % 3))) {
      res.details = "product rule violated";
      return res;
    }
    const RatVec x{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                   Rational(num(rng), den(rng))};
    const std::vector<MultiPoly> repl{q, r, p};
    if (evaluate(substitute(p, repl), x) !=
        evaluate(p, RatVec{evaluate(q, x), evaluate(r, x), evaluate(p, x)})) {
      res.details = "substitution/evaluation mismatch";
      return res;
    }
  }
  // conjugation round-trip
  {
    const RatMat T{{1, 2, 0}, {0, 1, 0}, {3, 0, 1}};
    const PolyMap F = make_y2({Rational(-1), 1, {}});
    const PolyMap back =
        conjugate_linear(conjugate_linear(F, T), *rat_inverse(T));
    if (!(back == F)) {
      res.details = "linear conjugation round-trip failed";
      return res;
    }
  }
  // integrator order: errors under 32x tighter tolerances shrink ~32x
  {
    const PolyMap F = PolyMap::scalar(3, Rational(-1));
    VectorXd x0(3);
    x0 << 1, 1, 1;
    auto err_at = [&](double rel) {
      SimConfig cfg;
      cfg.rel_tol = rel;
      cfg.abs_tol = rel * 1e-3;
      cfg.t_max = 1;
      cfg.converge_radius = 0;  // run to t_max
      const OrbitTrace tr = integrate(F, x0, cfg);
      return std::abs(tr.states.back()(0) - std::exp(-1.0));
    };
    const double e1 = err_at(1e-6), e2 = err_at(1e-6 / 32);
    if (!(e2 < e1) || e1 / e2 < 8) {
      res.details = "integrator error did not scale with tolerance (ratio " +
                    std::to_string(e1 / e2) + ")";
      return res;
    }
  }
  // Newton quadratic decay on the period-3 instance
  {
    const Period3Witness w = period3_exact(Rational(1, 2), 1, 1, 0, 1);
    const MapEval f(make_linf(w.params()));
    auto G = [&f](const VectorXd& p) { return VectorXd(f(f(f(p))) - p); };
    auto JG = [&f](const VectorXd& p) {
      return MatrixXd(detail::chain_multiplier(f, p, 3) -
                      MatrixXd::Identity(3, 3));
    };
    VectorXd seed(3);
    seed << to_double(w.x0) + 1e-3, to_double(w.y0) - 1e-3,
        to_double(w.z0) + 1e-3;
    // cycle coordinates are O(1e3), so the achievable absolute residual is
    // bounded below by the rounding of the point itself
    const NewtonResult nr = newton_solve(G, JG, seed, 1e-9);
    if (!nr.converged) {
      res.details = "Newton failed near the exact 3-periodic point";
      return res;
    }
    bool quadratic = true;
    for (std::size_t i = 0; i + 1 < nr.residual_history.size(); ++i) {
      const double r0 = nr.residual_history[i], r1 = nr.residual_history[i + 1];
      if (r0 < 1e-4 && r1 > 1e-13 && r1 > 1e3 * r0 * r0) quadratic = false;
    }
    if (!quadratic) {
      res.details = "residual decay was not quadratic";
      return res;
    }
    // finite differences vs chain rule; entries reach O(1e4), so the
    // comparison is relative to the Jacobian's own scale
    const MatrixXd Jfd = fd_jacobian(G, nr.point, 1e-6);
    const MatrixXd Jcr = JG(nr.point);
    if ((Jfd - Jcr).lpNorm<Eigen::Infinity>() >
        1e-6 * std::max(1.0, Jcr.lpNorm<Eigen::Infinity>())) {
      res.details = "finite-difference Jacobian disagrees with the chain rule";
      return res;
    }
  }
  res.status = ClaimStatus::Pass;
  res.details = "ring, calculus, conjugation, integrator, and Newton properties hold";
  return res;
}

}  // namespace verify_detail

inline const std::vector<std::string>& all_claim_ids() {
  static const std::vector<std::string> ids = {
      "nilpotency-family", "classification",     "cy1-attraction",
      "dy1-attraction",    "y2-continuous-escape", "y2-discrete-escape",
      "liorsc-trap",       "liorsc-conjugation", "teo1li-blowup",
      "period3-exact",     "period2-absence",    "teo39-continuation",
      "liorsc-lift",       "property-suites"};
  return ids;
}

inline VerifyReport run_verify_suite(const std::vector<std::string>& scope = {},
                                     const VerifyOptions& opt = {}) {
  using Fn = ClaimResult (*)(const VerifyOptions&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"nilpotency-family", &verify_detail::claim_nilpotency_family},
      {"classification", &verify_detail::claim_classification},
      {"cy1-attraction", &verify_detail::claim_cy1_attraction},
      {"dy1-attraction", &verify_detail::claim_dy1_attraction},
      {"y2-continuous-escape", &verify_detail::claim_y2_continuous_escape},
      {"y2-discrete-escape", &verify_detail::claim_y2_discrete_escape},
      {"liorsc-trap", &verify_detail::claim_liorsc_trap},
      {"liorsc-conjugation", &verify_detail::claim_liorsc_conjugation},
      {"teo1li-blowup", &verify_detail::claim_teo1li_blowup},
      {"period3-exact", &verify_detail::claim_period3_exact},
      {"period2-absence", &verify_detail::claim_period2_absence},
      {"teo39-continuation", &verify_detail::claim_teo39_continuation},
      {"liorsc-lift", &verify_detail::claim_liorsc_lift},
      {"property-suites", &verify_detail::claim_property_suites}};
  VerifyReport report;
  report.seed = opt.seed;
  for (const auto& [id, fn] : table) {
    if (!scope.empty() &&
        std::find(scope.begin(), scope.end(), id) == scope.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    ClaimResult cr;
    try {
      cr = fn(opt);
    } catch (const std::exception& e) {
      cr.id = id;
      cr.status = ClaimStatus::Fail;
      cr.details = std::string("exception: ") + e.what();
    }
    cr.ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start)
                .count();
    report.claims.push_back(std::move(cr));
  }
  return report;
}

}  // namespace njl
