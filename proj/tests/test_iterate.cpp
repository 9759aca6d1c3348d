#include <doctest.h>

#include <random>

#include "njlab/iterate.hpp"

using namespace njl;

namespace {

MultiPoly t_poly(const Rational& A) {
  MultiPoly g(1);
  g.add_term({1}, A);
  return g;
}

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("iteration of the linear contraction converges") {
  const PolyMap F = PolyMap::scalar(3, Rational(1, 2));
  const DiscreteTrace tr = iterate_map(F, vec3(1, 1, 1), 1000);
  CHECK(tr.verdict == OrbitVerdict::ConvergesToOrigin);
}

TEST_CASE("exact iteration matches the float mirror and can degrade") {
  const PolyMap F = PolyMap::scalar(3, Rational(1, 2));
  const DiscreteTrace tr = iterate_map(F, RatVec{1, 1, 1}, 100);
  CHECK(!tr.degraded_to_float);
  CHECK(tr.exact_states.size() == tr.states.size());
  for (std::size_t i = 0; i < tr.exact_states.size(); ++i)
    CHECK(tr.exact_states[i][0] == Rational(1, mpz_class(1) << i));

  // quadratic map with a fraction seed swells denominators doubly
  // exponentially and must fall back to floats
  const MultiPoly x = MultiPoly::variable(1, 0);
  const PolyMap Q({Rational(1, 2) * x * x});
  SimConfig cfg;
  cfg.converge_dwell = 1 << 30;  // keep iterating
  const DiscreteTrace swell = iterate_map(Q, RatVec{Rational(1, 3)}, 60, cfg);
  CHECK(swell.degraded_to_float);
  CHECK(swell.exact_states.size() < swell.states.size());
}

TEST_CASE("rotation-rate map iterates converge for the contractive rate") {
  MultiPoly b(1);
  b.add_term({1}, 1);
  MultiPoly f(2);
  f.add_term({0, 1}, 1);
  const PolyMap F = make_ld_normal({Rational(1, 2), MultiPoly::constant(1, 1),
                                    b, MultiPoly(1), MultiPoly(1), f});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int s = 0; s < 20; ++s) {
    const DiscreteTrace tr = iterate_map(F, vec3(u(rng), u(rng), u(rng)), 10000);
    CHECK(tr.verdict == OrbitVerdict::ConvergesToOrigin);
    CHECK(tr.states.back().lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("exact discrete escaping orbit") {
  const Y2DiscreteOrbit orbit =
      y2_discrete_orbit(Rational(1, 2), 1, Rational(1), 64);
  CHECK(orbit.u0 == Rational(-21, 8));
  CHECK(orbit.verified);
  // x_n doubles each step: x_n = (7/4)(-21/8) 2^n / z0
  const Rational c = Rational(7, 4) * Rational(-21, 8);
  for (int n = 0; n <= 64; ++n)
    CHECK(orbit.points[n][0] == c * rat_pow_int(Rational(2), n));
  // the float classifier agrees: this orbit escapes
  const PolyMap F = make_y2({Rational(1, 2), 1, {}});
  VectorXd x0(3);
  for (int i = 0; i < 3; ++i) x0(i) = to_double(orbit.points[0][i]);
  CHECK(iterate_map(F, x0, 200).verdict == OrbitVerdict::Escapes);
  CHECK_THROWS(y2_discrete_orbit(Rational(1, 3), 2, Rational(1), 4));
}

TEST_CASE("fixed points are found with minimal flag") {
  const PolyMap F = make_linf({Rational(1, 2), 1, 1, 0, t_poly(1)});
  const auto orbits = find_periodic(F, 1, {vec3(0.3, -0.2, 0.1)});
  REQUIRE(orbits.size() == 1);
  CHECK(orbits[0].minimal);
  CHECK(orbits[0].points[0].lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("period search finds the exact cycle and never a fake minimal") {
  const Period3Witness w = period3_exact(Rational(1, 2), 1, 1, 0, 1);
  const PolyMap F = make_linf(w.params());
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<VectorXd> seeds;
  const VectorXd center =
      vec3(to_double(w.x0), to_double(w.y0), to_double(w.z0));
  for (int s = 0; s < 200; ++s) {
    VectorXd x = center;
    for (int i = 0; i < 3; ++i) x(i) += u(rng) * 5;
    seeds.push_back(x);
  }
  const auto orbits = find_periodic(F, 3, seeds, 1e-12);
  bool found = false;
  for (const auto& orb : orbits) {
    const bool is_origin = orb.points[0].lpNorm<Eigen::Infinity>() < 1e-9;
    if (is_origin) CHECK(!orb.minimal);  // origin is a fixed point, not 3-cycle
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : orb.points)
      best = std::min(best, (p - center).lpNorm<Eigen::Infinity>());
    if (best < 1e-6) {
      found = true;
      CHECK(orb.minimal);
      CHECK(orb.residual < 1e-9);
      // chain-rule multiplier agrees with finite differences of F^3
      const MapEval f(F);
      auto G3 = [&f](const VectorXd& p) { return VectorXd(f(f(f(p)))); };
      const MatrixXd Jfd = fd_jacobian(G3, orb.points[0], 1e-6);
      const MatrixXd Jcr = detail::chain_multiplier(f, orb.points[0], 3);
      // entries reach O(1e4), so compare up to the Jacobian's own scale
      CHECK((Jfd - Jcr).lpNorm<Eigen::Infinity>() <
            1e-6 * std::max(1.0, Jcr.lpNorm<Eigen::Infinity>()));
    }
  }
  CHECK(found);
}

TEST_CASE("exact three-cycle witness") {
  const Period3Witness w = period3_exact(Rational(1, 2), 1, 1, 0, 1);
  CHECK(w.x0 == Rational(231, 8));
  CHECK(w.p_at_1 == Rational(-1029, 512));
  CHECK(w.charpoly[0] == -rat_pow(Rational(1, 2), 9));
  CHECK(w.charpoly[3] == 1);
  // the displayed cycle conditions vanish at the witness
  CHECK(w.d1 == 0);
  CHECK(w.d2 == 0);
  CHECK(w.d3 == 0);
  // the numerator of the x0 closed form at lambda=1/2 is (7/4)(33/16)
  CHECK(Rational(7, 4) * Rational(33, 16) == Rational(231, 64));
  // cycle points are distinct (minimal period three)
  CHECK(w.cycle[0] != w.cycle[1]);
  CHECK(w.cycle[1] != w.cycle[2]);
  const CharpolyCheck chk = charpoly_df3(w);
  CHECK(chk.match);
  CHECK(chk.p1_from_coeffs == w.p_at_1);
}

TEST_CASE("exact witness across parameter instances") {
  for (const Rational& lam : {Rational(-1, 2), Rational(1, 4), Rational(0)}) {
    const Period3Witness w = period3_exact(lam, 1, 1, 0, 1);
    CHECK(w.p_at_1 ==
          3 * rat_pow(lam - 1, 3) * rat_pow(1 + lam + lam * lam, 3));
    CHECK_NOTHROW(charpoly_df3(w));
  }
  // lambda=0 closed form: x0 = 1/(A beta)
  CHECK(period3_exact(0, 2, 3, 0, 1).x0 == Rational(1, 6));
  // parameter variations still produce exact cycles
  CHECK_NOTHROW(period3_exact(Rational(1, 2), 2, Rational(-1), Rational(3), 2));
  CHECK_THROWS(period3_exact(Rational(3, 2), 1, 1, 0, 1));
  CHECK_THROWS(period3_exact(Rational(1, 2), 0, 1, 0, 1));
}

TEST_CASE("multipliers stay away from one") {
  const Period3Witness w = period3_exact(Rational(1, 2), 1, 1, 0, 1);
  const MapEval f(make_linf(w.params()));
  const MatrixXd M = detail::chain_multiplier(
      f, vec3(to_double(w.x0), to_double(w.y0), to_double(w.z0)), 3);
  for (const auto& mu : eigenvalues(M).eigenvalues)
    CHECK(std::abs(mu - std::complex<double>(1, 0)) > 1e-6);
}

TEST_CASE("two-cycle conditions") {
  MultiPoly g = t_poly(1);
  const LinfParams p{Rational(1, 2), 1, 1, 0, g};
  const auto at_origin = period2_conditions(p, {0, 0, 0});
  CHECK(at_origin.all_zero());

  // substituting the first-condition solution (y0, z0) leaves the remaining
  // two conditions as nonzero multiples of x0, so the origin is the only
  // two-cycle: C2 = (1+lambda)(lambda-1)^3 x0 / v1 and C3 = (lambda-1)^3 x0
  for (const Rational& lam : {Rational(1, 2), Rational(-1, 3), Rational(2, 5)}) {
    for (const Rational& x0 : {Rational(1), Rational(-7, 3), Rational(4)}) {
      const Rational b1 = 0, v1 = 1, beta = 1;
      const LinfParams q{lam, v1, beta / v1, b1, g};
      const Rational y0 = (1 - lam - b1) * x0 - beta * x0 * x0;
      const Rational t0 = y0 + b1 * x0 + beta * x0 * x0;
      const Rational z0 =
          ((lam * beta * x0 + 1 - lam * lam) * x0 -
           2 * (lam - beta * x0) * t0 - beta * rat_pow(lam * x0 + t0, 2)) / v1;
      const auto r = period2_conditions(q, {x0, y0, z0});
      CHECK(r.c1 == 0);
      CHECK(r.c2 == (1 + lam) * rat_pow(lam - 1, 3) * x0 / v1);
      CHECK(r.c3 == rat_pow(lam - 1, 3) * x0);
    }
  }
  // a generic point violates at least one condition
  const auto bad = period2_conditions(p, {1, 1, 1});
  CHECK(!bad.all_zero());
}

TEST_CASE("two-cycle search returns only the origin for the linear g") {
  const PolyMap F = make_linf({Rational(1, 2), 1, 1, 0, t_poly(1)});
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-50, 50);
  std::vector<VectorXd> seeds;
  while (static_cast<int>(seeds.size()) < 500) {
    const VectorXd x = vec3(u(rng), u(rng), u(rng));
    if (x.norm() <= 50) seeds.push_back(x);
  }
  const auto orbits = find_periodic(F, 2, seeds);
  for (const auto& orb : orbits)
    CHECK(orb.points[0].lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("continuation to higher-degree perturbations") {
  const Period3Witness base = period3_exact(Rational(1, 2), 1, 1, 0, 1);
  SUBCASE("zero perturbation keeps the base point") {
    const ContinuationResult cr = continuation(base, {0.0});
    REQUIRE(cr.success);
    CHECK(cr.scale == 1);
    CHECK((cr.orbit.points[0] -
           vec3(to_double(base.x0), to_double(base.y0), to_double(base.z0)))
              .lpNorm<Eigen::Infinity>() < 1e-8);
  }
  SUBCASE("small quadratic term") {
    const ContinuationResult cr = continuation(base, {0.01});
    REQUIRE(cr.success);
    CHECK(cr.orbit.residual < 1e-10);
    CHECK(cr.orbit.minimal);
    CHECK(cr.orbit.period == 3);
  }
  SUBCASE("large quadratic term engages the scaling conjugation") {
    const ContinuationResult cr = continuation(base, {0.3});
    REQUIRE(cr.success);
    CHECK(cr.scale < 1);
    CHECK(cr.orbit.residual < 1e-10);
    // the returned orbit is verified in the original coordinates: iterate
    // the unscaled map three times around the cycle
    const PolyMap F = [&] {
      MultiPoly g = t_poly(1);
      g.add_term({2}, Rational(0.3));
      return make_linf({base.lambda, base.v1, base.beta / base.v1, base.b1, g});
    }();
    const MapEval f(F);
    const VectorXd p0 = cr.orbit.points[0];
    CHECK((f(f(f(p0))) - p0).lpNorm<Eigen::Infinity>() <
          1e-9 * std::max(1.0, p0.lpNorm<Eigen::Infinity>()));
  }
  SUBCASE("a unit cubic term folds the branch and the failure is reported") {
    // a multiplier of the continued cycle crosses 1 almost immediately, so
    // the branch disappears; the result records how far the homotopy got
    const ContinuationResult cr = continuation(base, {0.0, 1.0});
    CHECK(!cr.success);
    CHECK(cr.last_good_s < 0.01);
  }
}

TEST_CASE("scaling conjugation preserves multiplier spectra") {
  const Period3Witness w = period3_exact(Rational(1, 2), 1, 1, 0, 1);
  const double a = 0.25;
  MultiPoly g = t_poly(1);
  const PolyMap F = make_linf({w.lambda, w.v1, w.beta / w.v1, w.b1, g});
  const PolyMap Fs =
      make_linf({w.lambda, w.v1, (w.beta / w.v1) * Rational(a), w.b1, g});
  const MapEval f(F), fs(Fs);
  const VectorXd p = vec3(to_double(w.x0), to_double(w.y0), to_double(w.z0));
  const VectorXd ps = p / a;
  CHECK((fs(fs(fs(ps))) - ps).lpNorm<Eigen::Infinity>() < 1e-6);
  auto mus = eigenvalues(detail::chain_multiplier(f, p, 3)).eigenvalues;
  auto muss = eigenvalues(detail::chain_multiplier(fs, ps, 3)).eigenvalues;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(mus[i] - muss[i]) < 1e-9);
}

TEST_CASE("fixed-point uniqueness evidence across random parameters") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  std::uniform_real_distribution<double> u(-5, 5);
  int tested = 0;
  while (tested < 50) {
    const Rational lam(num(rng), den(rng) * 4);  // |lambda| < 1
    const Rational v1(num(rng), den(rng));
    const Rational alpha(num(rng), den(rng));
    const Rational b1(num(rng), den(rng));
    if (v1 == 0 || alpha == 0) continue;
    MultiPoly g = t_poly(1);
    const PolyMap F = make_linf({lam, v1, alpha, b1, g});
    ++tested;
    std::vector<VectorXd> seeds;
    for (int s = 0; s < 100; ++s) seeds.push_back(vec3(u(rng), u(rng), u(rng)));
    for (const auto& orb : find_periodic(F, 1, seeds))
      CHECK(orb.points[0].lpNorm<Eigen::Infinity>() < 1e-6);
  }
}

TEST_CASE("cocycle contraction bounds") {
  MultiPoly bz(1);
  bz.add_term({1}, 1);
  const MultiPoly one = MultiPoly::constant(1, 1);
  const CocycleReport rep =
      cocycle_contraction(Rational(1, 2), one, bz, one);
  // smallest N with both 2 N (1/2)^{N-1} max{a0^2 g0, ...} < 1 and a
  // contracting diagonal block: 2N/2^{N-1} is 1 at N=4 and 5/8 at N=5
  CHECK(rep.N == 5);
  CHECK(rep.K < 1);
  CHECK(rep.z0_bound > 0);
  CHECK(rep.matrix_norm_trace.size() == static_cast<std::size_t>(rep.N));

  // diagonal case g = 0: A = lambda I, product norm 2 lambda^N
  const CocycleReport diag =
      cocycle_contraction(Rational(1, 2), one, bz, MultiPoly(1));
  CHECK(diag.N == 2);
  CHECK(diag.K < 1);
  CHECK_THROWS(cocycle_contraction(Rational(3, 2), one, bz, one));

  // contraction is consistent with direct iteration
  MultiPoly f(2);
  f.add_term({0, 1}, 1);
  const PolyMap F = make_ld_normal({Rational(1, 2), one, bz, MultiPoly(1),
                                    MultiPoly(1), f});
  VectorXd x0(3);
  x0 << 0.5, -0.5, rep.z0_bound / 2;
  CHECK(iterate_map(F, x0, 10000).verdict == OrbitVerdict::ConvergesToOrigin);
}
