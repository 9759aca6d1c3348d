#include <doctest.h>

#include "njlab/families.hpp"
#include "njlab/flow.hpp"

using namespace njl;

namespace {

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("linear decay converges to the origin") {
  const PolyMap F = PolyMap::scalar(3, Rational(-1));
  const OrbitTrace tr = integrate(F, vec3(1, 1, 1));
  CHECK(tr.verdict == OrbitVerdict::ConvergesToOrigin);
  CHECK(classify_orbit(tr) == OrbitVerdict::ConvergesToOrigin);
  // times strictly increasing
  for (std::size_t i = 1; i < tr.times.size(); ++i)
    CHECK(tr.times[i] > tr.times[i - 1]);
}

TEST_CASE("harmonic oscillator stays undecided") {
  const int n = 2;
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const PolyMap F({y, -x});
  VectorXd x0(2);
  x0 << 1, 0;
  SimConfig cfg;
  cfg.t_max = 20;
  const OrbitTrace tr = integrate(F, x0, cfg);
  CHECK(tr.verdict == OrbitVerdict::Undecided);
}

TEST_CASE("integrator accuracy tracks the tolerances at high order") {
  const PolyMap F = PolyMap::scalar(1, Rational(-1));
  VectorXd x0(1);
  x0 << 1;
  auto err = [&](double rel) {
    SimConfig cfg;
    cfg.rel_tol = rel;
    cfg.abs_tol = rel * 1e-3;
    cfg.t_max = 1;
    cfg.converge_radius = 1e-300;
    const OrbitTrace tr = integrate(F, x0, cfg);
    return std::abs(tr.states.back()(0) - std::exp(-1.0));
  };
  const double e1 = err(1e-5);
  const double e2 = err(1e-5 / 32);
  CHECK(e2 < e1);
  CHECK(e1 / e2 > 8);  // 5th-order pair within a factor 4 of 32x
}

TEST_CASE("finite-time blow-up maps to escape with a flag") {
  // x' = 1 + x^2 blows up at t = pi/2 from 0
  const MultiPoly x = MultiPoly::variable(1, 0);
  const PolyMap F({MultiPoly::constant(1, 1) + x * x});
  VectorXd x0(1);
  x0 << 0;
  SimConfig cfg;
  cfg.escape_radius = 1e30;  // force the step underflow path
  const OrbitTrace tr = integrate(F, x0, cfg);
  CHECK(tr.verdict == OrbitVerdict::Escapes);
  CHECK(tr.finite_time_blowup);
}

TEST_CASE("closed-form exponential orbits satisfy the escape field") {
  const PolyMap F = make_y2({Rational(-1), 1, {}});
  const ExpPolyOrbit orbit = y2_escape_orbit(Rational(-1), 1, Rational(1));
  CHECK(orbit.value(0, 0) == doctest::Approx(-18.0));
  CHECK(orbit.value(1, 0) == doctest::Approx(12.0));
  CHECK(orbit.value(2, 0) == doctest::Approx(1.0));
  CHECK(!orbit.approximate);
  std::vector<double> times;
  for (int i = 0; i <= 50; ++i) times.push_back(0.1 * i);
  CHECK(residual_expporbit(F, orbit, times) < 1e-9);
  // zero orbit residual vanishes for origin-fixing fields
  ExpPolyOrbit zero;
  zero.coords = {{}, {}, {}};
  CHECK(residual_expporbit(F, zero, times) == 0);
  // perturbation is detected
  ExpPolyOrbit bumped = orbit;
  bumped.coords[0][0].coeff += Rational(1, 1000);
  CHECK(residual_expporbit(F, bumped, times) > 1e-4);
  // z0 scaling structure
  const ExpPolyOrbit half = y2_escape_orbit(Rational(-1), 1, Rational(2));
  CHECK(half.coords[0][0].coeff == orbit.coords[0][0].coeff / 2);
  CHECK(half.coords[1][0].coeff == orbit.coords[1][0].coeff / 4);
}

TEST_CASE("integrating from the closed-form start escapes") {
  const PolyMap F = make_y2({Rational(-1), 1, {}});
  const OrbitTrace tr = integrate(F, vec3(-18, 12, 1));
  CHECK(tr.verdict == OrbitVerdict::Escapes);
}

TEST_CASE("rational k-th roots") {
  CHECK(*rational_kth_root(Rational(-27, 8), 3) == Rational(-3, 2));
  CHECK(!rational_kth_root(Rational(2), 2).has_value());
  CHECK(!rational_kth_root(Rational(-4), 2).has_value());
  CHECK(*rational_kth_root(Rational(16, 81), 4) == Rational(2, 3));
  const ExpPolyOrbit approx = y2_escape_orbit(Rational(-1, 3), 3, Rational(1));
  CHECK(approx.approximate);
}

TEST_CASE("identity chart transform returns the field") {
  const int n = 3;
  ChartSpec id;
  for (int i = 0; i < n; ++i) {
    id.forward.push_back(RatFun::variable(n, i));
    id.inverse.push_back(RatFun::variable(n, i));
  }
  id.factor = RatFun::constant(n, 1);
  const PolyMap F = make_y2({Rational(-1), 1, {}});
  CHECK(chart_transform(F, id) == F);
  CHECK_NOTHROW(verify_chart(id));
}

TEST_CASE("chart transform rejects non-polynomial results") {
  ChartSpec bad = trap_chart();
  bad.factor = RatFun::constant(3, 1);  // without clearing, poles remain
  CHECK_THROWS(chart_transform(liorsc_y_field(Rational(-1)), bad));
}

TEST_CASE("projective trap chart reproduces the boundary field") {
  for (const Rational& lam : {Rational(-1), Rational(-1, 2)}) {
    CHECK_NOTHROW(verify_chart(trap_chart()));
    const PolyMap W = chart_transform(liorsc_y_field(lam), trap_chart());
    CHECK(W == trap_w_field(lam));
  }
}

TEST_CASE("polynomial change to the symmetric escape field") {
  const Rational lam(-1), a = 1, b = 2;
  const PolyMap X = PolyMap::scalar(3, lam) + make_hn2(3, a, b);
  const PolyMap Y = conjugate_polynomial(X, liorsc_phi(lam, a, b));
  CHECK(Y == liorsc_y_field(lam));
  CHECK_THROWS(liorsc_phi(lam, a, 0));
}

TEST_CASE("trapping region certification at the closed-form constants") {
  const TrappingRegion reg = TrappingRegion::standard(Rational(-1));
  CHECK(reg.A == -2);
  CHECK(reg.s0 == Rational(-1, 512));
  CHECK(reg.p0 == Rational(1, 8));
  CHECK(reg.q0 == Rational(11, 16));
  const TrappingReport rep = verify_trapping(trap_w_field(Rational(-1)), reg, 64);
  CHECK(rep.certified());
  CHECK(rep.corner1 == 0);
  CHECK(rep.corner2 == Rational(1, 4096));
  CHECK_THROWS(TrappingRegion::standard(Rational(1)));
}

TEST_CASE("tampered trapping constants are caught with witness points") {
  TrappingRegion reg = TrappingRegion::standard(Rational(-1));
  reg.p0 += Rational(1, 1000000);
  const TrappingReport rep = verify_trapping(trap_w_field(Rational(-1)), reg, 64);
  CHECK(!rep.certified());
  CHECK((!rep.violations.empty() || !rep.corner1_zero));
}

TEST_CASE("trapping holds for another negative rate") {
  const Rational lam(-1, 2);
  const TrappingReport rep =
      verify_trapping(trap_w_field(lam), TrappingRegion::standard(lam), 16);
  CHECK(rep.certified());
}

TEST_CASE("backward flow from inside the trap stays inside") {
  // time-reversed field: orbits run toward the alpha-limit on s = p = 0
  const Rational lam(-1);
  const TrappingRegion reg = TrappingRegion::standard(lam);
  const PolyMap W = trap_w_field(lam);
  std::vector<MultiPoly> neg;
  for (int i = 0; i < 3; ++i) neg.push_back(-W[i]);
  const PolyMap Wback((std::vector<MultiPoly>(neg)));
  const double s0 = to_double(reg.s0), p0 = to_double(reg.p0);
  const double q0 = to_double(reg.q0);
  VectorXd x0(3);
  x0 << s0 / 2, q0 / 2, p0 / 2;
  SimConfig cfg;
  cfg.t_max = 50;
  const OrbitTrace tr = integrate(Wback, x0, cfg);
  for (const auto& s : tr.states) {
    if (std::hypot(s(0), s(2)) < 1e-3) break;
    const double tol = 1e-9;
    CHECK(s(0) >= s0 - tol);
    CHECK(s(0) <= tol);
    CHECK(s(1) >= -tol);
    CHECK(s(1) <= q0 + tol);
    CHECK(s(2) >= -tol);
    CHECK(s(2) <= p0 + tol);
    CHECK(-2 * s(0) - s(2) * s(2) <= tol);
  }
}

TEST_CASE("blow-up chain matches the closed-form field at infinity") {
  const Rational lam(-1), beta = 1, A1 = 1, A2 = 1;
  const PolyMap X = teo1li_field(lam, beta, A1, A2);
  CHECK_NOTHROW(verify_chart(infinity_chart()));
  CHECK_NOTHROW(verify_chart(blowup_chart()));
  // first stage: Z = w Y as displayed
  const PolyMap Z = chart_transform(X, infinity_chart());
  const int n = 3;
  const MultiPoly u = MultiPoly::variable(n, 0), v = MultiPoly::variable(n, 1);
  const MultiPoly w = MultiPoly::variable(n, 2);
  const MultiPoly one = MultiPoly::constant(n, 1);
  const PolyMap Z_display(
      {-beta * u * u * u + (A1 * w + A2 * v) * (lam * v + one),
       -beta * u * u * v + w,
       -(w * (lam * w + beta * u * u))});
  CHECK(Z == Z_display);
  // composed stage equals the closed form
  CHECK(chart_transform(X, blowup_chart()) == z1_closed_form(lam, beta, A1, A2));
}

TEST_CASE("singularities on the blow-up divisor") {
  const SingularityReport rep =
      teo1li_singularities(Rational(-1), 1, 1, 1);
  REQUIRE(rep.points.size() == 3);
  CHECK(rep.points[2] == RatVec{0, Rational(4, 5), Rational(8, 25)});
  const auto& mu = rep.third_point_eigen.eigenvalues;
  REQUIRE(mu.size() == 3);
  CHECK(mu[0].real() == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(mu[1].real() == doctest::Approx(-0.8).epsilon(1e-10));
  CHECK(mu[2].real() == doctest::Approx(-0.2).epsilon(1e-10));
  CHECK_THROWS(teo1li_singularities(Rational(-1), 1, 1, 0));
}

TEST_CASE("rotation-rate fields keep the z-coordinate exponential") {
  // the third equation is z' = lambda z, so |z(t) - z0 e^{lambda t}| stays
  // within a small multiple of the tolerances
  MultiPoly b(1);
  b.add_term({1}, 1);
  MultiPoly f(2);
  f.add_term({0, 1}, 1);
  const PolyMap F = make_ld_normal({Rational(-1), MultiPoly::constant(1, 1), b,
                                    MultiPoly(1), MultiPoly(1), f});
  VectorXd x0(3);
  x0 << 3, -2, 1.5;
  SimConfig cfg;
  cfg.t_max = 20;
  const OrbitTrace tr = integrate(F, x0, cfg);
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const double z = tr.states[i](2);
    const double zref = 1.5 * std::exp(-tr.times[i]);
    CHECK(std::abs(z - zref) <=
          10 * (cfg.abs_tol + cfg.rel_tol * std::abs(z)) + 1e-12);
  }
}
