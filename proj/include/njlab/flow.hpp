#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "njlab/numerics.hpp"
#include "njlab/ratfun.hpp"

namespace njl {

// ---- orbit integration ---------------------------------------------------

struct SimConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double t_max = 200;
  double escape_radius = 1e6;
  double converge_radius = 1e-9;
  int converge_dwell = 50;
};

enum class OrbitVerdict { ConvergesToOrigin, Escapes, Undecided, StepFailure };

inline const char* verdict_name(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::ConvergesToOrigin: return "converges-to-origin";
    case OrbitVerdict::Escapes: return "escapes";
    case OrbitVerdict::Undecided: return "undecided";
    case OrbitVerdict::StepFailure: return "step-failure";
  }
  return "?";
}

struct OrbitTrace {
  std::vector<double> times;
  std::vector<VectorXd> states;
  OrbitVerdict verdict = OrbitVerdict::Undecided;
  int steps_accepted = 0;
  int steps_rejected = 0;
  bool finite_time_blowup = false;
};

// Dormand--Prince 5(4) embedded pair with standard step control.
inline OrbitTrace integrate(const PolyMap& F, const VectorXd& x0,
                            const SimConfig& cfg = {}) {
  static const double A[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
       -5103.0 / 18656},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double B4[7] = {5179.0 / 57600, 0,           7571.0 / 16695,
                               393.0 / 640,    -92097.0 / 339200,
                               187.0 / 2100,   1.0 / 40};

  OrbitTrace tr;
  const MapEval f(F);
  VectorXd y = x0;
  double t = 0, h = 1e-3;
  tr.times.push_back(t);
  tr.states.push_back(y);
  int dwell = 0;
  std::vector<VectorXd> k(7);
  while (t < cfg.t_max) {
    h = std::min(h, cfg.t_max - t);
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      const double nrm = y.norm();
      if (nrm > 1e3 && nrm > x0.norm()) {
        tr.verdict = OrbitVerdict::Escapes;
        tr.finite_time_blowup = true;
      } else {
        tr.verdict = OrbitVerdict::StepFailure;
      }
      return tr;
    }
    k[0] = f(y);
    for (int s = 1; s < 7; ++s) {
      VectorXd ys = y;
      for (int j = 0; j < s; ++j)
        if (A[s][j] != 0) ys += h * A[s][j] * k[j];
      k[s] = f(ys);
    }
    VectorXd y5 = y;
    for (int j = 0; j < 6; ++j)
      if (A[6][j] != 0) y5 += h * A[6][j] * k[j];
    VectorXd y4 = y;
    for (int j = 0; j < 7; ++j)
      if (B4[j] != 0) y4 += h * B4[j] * k[j];
    const double tol = cfg.abs_tol + cfg.rel_tol * std::max(y.norm(), y5.norm());
    const double err = (y5 - y4).norm();
    if (!std::isfinite(err) || err > tol) {
      ++tr.steps_rejected;
      double shrink = std::isfinite(err) && err > 0
                          ? 0.9 * std::pow(tol / err, 0.2)
                          : 0.1;
      h *= std::max(0.1, std::min(0.5, shrink));
      continue;
    }
    t += h;
    y = y5;
    ++tr.steps_accepted;
    tr.times.push_back(t);
    tr.states.push_back(y);
    if (err > 0) h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(tol / err, 0.2)));
    else h *= 5.0;
    const double nrm = y.norm();
    if (nrm >= cfg.escape_radius) {
      tr.verdict = OrbitVerdict::Escapes;
      return tr;
    }
    if (nrm < cfg.converge_radius) {
      if (++dwell >= cfg.converge_dwell) {
        tr.verdict = OrbitVerdict::ConvergesToOrigin;
        return tr;
      }
    } else {
      dwell = 0;
    }
  }
  tr.verdict = OrbitVerdict::Undecided;
  return tr;
}

inline OrbitVerdict classify_orbit(const OrbitTrace& tr) { return tr.verdict; }

// ---- closed-form exponential-polynomial orbits ---------------------------

struct ExpTerm {
  Rational coeff;
  Rational rate;  // term coeff * e^{rate t}
};

struct ExpPolyOrbit {
  std::vector<std::vector<ExpTerm>> coords;
  bool approximate = false;  // set when an irrational root was rounded

  int dim() const { return static_cast<int>(coords.size()); }

  double value(int i, double t) const {
    double s = 0;
    for (const auto& term : coords[i])
      s += to_double(term.coeff) * std::exp(to_double(term.rate) * t);
    return s;
  }
  double derivative(int i, double t) const {
    double s = 0;
    for (const auto& term : coords[i])
      s += to_double(term.coeff) * to_double(term.rate) *
           std::exp(to_double(term.rate) * t);
    return s;
  }
};

// max over sampled times of || gamma'(t) - F(gamma(t)) ||_inf
inline double residual_expporbit(const PolyMap& F, const ExpPolyOrbit& orbit,
                                 const std::vector<double>& times) {
  if (orbit.dim() != F.size()) throw std::invalid_argument("dimension mismatch");
  double worst = 0;
  for (double t : times) {
    std::vector<double> g(orbit.dim());
    for (int i = 0; i < orbit.dim(); ++i) g[i] = orbit.value(i, t);
    const std::vector<double> fg = evaluate_double(F, g);
    for (int i = 0; i < orbit.dim(); ++i)
      worst = std::max(worst, std::abs(orbit.derivative(i, t) - fg[i]));
  }
  return worst;
}

// Exact rational k-th root, if one exists.
inline std::optional<Rational> rational_kth_root(const Rational& q, int k) {
  if (k == 1) return q;
  const bool neg = q < 0;
  if (neg && k % 2 == 0) return std::nullopt;
  mpz_class num = abs(q.get_num()), den = q.get_den();
  mpz_class rn, rd;
  const int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k);
  const int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k);
  if (!exact_n || !exact_d) return std::nullopt;
  Rational r(neg ? mpz_class(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

// gamma(t) = (3 u / z0 e^{-lambda t}, -2 u / z0^2 e^{-2 lambda t},
//             z0 e^{lambda t}) with u = (6 lambda)^{1/k}.
inline ExpPolyOrbit y2_escape_orbit(const Rational& lambda, int k,
                                    const Rational& z0) {
  if (z0 == 0) throw std::invalid_argument("z0 must be nonzero");
  ExpPolyOrbit orbit;
  Rational u;
  if (auto root = rational_kth_root(6 * lambda, k)) {
    u = *root;
  } else {
    // documented rounding: nearest double, then exact rational of that
    const double approx = std::copysign(
        std::pow(std::abs(6 * to_double(lambda)), 1.0 / k), to_double(lambda));
    u = Rational(approx);
    orbit.approximate = true;
  }
  orbit.coords = {{{3 * u / z0, -lambda}},
                  {{-2 * u / (z0 * z0), -2 * lambda}},
                  {{z0, lambda}}};
  return orbit;
}

// ---- rational charts and field transforms --------------------------------

struct ChartSpec {
  std::vector<RatFun> forward;  // new coordinates as functions of the old
  std::vector<RatFun> inverse;  // old coordinates as functions of the new
  RatFun factor;                // clearing factor, in the new coordinates
  std::string orientation_note;
};

inline void verify_chart(const ChartSpec& chart) {
  const int n = static_cast<int>(chart.forward.size());
  for (int i = 0; i < n; ++i) {
    if (!(substitute(chart.forward[i], chart.inverse) ==
          RatFun::variable(n, i)) ||
        !(substitute(chart.inverse[i], chart.forward) ==
          RatFun::variable(n, i)))
      throw std::invalid_argument("chart rules are not mutually inverse");
  }
}

// Pushforward of the vector field F through the rational chart, times the
// clearing factor. Throws when the cleared field is not polynomial.
inline PolyMap chart_transform(const PolyMap& F, const ChartSpec& chart) {
  const int n = F.size();
  std::vector<MultiPoly> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    RatFun s = RatFun(MultiPoly(n));
    for (int j = 0; j < n; ++j)
      s = s + differentiate(chart.forward[i], j) * RatFun(F[j]);
    RatFun z = substitute(s, chart.inverse) * chart.factor;
    auto poly = z.to_polynomial();
    if (!poly)
      throw std::runtime_error("cleared field is not polynomial (component " +
                               std::to_string(i) + ")");
    out.push_back(std::move(*poly));
  }
  return PolyMap(std::move(out));
}

// Pushforward with an automatically enlarged clearing factor: whatever
// denominators survive the chart's own factor are collected into a common
// polynomial multiple so the result is always polynomial (up to that extra
// time rescaling, which is reported back to the caller).
struct ClearedTransform {
  PolyMap field;
  MultiPoly extra;  // additional clearing factor, in the new coordinates
};

inline ClearedTransform chart_transform_cleared(const PolyMap& F,
                                                const ChartSpec& chart) {
  const int n = F.size();
  std::vector<RatFun> comps;
  comps.reserve(n);
  for (int i = 0; i < n; ++i) {
    RatFun s = RatFun(MultiPoly(n));
    for (int j = 0; j < n; ++j)
      s = s + differentiate(chart.forward[i], j) * RatFun(F[j]);
    comps.push_back(substitute(s, chart.inverse) * chart.factor);
  }
  MultiPoly extra = MultiPoly::constant(n, 1);
  for (const RatFun& c : comps) {
    const MultiPoly& d = c.den();
    if (divide_exact(extra, d)) continue;  // already a multiple
    if (divide_exact(d, extra))
      extra = d;
    else
      extra = extra * d;
  }
  std::vector<MultiPoly> out;
  out.reserve(n);
  for (const RatFun& c : comps) {
    auto poly = (RatFun(extra) * c).to_polynomial();
    if (!poly)
      throw std::runtime_error("denominator clearing failed");
    out.push_back(std::move(*poly));
  }
  return {PolyMap(std::move(out)), std::move(extra)};
}

// (s,q,p) = (1,u,w)/v with clearing factor s; used to study the escape set
// of Y(u,v,w) = (w, l v - w^2, 2 l w + v - l^2 u).
inline ChartSpec trap_chart() {
  const int n = 3;
  const MultiPoly one = MultiPoly::constant(n, 1);
  const MultiPoly u = MultiPoly::variable(n, 0), v = MultiPoly::variable(n, 1);
  const MultiPoly w = MultiPoly::variable(n, 2);
  const MultiPoly s = MultiPoly::variable(n, 0), q = MultiPoly::variable(n, 1);
  const MultiPoly p = MultiPoly::variable(n, 2);
  ChartSpec c;
  c.forward = {RatFun(one, v), RatFun(u, v), RatFun(w, v)};
  c.inverse = {RatFun(q, s), RatFun(one, s), RatFun(p, s)};
  c.factor = RatFun::variable(n, 0);  // s
  c.orientation_note =
      "orbits of Z and W agree; orientation preserved for s > 0, reversed for s < 0";
  return c;
}

// phi(x1,x2,x3) = b (x1, x3 - l b x1^2, l x1 + x2 - a x1 - b x1^2), the
// polynomial change taking F_{3,2} to Y above.
inline ChartPair liorsc_phi(const Rational& lambda, const Rational& a,
                            const Rational& b) {
  if (b == 0) throw std::invalid_argument("b must be nonzero");
  const int n = 3;
  const MultiPoly x1 = MultiPoly::variable(n, 0), x2 = MultiPoly::variable(n, 1);
  const MultiPoly x3 = MultiPoly::variable(n, 2);
  const PolyMap forward({b * x1,
                         b * (x3 - lambda * b * x1 * x1),
                         b * (lambda * x1 + x2 - a * x1 - b * x1 * x1)});
  const MultiPoly u = MultiPoly::variable(n, 0), v = MultiPoly::variable(n, 1);
  const MultiPoly w = MultiPoly::variable(n, 2);
  const Rational ib = 1 / b;
  const MultiPoly xi1 = ib * u;
  const MultiPoly xi3 = ib * v + (lambda * ib) * u * u;
  const MultiPoly xi2 = ib * w - (lambda - a) * ib * u + ib * u * u;
  return ChartPair(forward, PolyMap({xi1, xi2, xi3}), ChartMode::Continuous);
}

// Y(u,v,w) = (w, l v - w^2, 2 l w + v - l^2 u).
inline PolyMap liorsc_y_field(const Rational& lambda) {
  const int n = 3;
  const MultiPoly u = MultiPoly::variable(n, 0), v = MultiPoly::variable(n, 1);
  const MultiPoly w = MultiPoly::variable(n, 2);
  return PolyMap({w, lambda * v - w * w,
                  2 * lambda * w + v - lambda * lambda * u});
}

// W(s,q,p) = (-s(l s - p^2), s(p - l q) + q p^2, s(l p + 1 - l^2 q) + p^3).
inline PolyMap trap_w_field(const Rational& lambda) {
  const int n = 3;
  const MultiPoly s = MultiPoly::variable(n, 0), q = MultiPoly::variable(n, 1);
  const MultiPoly p = MultiPoly::variable(n, 2);
  const MultiPoly one = MultiPoly::constant(n, 1);
  return PolyMap({-(s * (lambda * s - p * p)),
                  s * (p - lambda * q) + q * p * p,
                  s * (lambda * p + one - (lambda * lambda) * q) + p * p * p});
}

// ---- trapping region -----------------------------------------------------

struct TrappingRegion {
  Rational lambda;
  Rational A, s0, p0, q0;

  static TrappingRegion standard(const Rational& lambda) {
    if (!(lambda < 0)) throw std::invalid_argument("lambda must be negative");
    TrappingRegion r;
    r.lambda = lambda;
    r.A = 2 * lambda;
    r.s0 = 1 / (512 * rat_pow(lambda, 3));
    r.p0 = -1 / (8 * lambda);
    r.q0 = Rational(11) / (16 * lambda * lambda);
    return r;
  }
};

struct TrappingViolation {
  int condition;
  RatVec point;
  Rational value;
};

struct TrappingReport {
  std::vector<TrappingViolation> violations;
  Rational corner1;  // p0 (A + 3 l) + 2 (1 - l^2 q0), must be 0
  Rational corner2;  // (7/8) s0 - 1/(8^3 l^3), must be positive
  bool corner1_zero = false;
  bool corner2_positive = false;
  bool certified() const {
    return violations.empty() && corner1_zero && corner2_positive;
  }
};

// Exact rational evaluation of the four boundary inequalities of
// P_A = {A s - p^2 <= 0, s0 <= s <= 0, 0 <= q <= q0, 0 <= p <= p0}
// for the field W, on a grid of points per face.
inline TrappingReport verify_trapping(const PolyMap& W,
                                      const TrappingRegion& reg,
                                      int grid_per_face = 64) {
  TrappingReport rep;
  int g = 2;
  while (g * g < grid_per_face) ++g;
  auto eval_w = [&W](const RatVec& x) { return evaluate(W, x); };

  // condition 1: on A s - p^2 = 0 (so s = p^2 / A), A W1 - 2 p W3 >= 0;
  // the face inside P_A has p in [0, -1/(16 l)] (s = s0 at the far end).
  const Rational p_face1 = -1 / (16 * reg.lambda);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const Rational p = p_face1 * i / (g - 1);
      const Rational q = reg.q0 * j / (g - 1);
      const RatVec x{p * p / reg.A, q, p};
      const RatVec w = eval_w(x);
      const Rational val = reg.A * w[0] - 2 * p * w[2];
      if (val < 0) rep.violations.push_back({1, x, val});
    }
  // membership in P_A: the face conditions only apply where A s - p^2 <= 0
  auto in_region = [&reg](const Rational& s, const Rational& p) {
    return reg.A * s - p * p <= 0;
  };
  // condition 2: on p = p0, W3 > 0 (strict for s < 0, >= 0 allowed at s = 0
  // where the proof's bound is still positive; we require > 0 everywhere).
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const Rational s = reg.s0 * i / (g - 1);
      const Rational q = reg.q0 * j / (g - 1);
      const RatVec x{s, q, reg.p0};
      const RatVec w = eval_w(x);
      if (!(w[2] > 0)) rep.violations.push_back({2, x, w[2]});
    }
  // condition 3: on q = 0, W2 <= 0.
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const Rational s = reg.s0 * i / (g - 1);
      const Rational p = reg.p0 * j / (g - 1);
      if (!in_region(s, p)) continue;
      const RatVec x{s, Rational(0), p};
      const RatVec w = eval_w(x);
      if (w[1] > 0) rep.violations.push_back({3, x, w[1]});
    }
  // condition 4: on q = q0, W2 >= 0.
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const Rational s = reg.s0 * i / (g - 1);
      const Rational p = reg.p0 * j / (g - 1);
      if (!in_region(s, p)) continue;
      const RatVec x{s, reg.q0, p};
      const RatVec w = eval_w(x);
      if (w[1] < 0) rep.violations.push_back({4, x, w[1]});
    }
  // condition 5: on the box face s = s0 (present where A s0 - p^2 <= 0),
  // W1 <= 0, so the forward field points toward s < s0.
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const Rational p = reg.p0 * j / (g - 1);
      if (!in_region(reg.s0, p)) continue;
      const Rational q = reg.q0 * i / (g - 1);
      const RatVec x{reg.s0, q, p};
      const RatVec w = eval_w(x);
      if (w[0] > 0) rep.violations.push_back({5, x, w[0]});
    }

  rep.corner1 = reg.p0 * (reg.A + 3 * reg.lambda) +
                2 * (1 - reg.lambda * reg.lambda * reg.q0);
  rep.corner1_zero = rep.corner1 == 0;
  rep.corner2 =
      Rational(7, 8) * reg.s0 - 1 / (512 * rat_pow(reg.lambda, 3));
  rep.corner2_positive = rep.corner2 > 0;
  return rep;
}

// ---- behavior at infinity for deg-two g (blow-up chain) ------------------

// X(x,y,z) = l (x,y,z) + (g'(y)(l y + z), z, beta x^2), g = A1 t + A2 t^2/2.
inline PolyMap teo1li_field(const Rational& lambda, const Rational& beta,
                            const Rational& A1, const Rational& A2) {
  const int n = 3;
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const MultiPoly z = MultiPoly::variable(n, 2);
  const MultiPoly gprime = MultiPoly::constant(n, A1) + A2 * y;
  return PolyMap({lambda * x + gprime * (lambda * y + z),
                  lambda * y + z,
                  lambda * z + beta * x * x});
}

// (u,v,w) = (x,y,1)/z with clearing factor w.
inline ChartSpec infinity_chart() {
  const int n = 3;
  const MultiPoly one = MultiPoly::constant(n, 1);
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const MultiPoly z = MultiPoly::variable(n, 2);
  const MultiPoly u = MultiPoly::variable(n, 0), v = MultiPoly::variable(n, 1);
  const MultiPoly w = MultiPoly::variable(n, 2);
  ChartSpec c;
  c.forward = {RatFun(x, z), RatFun(y, z), RatFun(one, z)};
  c.inverse = {RatFun(u, w), RatFun(v, w), RatFun(one, w)};
  c.factor = RatFun::variable(n, 2);  // w
  c.orientation_note =
      "orientation preserved for w > 0, reversed for w < 0";
  return c;
}

// Composite of the chart above with the blow-up (s,q,p) = (u, v/u^3, w/u^5),
// straight from (x,y,z); clearing factor 1/s^2 yields Z1.
inline ChartSpec blowup_chart() {
  const int n = 3;
  const MultiPoly one = MultiPoly::constant(n, 1);
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const MultiPoly z = MultiPoly::variable(n, 2);
  const MultiPoly s = MultiPoly::variable(n, 0), q = MultiPoly::variable(n, 1);
  const MultiPoly p = MultiPoly::variable(n, 2);
  ChartSpec c;
  c.forward = {RatFun(x, z), RatFun(y * z * z, x * x * x),
               RatFun(z * z * z * z, poly_pow(x, 5))};
  c.inverse = {RatFun(one, p * poly_pow(s, 4)), RatFun(q, p * s * s),
               RatFun(one, p * poly_pow(s, 5))};
  // the two stages clear w and then 1/s^2, so the composite clears
  // (w o inverse) / s^2 = p s^3
  c.factor = RatFun(p * s * s * s, one);
  c.orientation_note = "time scaled by s^2 / w";
  return c;
}

// Z1(s,q,p) = A (s, -3q, -5p) + (0, p - beta q, -p (beta + l p s^3)),
// A = -beta + (A1 p s^2 + A2 q)(l q s^3 + 1).
inline PolyMap z1_closed_form(const Rational& lambda, const Rational& beta,
                              const Rational& A1, const Rational& A2) {
  const int n = 3;
  const MultiPoly s = MultiPoly::variable(n, 0), q = MultiPoly::variable(n, 1);
  const MultiPoly p = MultiPoly::variable(n, 2);
  const MultiPoly one = MultiPoly::constant(n, 1);
  const MultiPoly A = MultiPoly::constant(n, -beta) +
                      (A1 * p * s * s + A2 * q) * (lambda * q * s * s * s + one);
  return PolyMap({A * s,
                  Rational(-3) * A * q + p - beta * q,
                  Rational(-5) * A * p -
                      p * (MultiPoly::constant(n, beta) + lambda * p * s * s * s)});
}

struct SingularityReport {
  std::vector<RatVec> points;   // the three singular points on s = 0
  EigenReport third_point_eigen;
};

inline SingularityReport teo1li_singularities(const Rational& lambda,
                                              const Rational& beta,
                                              const Rational& A1,
                                              const Rational& A2) {
  if (A2 == 0) throw std::invalid_argument("A2 must be nonzero");
  SingularityReport rep;
  rep.points = {{0, 0, 0},
                {0, 2 * beta / (3 * A2), Rational(0)},
                {0, 4 * beta / (5 * A2), 8 * beta * beta / (25 * A2)}};
  const PolyMap Z1 = z1_closed_form(lambda, beta, A1, A2);
  for (const auto& pt : rep.points)
    for (const auto& val : evaluate(Z1, pt))
      if (val != 0) throw std::logic_error("claimed singular point is not");
  const RatMat J = evaluate(jacobian(Z1), rep.points[2]);
  MatrixXd Jd(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Jd(i, j) = to_double(J[i][j]);
  rep.third_point_eigen = eigenvalues(Jd);
  return rep;
}

}  // namespace njl
