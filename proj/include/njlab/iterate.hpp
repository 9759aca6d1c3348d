#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "njlab/families.hpp"
#include "njlab/flow.hpp"
#include "njlab/numerics.hpp"

namespace njl {

// ---- iteration -----------------------------------------------------------

struct DiscreteTrace {
  std::vector<VectorXd> states;
  std::vector<RatVec> exact_states;  // filled in exact mode, up to degrade
  OrbitVerdict verdict = OrbitVerdict::Undecided;
  bool degraded_to_float = false;
};

namespace detail {

inline OrbitVerdict step_verdict(double nrm, int& dwell, const SimConfig& cfg) {
  if (nrm >= cfg.escape_radius) return OrbitVerdict::Escapes;
  if (nrm < cfg.converge_radius) {
    if (++dwell >= cfg.converge_dwell) return OrbitVerdict::ConvergesToOrigin;
  } else {
    dwell = 0;
  }
  return OrbitVerdict::Undecided;
}

}  // namespace detail

inline DiscreteTrace iterate_map(const PolyMap& F, const VectorXd& x0,
                                 int nmax, const SimConfig& cfg = {}) {
  if (!F.square()) throw std::invalid_argument("non-square map");
  DiscreteTrace tr;
  VectorXd x = x0;
  tr.states.push_back(x);
  int dwell = 0;
  for (int n = 0; n < nmax; ++n) {
    x = to_eigen(evaluate_double(F, from_eigen(x)));
    tr.states.push_back(x);
    const double nrm = x.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(nrm)) {
      tr.verdict = OrbitVerdict::Escapes;
      return tr;
    }
    tr.verdict = detail::step_verdict(nrm, dwell, cfg);
    if (tr.verdict != OrbitVerdict::Undecided) return tr;
  }
  return tr;
}

// Exact-rational iteration; degrades to float once any denominator exceeds
// 2^20 bits (coefficient swell), with a flag.
inline DiscreteTrace iterate_map(const PolyMap& F, const RatVec& x0, int nmax,
                                 const SimConfig& cfg = {}) {
  if (!F.square()) throw std::invalid_argument("non-square map");
  constexpr std::size_t kDenBitCap = std::size_t{1} << 20;
  DiscreteTrace tr;
  RatVec x = x0;
  auto mirror = [](const RatVec& v) {
    VectorXd m(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
      m(static_cast<Eigen::Index>(i)) = to_double(v[i]);
    return m;
  };
  tr.exact_states.push_back(x);
  tr.states.push_back(mirror(x));
  int dwell = 0;
  for (int n = 0; n < nmax; ++n) {
    x = evaluate(F, x);
    bool swollen = false;
    for (const auto& c : x) swollen |= den_bits(c) > kDenBitCap;
    if (swollen) {
      tr.degraded_to_float = true;
      VectorXd xf = mirror(x);
      tr.exact_states.push_back(x);
      tr.states.push_back(xf);
      tr.verdict = detail::step_verdict(xf.lpNorm<Eigen::Infinity>(), dwell, cfg);
      for (int m = n + 1; m < nmax && tr.verdict == OrbitVerdict::Undecided;
           ++m) {
        xf = to_eigen(evaluate_double(F, from_eigen(xf)));
        tr.states.push_back(xf);
        const double nrm = xf.lpNorm<Eigen::Infinity>();
        if (!std::isfinite(nrm)) {
          tr.verdict = OrbitVerdict::Escapes;
          break;
        }
        tr.verdict = detail::step_verdict(nrm, dwell, cfg);
      }
      return tr;
    }
    tr.exact_states.push_back(x);
    const VectorXd xf = mirror(x);
    tr.states.push_back(xf);
    tr.verdict = detail::step_verdict(xf.lpNorm<Eigen::Infinity>(), dwell, cfg);
    if (tr.verdict != OrbitVerdict::Undecided) return tr;
  }
  return tr;
}

// ---- the explicit escaping discrete orbit --------------------------------

inline Rational rat_pow_int(const Rational& q, int e) {
  if (e >= 0) return rat_pow(q, static_cast<unsigned>(e));
  if (q == 0) throw std::invalid_argument("negative power of zero");
  return 1 / rat_pow(q, static_cast<unsigned>(-e));
}

struct Y2DiscreteOrbit {
  Rational u0;
  std::vector<RatVec> points;  // (x_n, y_n, z_n), n = 0..nmax
  bool verified = false;       // F(p_n) == p_{n+1} exactly, all n
};

// (x_n, y_n, z_n) = ((1+l+l^2) u0 / (l^n z0), -(1+l) u0 / (l^{2n-1} z0^2),
//                     l^n z0),  u0 = ((1+l)(l^3-1)/l)^{1/k}.
inline Y2DiscreteOrbit y2_discrete_orbit(const Rational& lambda, int k,
                                         const Rational& z0, int nmax) {
  if (lambda == 0 || z0 == 0)
    throw std::invalid_argument("lambda and z0 must be nonzero");
  const Rational arg = (1 + lambda) * (rat_pow(lambda, 3) - 1) / lambda;
  auto root = rational_kth_root(arg, k);
  if (!root) throw std::domain_error("u0 is irrational for these parameters");
  Y2DiscreteOrbit orbit;
  orbit.u0 = *root;
  const Rational c1 = (1 + lambda + lambda * lambda) * orbit.u0;
  const Rational c2 = -(1 + lambda) * orbit.u0 / (z0 * z0);
  for (int n = 0; n <= nmax; ++n)
    orbit.points.push_back({c1 / (rat_pow_int(lambda, n) * z0),
                            c2 / rat_pow_int(lambda, 2 * n - 1),
                            rat_pow_int(lambda, n) * z0});
  const PolyMap F = make_y2({lambda, k, {}});
  orbit.verified = true;
  for (int n = 0; n < nmax; ++n)
    if (evaluate(F, orbit.points[n]) != orbit.points[n + 1]) {
      orbit.verified = false;
      break;
    }
  return orbit;
}

// ---- periodic orbits (floating search) -----------------------------------

struct PeriodicOrbit {
  int period = 1;
  std::vector<VectorXd> points;
  EigenReport multiplier_eigen;  // of D(F^period) at points[0]
  // backward error ||F^k(x) - x|| / max(1, ||x||): double rounding of a
  // large-coordinate cycle point already costs ||x|| eps, so the meaningful
  // residual is relative to the orbit scale
  double residual = 0;
  bool exact_zero = false;
  bool minimal = false;
};

namespace detail {

// D(F^k)(x) = J(x_{k-1}) ... J(x_0) by the chain rule.
inline MatrixXd chain_multiplier(const MapEval& f, const VectorXd& x, int k) {
  MatrixXd M = MatrixXd::Identity(f.dim(), f.dim());
  VectorXd y = x;
  for (int i = 0; i < k; ++i) {
    M = f.jacobian_at(y) * M;
    y = f(y);
  }
  return M;
}

inline double orbit_distance(const std::vector<VectorXd>& a,
                             const std::vector<VectorXd>& b) {
  const int k = static_cast<int>(a.size());
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < k; ++r) {
    double worst = 0;
    for (int i = 0; i < k; ++i)
      worst = std::max(worst,
                       (a[(i + r) % k] - b[i]).lpNorm<Eigen::Infinity>());
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace detail

inline std::vector<PeriodicOrbit> find_periodic(const PolyMap& F, int k,
                                                const std::vector<VectorXd>& seeds,
                                                double tol = 1e-12) {
  if (k < 1) throw std::invalid_argument("period must be >= 1");
  const MapEval f(F);
  const MatrixXd I = MatrixXd::Identity(f.dim(), f.dim());
  auto G = [&f, k](const VectorXd& x) {
    VectorXd y = x;
    for (int i = 0; i < k; ++i) y = f(y);
    return VectorXd(y - x);
  };
  auto JG = [&f, k, &I](const VectorXd& x) {
    return MatrixXd(detail::chain_multiplier(f, x, k) - I);
  };
  std::vector<PeriodicOrbit> found;
  for (const auto& seed : seeds) {
    const NewtonResult nr = newton_solve(G, JG, seed, tol);
    const double scale = std::max(1.0, nr.point.lpNorm<Eigen::Infinity>());
    if (!nr.converged && !(nr.residual_norm <= tol * scale)) continue;
    PeriodicOrbit orb;
    orb.period = k;
    orb.residual = nr.residual_norm / scale;
    VectorXd y = nr.point;
    for (int i = 0; i < k; ++i) {
      orb.points.push_back(y);
      y = f(y);
    }
    bool dup = false;
    for (const auto& other : found)
      if (detail::orbit_distance(orb.points, other.points) < 1e-6) {
        dup = true;
        break;
      }
    if (dup) continue;
    orb.minimal = true;
    for (int d = 1; d < k; ++d) {
      if (k % d != 0) continue;
      VectorXd yd = nr.point;
      for (int i = 0; i < d; ++i) yd = f(yd);
      if ((yd - nr.point).lpNorm<Eigen::Infinity>() < 1e-6) {
        orb.minimal = false;
        break;
      }
    }
    orb.multiplier_eigen = eigenvalues(detail::chain_multiplier(f, nr.point, k));
    found.push_back(std::move(orb));
  }
  return found;
}

// ---- exact period-3 witness ----------------------------------------------

struct Period3Witness {
  Rational lambda, A, beta, b1, v1;
  Rational x0, y0, z0;
  Rational t0, t1, t2;                  // t along the cycle
  Rational d1, d2, d3;                  // displayed cycle conditions
  std::vector<RatVec> cycle;            // the three exact points
  std::array<Rational, 4> charpoly{};   // c0 + c1 x + c2 x^2 + c3 x^3
  Rational p_at_1;
  LinfParams params() const {
    MultiPoly g(1);
    g.add_term({1}, A);
    return LinfParams{lambda, v1, beta / v1, b1, g};
  }
};

namespace detail {

inline RatMat rat_mat_mul(const RatMat& a, const RatMat& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b[0].size());
  const int kk = static_cast<int>(b.size());
  RatMat r(n, RatVec(m, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < kk; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// det(xI - M) for exact 3x3, as c0 + c1 x + c2 x^2 + x^3.
inline std::array<Rational, 4> charpoly3(const RatMat& M) {
  const Rational tr = M[0][0] + M[1][1] + M[2][2];
  const Rational m2 = M[0][0] * M[1][1] - M[0][1] * M[1][0] +
                      M[0][0] * M[2][2] - M[0][2] * M[2][0] +
                      M[1][1] * M[2][2] - M[1][2] * M[2][1];
  const Rational det = rat_det(M);
  return {-det, m2, -tr, Rational(1)};
}

}  // namespace detail

// Exact rational verification of the period-3 point of F with g(t) = A t:
// builds the displayed closed forms, checks F^3(point) = point with no
// floating point, and extracts the multiplier characteristic polynomial.
inline Period3Witness period3_exact(const Rational& lambda, const Rational& A,
                                    const Rational& beta, const Rational& b1,
                                    const Rational& v1) {
  if (!(rat_abs(lambda) < 1)) throw std::invalid_argument("need |lambda| < 1");
  if (A == 0 || beta == 0 || v1 == 0)
    throw std::invalid_argument("A, beta, v1 must be nonzero");
  Period3Witness w;
  w.lambda = lambda;
  w.A = A;
  w.beta = beta;
  w.b1 = b1;
  w.v1 = v1;
  const Rational l = lambda;
  const Rational q = 1 + l + l * l;
  const Rational one_m = 1 - l;
  const Rational even = 1 + 4 * l * l + rat_pow(l, 4);
  w.x0 = q * even / (A * beta * rat_pow(one_m, 3));
  w.y0 = -q / (A * A * beta * rat_pow(one_m, 6)) *
         (l * q *
              (4 + l + 8 * l * l + 11 * rat_pow(l, 3) + 4 * rat_pow(l, 4) +
               7 * rat_pow(l, 5) + rat_pow(l, 7)) +
          A * b1 * rat_pow(one_m, 3) * even);
  w.z0 = rat_pow(q, 3) *
         (1 + 3 * l * l + 4 * rat_pow(l, 3) + 3 * rat_pow(l, 4) +
          rat_pow(l, 6)) /
         (v1 * A * A * beta * rat_pow(one_m, 5));

  const LinfParams par = w.params();
  const PolyMap F = make_linf(par);
  const MultiPoly tpoly = linf_t_poly(par);
  const RatVec p0{w.x0, w.y0, w.z0};
  const RatVec p1 = evaluate(F, p0);
  const RatVec p2 = evaluate(F, p1);
  const RatVec p3 = evaluate(F, p2);
  if (p3 != p0) throw std::logic_error("closed-form point is not 3-periodic");
  w.cycle = {p0, p1, p2};
  w.t0 = evaluate(tpoly, p0);
  w.t1 = evaluate(tpoly, p1);
  w.t2 = evaluate(tpoly, p2);

  // the displayed cycle conditions, with g(t) = A t
  auto g = [&A](const Rational& t) -> Rational { return A * t; };
  const Rational g0 = g(w.t0), g1 = g(w.t1), g2 = g(w.t2);
  const Rational alpha = beta / v1;
  const Rational l3m1 = rat_pow(l, 3) - 1;
  w.d1 = l3m1 * w.x0 + l * l * g0 + l * g1 + g2;
  w.d2 = l3m1 * w.z0 + l * l * alpha * g0 * g0 + l * alpha * g1 * g1 +
         alpha * g2 * g2;
  w.d3 = l3m1 * w.y0 + 3 * l * l * v1 * w.z0 -
         l * l * (b1 + 2 * beta * w.x0) * g0 + 2 * l * beta * g0 * g0 -
         l * (b1 + 2 * beta * (l * w.x0 + g0)) * g1 + beta * g1 * g1 -
         (b1 + 2 * beta * (l * l * w.x0 + l * g0 + g1)) * g2;

  const PolyMatrix J = jacobian(F);
  const RatMat M = detail::rat_mat_mul(
      evaluate(J, p2), detail::rat_mat_mul(evaluate(J, p1), evaluate(J, p0)));
  w.charpoly = detail::charpoly3(M);
  w.p_at_1 = w.charpoly[0] + w.charpoly[1] + w.charpoly[2] + w.charpoly[3];
  const Rational expected = 3 * rat_pow(l - 1, 3) * rat_pow(q, 3);
  if (w.p_at_1 != expected)
    throw std::logic_error("p(1) identity failed");
  return w;
}

struct CharpolyCheck {
  std::array<Rational, 4> computed{};
  std::array<Rational, 4> displayed{};
  bool match = false;
  Rational p1_from_coeffs;
};

// Compare the exact characteristic polynomial of DF^3 at the witness with
// the closed-form coefficients in lambda. Mismatch is a hard failure.
inline CharpolyCheck charpoly_df3(const Period3Witness& w) {
  CharpolyCheck chk;
  chk.computed = w.charpoly;
  const Rational l = w.lambda;
  auto horner = [&l](std::vector<Rational> c) {
    Rational v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * l + *it;
    return v;
  };
  chk.displayed = {
      -rat_pow(l, 9),
      -l * horner({8, 44, 104, 164, 164, 113, 44, 8, -4}),
      horner({-4, 8, 44, 113, 164, 164, 104, 44, 8}),
      Rational(1)};
  chk.match = chk.computed == chk.displayed;
  chk.p1_from_coeffs =
      chk.computed[0] + chk.computed[1] + chk.computed[2] + chk.computed[3];
  if (!chk.match)
    throw std::logic_error("multiplier charpoly differs from closed form");
  return chk;
}

// ---- period-2 cycle conditions -------------------------------------------

struct Period2Residuals {
  Rational t0, t1;
  Rational c1, c2, c3;
  bool all_zero() const { return c1 == 0 && c2 == 0 && c3 == 0; }
};

inline Period2Residuals period2_conditions(const LinfParams& p,
                                           const RatVec& pt) {
  check_linf(p);
  const Rational l = p.lambda, v1 = p.v1, alpha = p.alpha, b1 = p.b1;
  const Rational beta = p.beta();
  const Rational x0 = pt.at(0), y0 = pt.at(1), z0 = pt.at(2);
  auto g = [&p](const Rational& t) { return evaluate(p.g, RatVec{t}); };
  Period2Residuals r;
  r.t0 = y0 + b1 * x0 + beta * x0 * x0;
  const Rational g0 = g(r.t0);
  r.t1 = l * b1 * x0 + l * y0 + v1 * z0 - 2 * beta * x0 * g0 +
         beta * rat_pow(l * x0 + g0, 2);
  const Rational g1 = g(r.t1);
  r.c1 = (l * l - 1) * x0 + l * g0 + g1;
  r.c2 = (l * l - 1) * z0 + l * alpha * g0 * g0 + alpha * g1 * g1;
  r.c3 = (l * l - 1) * y0 + 2 * l * v1 * z0 - l * (b1 + 2 * beta * x0) * g0 +
         beta * g0 * g0 - (b1 + 2 * beta * (l * x0 + g0)) * g1;
  return r;
}

// ---- continuation to higher-degree g -------------------------------------

struct ContinuationResult {
  PeriodicOrbit orbit;       // in the original coordinates
  bool success = false;
  double last_good_s = 0;    // homotopy parameter reached
  double scale = 1;          // |a| of the scaling conjugation, 1 if unused
};

namespace detail {

inline PolyMap linf_with_coeffs(const Period3Witness& base,
                                const std::vector<double>& higher,
                                double alpha_scale) {
  MultiPoly g(1);
  g.add_term({1}, base.A);
  for (std::size_t j = 0; j < higher.size(); ++j)
    g.add_term({static_cast<int>(j) + 2}, Rational(higher[j]));
  LinfParams p{base.lambda, base.v1,
               (base.beta / base.v1) * Rational(alpha_scale), base.b1, g};
  return make_linf(p);
}

}  // namespace detail

// Parameter homotopy from g(t) = A t to g(t) = A t + A2 t^2 + ... + Ak t^k,
// Newton-correcting the period-3 point at each step. Large coefficients are
// tamed first by the scaling conjugation T(x) = a^{-1} x, which multiplies
// coefficient A_j by a^{j-1} and alpha by a.
inline ContinuationResult continuation(const Period3Witness& base,
                                       const std::vector<double>& higher_coeffs,
                                       int steps = 32) {
  ContinuationResult res;
  double a = 1;
  for (std::size_t j = 0; j < higher_coeffs.size(); ++j) {
    const double mag = std::abs(higher_coeffs[j]);
    if (mag > 0.1)
      a = std::min(a, std::pow(0.1 / mag, 1.0 / (static_cast<double>(j) + 1)));
  }
  res.scale = a;
  std::vector<double> scaled = higher_coeffs;
  for (std::size_t j = 0; j < scaled.size(); ++j)
    scaled[j] *= std::pow(a, static_cast<double>(j) + 1);

  VectorXd x(3);
  x << to_double(base.x0) / a, to_double(base.y0) / a, to_double(base.z0) / a;
  double s = 0;
  double ds = 1.0 / steps;
  int iters = 0;
  while (s < 1 && ++iters <= 50000) {
    const double s_try = std::min(1.0, s + ds);
    std::vector<double> cur = scaled;
    for (auto& c : cur) c *= s_try;
    const PolyMap F = detail::linf_with_coeffs(base, cur, a);
    const MapEval f(F);
    auto G = [&f](const VectorXd& p) {
      return VectorXd(f(f(f(p))) - p);
    };
    auto JG = [&f](const VectorXd& p) {
      return MatrixXd(detail::chain_multiplier(f, p, 3) -
                      MatrixXd::Identity(3, 3));
    };
    const NewtonResult nr = newton_solve(G, JG, x, 1e-12, 60);
    const double nscale = std::max(1.0, nr.point.lpNorm<Eigen::Infinity>());
    // the cycle coordinates reach O(1e3) and the map's intermediates O(1e6),
    // so the attainable residual floor sits near 1e-8 in double precision
    if (!nr.converged && !(nr.residual_norm <= 1e-8 * nscale)) {
      ds /= 2;
      if (ds < 1e-8) {
        res.last_good_s = s;
        return res;
      }
      continue;
    }
    x = nr.point;
    s = s_try;
    ds = std::min(ds * 1.7, 1.0 / 16);  // regrow after success
  }
  if (s < 1) {  // iteration budget exhausted
    res.last_good_s = s;
    return res;
  }
  res.last_good_s = 1;

  // unscale back to the original coordinates and verify there
  const PolyMap F = detail::linf_with_coeffs(base, higher_coeffs, 1);
  const MapEval f(F);
  VectorXd x_orig = a * x;
  auto G = [&f](const VectorXd& p) { return VectorXd(f(f(f(p))) - p); };
  auto JG = [&f](const VectorXd& p) {
    return MatrixXd(detail::chain_multiplier(f, p, 3) -
                    MatrixXd::Identity(3, 3));
  };
  const NewtonResult polish = newton_solve(G, JG, x_orig, 1e-12, 60);
  const double pscale = std::max(1.0, polish.point.lpNorm<Eigen::Infinity>());
  if (!polish.converged && !(polish.residual_norm <= 1e-9 * pscale)) {
    res.last_good_s = 1;
    return res;
  }
  res.orbit.period = 3;
  VectorXd y = polish.point;
  for (int i = 0; i < 3; ++i) {
    res.orbit.points.push_back(y);
    y = f(y);
  }
  res.orbit.residual = polish.residual_norm / pscale;
  res.orbit.minimal =
      (f(polish.point) - polish.point).lpNorm<Eigen::Infinity>() > 1e-6;
  res.orbit.multiplier_eigen =
      eigenvalues(detail::chain_multiplier(f, polish.point, 3));
  res.success = true;
  return res;
}

// ---- cocycle contraction --------------------------------------------------

struct CocycleReport {
  int N = 0;
  double K = 0;
  double z0_bound = 0;
  std::vector<double> matrix_norm_trace;  // partial-product norms at z0_bound
};

namespace detail {

// A(z) = [[l - a b g, -b^2 g], [a^2 g, l + a b g]], entries at a point z.
inline std::array<double, 4> cocycle_matrix(double l, double a, double b,
                                            double g) {
  return {l - a * b * g, -b * b * g, a * a * g, l + a * b * g};
}

inline std::array<double, 4> mat2_mul(const std::array<double, 4>& A,
                                      const std::array<double, 4>& B) {
  return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
          A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3]};
}

// The proof's norm on 2x2 matrices: 2 max |a_ij|.
inline double mat2_norm(const std::array<double, 4>& A) {
  return 2 * std::max(std::max(std::abs(A[0]), std::abs(A[1])),
                      std::max(std::abs(A[2]), std::abs(A[3])));
}

}  // namespace detail

// ||B(z)|| with B(z) = A(l^{N-1} z) ... A(l z) A(z).
inline double cocycle_product_norm(const Rational& lambda, const MultiPoly& a,
                                   const MultiPoly& b, const MultiPoly& g,
                                   int N, double z,
                                   std::vector<double>* trace = nullptr) {
  const double l = to_double(lambda);
  std::array<double, 4> B{1, 0, 0, 1};
  double zz = z;
  for (int i = 0; i < N; ++i) {
    const double av = evaluate_double(a, {zz});
    const double bv = evaluate_double(b, {zz});
    const double gv = evaluate_double(g, {zz});
    B = detail::mat2_mul(detail::cocycle_matrix(l, av, bv, gv), B);
    if (trace) trace->push_back(detail::mat2_norm(B));
    zz *= l;
  }
  return detail::mat2_norm(B);
}

// N per the proof's inequality 2 N l^{N-1} max{a0^2 g0, b0^2 g0, |a0 b0 g0|}
// < 1, tightened so that ||A(0)^N|| < 1 as well (needed when the max is not
// positive, e.g. g = 0); then the largest sampled z0_bound with
// ||B(z)|| <= K < 1 on 257 Chebyshev samples, by bisection.
inline CocycleReport cocycle_contraction(const Rational& lambda,
                                         const MultiPoly& a, const MultiPoly& b,
                                         const MultiPoly& g, int n_probe = 257) {
  if (!(lambda > 0 && lambda < 1))
    throw std::invalid_argument("need 0 < lambda < 1");
  const Rational a0 = evaluate(a, RatVec{0});
  const Rational b0 = evaluate(b, RatVec{0});
  const Rational g0 = evaluate(g, RatVec{0});
  Rational m = a0 * a0 * g0;
  if (b0 * b0 * g0 > m) m = b0 * b0 * g0;
  if (rat_abs(a0 * b0 * g0) > m) m = rat_abs(a0 * b0 * g0);

  // exact 2x2 power of A(0) for the diagonal check
  auto norm0 = [&](int N) -> Rational {
    const Rational e00 = lambda - a0 * b0 * g0, e01 = -b0 * b0 * g0;
    const Rational e10 = a0 * a0 * g0, e11 = lambda + a0 * b0 * g0;
    Rational B00 = 1, B01 = 0, B10 = 0, B11 = 1;
    for (int i = 0; i < N; ++i) {
      const Rational n00 = e00 * B00 + e01 * B10, n01 = e00 * B01 + e01 * B11;
      const Rational n10 = e10 * B00 + e11 * B10, n11 = e10 * B01 + e11 * B11;
      B00 = n00;
      B01 = n01;
      B10 = n10;
      B11 = n11;
    }
    Rational mx = rat_abs(B00);
    for (const Rational& v : {rat_abs(B01), rat_abs(B10), rat_abs(B11)})
      if (v > mx) mx = v;
    return 2 * mx;
  };

  CocycleReport rep;
  for (int N = 1; N <= 4096; ++N) {
    const bool ineq = 2 * N * rat_pow(lambda, static_cast<unsigned>(N - 1)) * m < 1;
    if ((m <= 0 || ineq) && norm0(N) < 1) {
      rep.N = N;
      break;
    }
  }
  if (rep.N == 0) throw std::runtime_error("no contracting N found");

  auto sampled_K = [&](double zb) {
    double worst = 0;
    for (int i = 0; i < n_probe; ++i) {
      const double z =
          zb * std::cos(M_PI * (2 * i + 1) / (2.0 * n_probe));
      worst = std::max(worst,
                       cocycle_product_norm(lambda, a, b, g, rep.N, z));
    }
    return worst;
  };

  double lo = 0, hi = 1;
  if (sampled_K(hi) < 1) {
    while (hi < (1 << 20) && sampled_K(2 * hi) < 1) hi *= 2;
    lo = hi;
    hi *= 2;
  }
  for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = (lo + hi) / 2;
    (sampled_K(mid) < 1 ? lo : hi) = mid;
  }
  rep.z0_bound = lo;
  rep.K = lo > 0 ? sampled_K(lo) : norm0(rep.N) == 0 ? 0.0 : to_double(norm0(rep.N));
  cocycle_product_norm(lambda, a, b, g, rep.N, lo, &rep.matrix_norm_trace);
  return rep;
}

}  // namespace njl
