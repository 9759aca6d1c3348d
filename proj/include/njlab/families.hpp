#pragma once

#include <stdexcept>
#include <vector>

#include "njlab/classify.hpp"
#include "njlab/polymap.hpp"

namespace njl {

// ---- normal form of the linearly dependent case -------------------------
//
//   X = lambda I + (P, Q, 0)
//   P = -b(z) f(a(z)x + b(z)y) + c(z)
//   Q =  a(z) f(a(z)x + b(z)y) + d(z)
//
// a,b,c,d in R[z] (one variable); f in R[z,t], t last.

struct LdNormalParams {
  Rational lambda;
  MultiPoly a{1}, b{1}, c{1}, d{1};  // polynomials in z
  MultiPoly f{2};                    // polynomial in (z,t)
};

// Shift constants of f into c,d so that f(z,0) = 0.
inline LdNormalParams normalize_ld(LdNormalParams p, MultiPoly* shift = nullptr) {
  MultiPoly f0(1);  // f(z,0) as a polynomial in z
  for (const auto& [e, coef] : p.f.terms())
    if (e[1] == 0) f0.add_term({e[0]}, coef);
  if (!f0.is_zero()) {
    for (const auto& [e, coef] : f0.terms()) p.f.add_term({e[0], 0}, -coef);
    p.c += -(p.b * f0);
    p.d += p.a * f0;
  }
  if (shift) *shift = f0;
  return p;
}

inline PolyMap make_ld_normal(const LdNormalParams& params) {
  const LdNormalParams p = normalize_ld(params);
  const int n = 3;
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const MultiPoly z = MultiPoly::variable(n, 2);
  const MultiPoly a = lift(p.a, n, 2), b = lift(p.b, n, 2);
  const MultiPoly c = lift(p.c, n, 2), d = lift(p.d, n, 2);
  const MultiPoly arg = a * x + b * y;
  const MultiPoly fval = substitute(p.f, std::vector<MultiPoly>{z, arg});
  return PolyMap({p.lambda * x - b * fval + c,
                  p.lambda * y + a * fval + d,
                  p.lambda * z});
}

// ---- escaping-orbit family H = z^{k-1} (x+yz)^{k+1} (-z, 1, 0) ----------

struct Y2Params {
  Rational lambda;
  int k = 1;
  // optional generalization f(t) = z^{m-2}(A_1(z) t + ... + A_m(z) t^m)
  std::vector<MultiPoly> general_coeffs;  // A_1..A_m, polynomials in z
};

inline PolyMap make_y2(const Y2Params& p) {
  if (p.general_coeffs.empty() && p.k < 1)
    throw std::invalid_argument("k must be >= 1");
  const int n = 3;
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const MultiPoly z = MultiPoly::variable(n, 2);
  const MultiPoly base = x + y * z;
  MultiPoly fval(n);
  if (p.general_coeffs.empty()) {
    fval = poly_pow(z, static_cast<unsigned>(p.k - 1)) *
           poly_pow(base, static_cast<unsigned>(p.k + 1));
  } else {
    const int m = static_cast<int>(p.general_coeffs.size());
    if (m < 2) throw std::invalid_argument("need at least A_1, A_2");
    for (int j = 1; j <= m; ++j)
      fval += lift(p.general_coeffs[j - 1], n, 2) *
              poly_pow(base, static_cast<unsigned>(j));
    fval = poly_pow(z, static_cast<unsigned>(m - 2)) * fval;
  }
  return PolyMap({p.lambda * x - z * fval,
                  p.lambda * y + fval,
                  p.lambda * z});
}

// ---- rank-r independent family H_{n,r} ----------------------------------

struct HnrParams {
  int n = 3;
  int r = 2;
  MultiPoly a{1};  // polynomial in x1 with deg a = r
};

// Returns H only (not lambda I + H).
inline PolyMap make_hnr(const HnrParams& p) {
  if (p.a.degree() != p.r) throw std::invalid_argument("deg a must equal r");
  if (p.n < p.r + 1) throw std::invalid_argument("need n >= r+1");
  if (p.r < 2) throw std::invalid_argument("need r >= 2");
  const int n = p.n;
  const MultiPoly x1 = MultiPoly::variable(n, 0), x2 = MultiPoly::variable(n, 1);
  const MultiPoly f = x2 - lift(p.a, n, 0);
  std::vector<MultiPoly> H;
  H.reserve(n);
  H.push_back(f);
  MultiPoly deriv = p.a;  // a^{(i-1)} built incrementally
  Rational factorial = 1;
  for (int i = 2; i <= p.r; ++i) {
    deriv = differentiate(deriv, 0);
    factorial *= (i - 1);
    const Rational coef = (i % 2 == 0 ? Rational(1) : Rational(-1)) / factorial;
    H.push_back(MultiPoly::variable(n, i) +  // x_{i+1}
                coef * lift(deriv, n, 0) *
                    poly_pow(f, static_cast<unsigned>(i - 1)));
  }
  deriv = differentiate(deriv, 0);  // a^{(r)}
  factorial *= p.r;
  const Rational coef_r =
      ((p.r + 1) % 2 == 0 ? Rational(1) : Rational(-1)) / factorial;
  H.push_back(coef_r * lift(deriv, n, 0) *
              poly_pow(f, static_cast<unsigned>(p.r)));
  for (int j = p.r + 2; j <= n; ++j)
    H.push_back(poly_pow(f, static_cast<unsigned>(j - 1)));
  return PolyMap(std::move(H));
}

/// Convenience: H_{n,2} with a(x1) = a x1 + b x1^2 (b != 0).
inline PolyMap make_hn2(int n, const Rational& a, const Rational& b) {
  if (b == 0) throw std::invalid_argument("b must be nonzero");
  MultiPoly ap(1);
  ap.add_term({1}, a);
  ap.add_term({2}, b);
  return make_hnr({n, 2, ap});
}

// ---- reduced linearly independent family (one-variable g) ---------------
//
//   X = lambda I + (0, v1 z, 0) + g(t) (1, -(b1 + 2 v1 alpha x), alpha g(t))
//   t = y + b1 x + v1 alpha x^2,  v1 alpha != 0,  g(0) = 0,  deg g >= 1.

struct LinfParams {
  Rational lambda;
  Rational v1 = 1, alpha = 1, b1 = 0;
  MultiPoly g{1};  // polynomial in t
  Rational beta() const { return v1 * alpha; }
};

inline void check_linf(const LinfParams& p) {
  if (p.v1 * p.alpha == 0) throw std::invalid_argument("v1*alpha must be nonzero");
  if (evaluate(p.g, RatVec{0}) != 0) throw std::invalid_argument("g(0) must be 0");
  if (p.g.degree() < 1) throw std::invalid_argument("deg g must be >= 1");
}

inline MultiPoly linf_t_poly(const LinfParams& p) {
  const int n = 3;
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  return y + p.b1 * x + p.beta() * x * x;
}

inline PolyMap make_linf(const LinfParams& p) {
  check_linf(p);
  const int n = 3;
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const MultiPoly z = MultiPoly::variable(n, 2);
  const MultiPoly t = linf_t_poly(p);
  const MultiPoly gt = substitute(p.g, std::vector<MultiPoly>{t});
  const MultiPoly two_beta_x =
      MultiPoly::constant(n, p.b1) + (2 * p.beta()) * x;
  return PolyMap({p.lambda * x + gt,
                  p.lambda * y + p.v1 * z - two_beta_x * gt,
                  p.lambda * z + p.alpha * gt * gt});
}

// Chart phi(x,y,z) = (lambda x + g(t), t, v1 z + lambda v1 alpha x^2) with
// polynomial inverse; pushing X through it gives
// lambda I + (g'(v)(lambda v + w), w, beta u^2).
inline std::pair<ChartPair, PolyMap> linf_reduction(const LinfParams& p) {
  check_linf(p);
  if (p.lambda == 0) throw std::invalid_argument("lambda must be nonzero");
  const int n = 3;
  const MultiPoly x = MultiPoly::variable(n, 0), y = MultiPoly::variable(n, 1);
  const MultiPoly z = MultiPoly::variable(n, 2);
  const MultiPoly t = linf_t_poly(p);
  const MultiPoly gt = substitute(p.g, std::vector<MultiPoly>{t});
  const PolyMap forward({p.lambda * x + gt,
                         t,
                         p.v1 * z + (p.lambda * p.beta()) * x * x});
  // inverse in coordinates (u,v,w)
  const MultiPoly u = MultiPoly::variable(n, 0), v = MultiPoly::variable(n, 1);
  const MultiPoly w = MultiPoly::variable(n, 2);
  const MultiPoly gv = substitute(p.g, std::vector<MultiPoly>{v});
  const MultiPoly xi = (1 / p.lambda) * (u - gv);
  const MultiPoly yi = v - p.b1 * xi - p.beta() * xi * xi;
  const MultiPoly zi = (1 / p.v1) * (w - (p.lambda * p.beta()) * xi * xi);
  ChartPair chart(forward, PolyMap({xi, yi, zi}), ChartMode::Continuous);
  const PolyMap X = make_linf(p);
  const PolyMap reduced = conjugate_polynomial(X, chart);
  // expected: lambda I + (g'(v)(lambda v + w), w, beta u^2)
  const MultiPoly gprime_v =
      substitute(differentiate(p.g, 0), std::vector<MultiPoly>{v});
  const PolyMap expected({p.lambda * u + gprime_v * (p.lambda * v + w),
                          p.lambda * v + w,
                          p.lambda * w + p.beta() * u * u});
  if (!(reduced == expected)) throw std::logic_error("linf reduction mismatch");
  return {std::move(chart), reduced};
}

// ---- affine-part elimination for degree-one f ---------------------------

struct AffineElimination {
  ChartPair chart;
  LdNormalParams params;  // with c = d = 0
  // Residual affine part left by the conjugation: T o F o T^{-1} equals
  // make_ld_normal(params) + (residual_c(z), residual_d(z), 0). Both are
  // zero exactly when m, n are constants.
  MultiPoly residual_c{1}, residual_d{1};
  bool exact = false;
};

// Coordinate change T(u,v,w) = (u + m(w), v + n(w), w) with (m,n) =
// -(1-lambda)^{-2} [(1-lambda) I + g(w) M(w)] (c,d)^T. Eliminates constant
// affine parts exactly; for z-dependent c,d the shifted copy m(lambda w) -
// m(w) survives, which the result reports instead of hiding.
inline AffineElimination eliminate_affine_part(const Rational& lambda,
                                               const MultiPoly& a,
                                               const MultiPoly& b,
                                               const MultiPoly& c,
                                               const MultiPoly& d,
                                               const MultiPoly& g) {
  if (lambda == 1) throw std::invalid_argument("lambda must differ from 1");
  const Rational s = -1 / ((1 - lambda) * (1 - lambda));
  // (m,n) = s [(1-lambda) I + g M] (c,d)^T,  M = [[-ab, -b^2],[a^2, ab]]
  const MultiPoly m =
      s * ((1 - lambda) * c + g * (-(a * b * c) - b * b * d));
  const MultiPoly n =
      s * ((1 - lambda) * d + g * (a * a * c + a * b * d));
  const int nv = 3;
  const MultiPoly x = MultiPoly::variable(nv, 0), y = MultiPoly::variable(nv, 1);
  const MultiPoly z = MultiPoly::variable(nv, 2);
  const MultiPoly mz = lift(m, nv, 2), nz = lift(n, nv, 2);
  ChartPair chart(PolyMap({x + mz, y + nz, z}), PolyMap({x - mz, y - nz, z}),
                  ChartMode::Discrete);

  MultiPoly f(2);  // f(z,t) = g(z) t
  for (const auto& [e, coef] : g.terms()) f.add_term({e[0], 1}, coef);
  LdNormalParams orig{lambda, a, b, c, d, f};
  const PolyMap F = make_ld_normal(orig);
  const PolyMap conj = conjugate_polynomial(F, chart);

  AffineElimination out{std::move(chart),
                        LdNormalParams{lambda, a, b, MultiPoly(1), MultiPoly(1), f},
                        MultiPoly(1), MultiPoly(1), false};
  const PolyMap target = make_ld_normal(out.params);
  const PolyMap diff = conj - target;
  // diff must be (c~(z), d~(z), 0)
  if (!diff[2].is_zero() || diff[0].degree_in(0) > 0 ||
      diff[0].degree_in(1) > 0 || diff[1].degree_in(0) > 0 ||
      diff[1].degree_in(1) > 0)
    throw std::logic_error("unexpected conjugation shape");
  for (const auto& [e, coef] : diff[0].terms()) out.residual_c.add_term({e[2]}, coef);
  for (const auto& [e, coef] : diff[1].terms()) out.residual_d.add_term({e[2]}, coef);
  out.exact = out.residual_c.is_zero() && out.residual_d.is_zero();
  return out;
}

}  // namespace njl
