#pragma once

#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "njlab/polymap.hpp"

namespace njl {

inline bool is_nilpotent(const PolyMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("non-square matrix");
  return mat_pow(M, static_cast<unsigned>(M.rows())).is_zero();
}

// Nonzero rational alpha with sum alpha_i p_i = 0, or nullopt. Exact
// null-space of the monomial-coefficient matrix; a rational kernel certifies
// dependence over R as well.
inline std::optional<RatVec> linear_dependence(
    const std::vector<MultiPoly>& polys) {
  if (polys.empty()) throw std::invalid_argument("empty list");
  std::set<MultiPoly::Exps> monos;
  for (const auto& p : polys)
    for (const auto& [e, c] : p.terms()) monos.insert(e);
  if (monos.empty()) {
    // all polynomials zero
    RatVec a(polys.size(), 0);
    a[0] = 1;
    return a;
  }
  RatMat A(monos.size(), RatVec(polys.size(), 0));
  int row = 0;
  for (const auto& e : monos) {
    for (std::size_t j = 0; j < polys.size(); ++j) A[row][j] = polys[j].coeff(e);
    ++row;
  }
  return rat_kernel_vector(A);
}

// Nonzero alpha with alpha^T M = 0, or nullopt.
inline std::optional<RatVec> row_dependence(const PolyMatrix& M) {
  std::vector<MultiPoly> rows_as_one;
  // stack the columns: row i of M becomes one long coefficient vector
  std::set<std::pair<int, MultiPoly::Exps>> monos;
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i)
      for (const auto& [e, c] : M.at(i, j).terms()) monos.insert({j, e});
  if (monos.empty()) {
    RatVec a(M.rows(), 0);
    a[0] = 1;
    return a;
  }
  RatMat A(monos.size(), RatVec(M.rows(), 0));
  int row = 0;
  for (const auto& [j, e] : monos) {
    for (int i = 0; i < M.rows(); ++i) A[row][i] = M.at(i, j).coeff(e);
    ++row;
  }
  return rat_kernel_vector(A);
}

inline MultiPoly poly_det(const PolyMatrix& M) {
  const int n = M.rows();
  if (n != M.cols()) throw std::invalid_argument("non-square matrix");
  if (n == 1) return M.at(0, 0);
  MultiPoly det(M.nvars());
  for (int i = 0; i < n; ++i) {
    if (M.at(i, 0).is_zero()) continue;
    PolyMatrix minor(n - 1, n - 1, M.nvars());
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (int c = 1; c < n; ++c) minor.at(rr, c - 1) = M.at(r, c);
      ++rr;
    }
    MultiPoly cof = M.at(i, 0) * poly_det(minor);
    if (i % 2)
      det -= cof;
    else
      det += cof;
  }
  return det;
}

namespace detail {

inline bool any_nonzero_minor(const PolyMatrix& M, int k) {
  std::vector<int> rs(k), cs(k);
  // iterate k-subsets of rows and columns
  std::vector<int> ridx(k), cidx(k);
  for (int i = 0; i < k; ++i) ridx[i] = i;
  auto next_subset = [](std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
      if (idx[i] < n - (k - i)) {
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    for (int i = 0; i < k; ++i) cidx[i] = i;
    do {
      PolyMatrix sub(k, k, M.nvars());
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub.at(i, j) = M.at(ridx[i], cidx[j]);
      if (!poly_det(sub).is_zero()) return true;
    } while (next_subset(cidx, M.cols()));
  } while (next_subset(ridx, M.rows()));
  return false;
}

inline RatVec random_rational_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  RatVec x;
  x.reserve(n);
  for (int i = 0; i < n; ++i) x.emplace_back(num(rng), den(rng));
  return x;
}

}  // namespace detail

// Rank over the fraction field. Lower bound from evaluation at 8 seeded
// rational points, then certified upward: r is final once every (r+1)-minor
// is the zero polynomial.
inline int rank_function_field(const PolyMatrix& M) {
  const int maxr = std::min(M.rows(), M.cols());
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  int r = 0;
  for (int s = 0; s < 8; ++s) {
    const RatVec x = detail::random_rational_point(rng, M.nvars());
    r = std::max(r, rat_rank(evaluate(M, x)));
    if (r == maxr) return r;
  }
  while (r < maxr && detail::any_nonzero_minor(M, r + 1)) ++r;
  return r;
}

enum class Verdict { N_ld, N_li, not_in_N };

struct ClassificationReport {
  Rational lambda;
  int n = 0;
  bool is_nilpotent = false;
  bool in_N = false;
  bool fixes_origin = false;
  std::optional<RatVec> dependence_kernel_components;
  std::optional<RatVec> dependence_kernel_rows;
  int rank_JH = 0;
  Verdict verdict = Verdict::not_in_N;
  bool myc_hypothesis = false;   // lambda < 0
  bool dmyc_hypothesis = false;  // |lambda| < 1
};

inline ClassificationReport classify_field(const PolyMap& F,
                                           const Rational& lambda) {
  if (!F.square()) throw std::invalid_argument("non-square map");
  ClassificationReport rep;
  rep.lambda = lambda;
  rep.n = F.size();
  const PolyMap H = F - PolyMap::scalar(F.size(), lambda);
  const PolyMatrix JH = jacobian(H);
  rep.is_nilpotent = is_nilpotent(JH);
  rep.in_N = rep.is_nilpotent;
  rep.fixes_origin = evaluate(F, RatVec(F.size(), 0)) == RatVec(F.size(), 0);
  rep.dependence_kernel_components = linear_dependence(H.components());
  rep.dependence_kernel_rows = row_dependence(JH);
  rep.rank_JH = rank_function_field(JH);
  if (!rep.in_N)
    rep.verdict = Verdict::not_in_N;
  else
    rep.verdict =
        rep.dependence_kernel_components ? Verdict::N_ld : Verdict::N_li;
  // components dependent iff rows dependent, for nilpotent fields fixing 0
  if (rep.in_N && rep.fixes_origin &&
      rep.dependence_kernel_components.has_value() !=
          rep.dependence_kernel_rows.has_value())
    throw std::logic_error("component/row dependence equivalence violated");
  rep.myc_hypothesis = lambda < 0;
  rep.dmyc_hypothesis = rat_abs(lambda) < 1;
  return rep;
}

// Linear triangularizability of the normal form lambda I +
// f(ax+by)(-b,a,0) + (c,d,0): holds iff f is constant in t or {a,b} are
// dependent over R. a,b,c,d in R[z]; f in R[z,t] with t the last variable.
inline bool litri_test(const MultiPoly& a, const MultiPoly& b,
                       const MultiPoly& /*c*/, const MultiPoly& /*d*/,
                       const MultiPoly& f) {
  if (f.degree_in(1) <= 0) return true;
  return linear_dependence({a, b}).has_value();
}

// Explicit triangularizing matrix for the positive litri cases.
inline RatMat litri_triangularizer(const MultiPoly& a, const MultiPoly& b,
                                   const MultiPoly& f) {
  if (f.degree_in(1) <= 0) {
    // components depend on z only: cycle (x,y,z) -> (z,x,y)
    return {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  }
  auto ker = linear_dependence({a, b});
  if (!ker) throw std::invalid_argument("not linearly triangularizable");
  const Rational alpha = (*ker)[0], beta = (*ker)[1];
  if (beta != 0) {
    const Rational delta = -alpha / beta;  // b = delta a
    return {{0, 0, 1}, {1, delta, 0}, {0, 1, 0}};
  }
  // alpha a = 0 with alpha != 0, so a = 0: x-component decouples
  return {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
}

inline bool is_triangular(const PolyMap& F) {
  for (int i = 0; i < F.size(); ++i)
    for (int j = i + 1; j < F.nvars(); ++j)
      if (F[i].degree_in(j) > 0) return false;
  return true;
}

struct ClaReport {
  MultiPoly A_poly{3};
  MultiPoly B_poly{3};
  int deg_z_uA = kDegNegInf;
  int deg_z_vB = kDegNegInf;
  bool condition_holds = false;
};

// Triangularizability criterion data for H = (u, v, h(u,v)) in (x,y,z).
inline ClaReport cla_condition(const MultiPoly& u, const MultiPoly& v) {
  ClaReport rep;
  const MultiPoly ux = differentiate(u, 0), uz = differentiate(u, 2);
  const MultiPoly vx = differentiate(v, 0), vz = differentiate(v, 2);
  const MultiPoly uy = differentiate(u, 1), vy = differentiate(v, 1);
  rep.A_poly = vx * uz - ux * vz;
  rep.B_poly = vy * uz - uy * vz;
  rep.deg_z_uA = (u * rep.A_poly).degree_in(2);
  rep.deg_z_vB = (v * rep.B_poly).degree_in(2);
  rep.condition_holds = rep.deg_z_uA != rep.deg_z_vB;
  return rep;
}

// Prop 2.1(3)-style reduction: a linear change making the last component of
// H identically zero.
inline std::pair<ChartPair, PolyMap> prop21_reduce(const PolyMap& F,
                                                   const Rational& lambda) {
  const int n = F.size();
  const PolyMap H = F - PolyMap::scalar(n, lambda);
  auto ker = linear_dependence(H.components());
  if (!ker) throw std::invalid_argument("field is not in N_ld");
  const RatVec& alpha = *ker;
  int piv = -1;
  for (int i = n - 1; i >= 0; --i)
    if (alpha[i] != 0) {
      piv = i;
      break;
    }
  RatMat T(n, RatVec(n, 0));
  int row = 0;
  for (int i = 0; i < n; ++i) {
    if (i == piv) continue;
    T[row][i] = 1;
    ++row;
  }
  T[n - 1] = alpha;
  const PolyMap reduced = conjugate_linear(F, T);
  const MultiPoly last_H =
      reduced[n - 1] - lambda * MultiPoly::variable(n, n - 1);
  if (!last_H.is_zero()) throw std::logic_error("reduction failed");
  auto Tinv = rat_inverse(T);
  ChartPair chart(linear_map(T, n), linear_map(*Tinv, n), ChartMode::Discrete);
  return {std::move(chart), reduced};
}

}  // namespace njl
