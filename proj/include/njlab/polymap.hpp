#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "njlab/multipoly.hpp"

namespace njl {

// Tuple of polynomials in a common set of variables.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<MultiPoly> components)
      : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("empty map");
    for (const auto& c : components_)
      if (c.nvars() != components_[0].nvars())
        throw std::invalid_argument("component nvars mismatch");
  }

  static PolyMap identity(int n) {
    std::vector<MultiPoly> c;
    c.reserve(n);
    for (int i = 0; i < n; ++i) c.push_back(MultiPoly::variable(n, i));
    return PolyMap(std::move(c));
  }

  static PolyMap scalar(int n, const Rational& lam) {
    std::vector<MultiPoly> c;
    c.reserve(n);
    for (int i = 0; i < n; ++i)
      c.push_back(lam * MultiPoly::variable(n, i));
    return PolyMap(std::move(c));
  }

  int nvars() const { return components_.at(0).nvars(); }
  int size() const { return static_cast<int>(components_.size()); }
  bool square() const { return size() == nvars(); }
  const MultiPoly& operator[](int i) const { return components_.at(i); }
  const std::vector<MultiPoly>& components() const { return components_; }

  friend PolyMap operator+(const PolyMap& a, const PolyMap& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    std::vector<MultiPoly> c;
    c.reserve(a.size());
    for (int i = 0; i < a.size(); ++i) c.push_back(a[i] + b[i]);
    return PolyMap(std::move(c));
  }
  friend PolyMap operator-(const PolyMap& a, const PolyMap& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    std::vector<MultiPoly> c;
    c.reserve(a.size());
    for (int i = 0; i < a.size(); ++i) c.push_back(a[i] - b[i]);
    return PolyMap(std::move(c));
  }
  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<MultiPoly> components_;
};

inline RatVec evaluate(const PolyMap& F, const RatVec& x) {
  RatVec y;
  y.reserve(F.size());
  for (int i = 0; i < F.size(); ++i) y.push_back(evaluate(F[i], x));
  return y;
}

inline std::vector<double> evaluate_double(const PolyMap& F,
                                           const std::vector<double>& x) {
  std::vector<double> y;
  y.reserve(F.size());
  for (int i = 0; i < F.size(); ++i) y.push_back(evaluate_double(F[i], x));
  return y;
}

// F o G, exact.
inline PolyMap compose_map(const PolyMap& F, const PolyMap& G) {
  if (F.nvars() != G.size()) throw std::invalid_argument("arity mismatch");
  std::vector<MultiPoly> c;
  c.reserve(F.size());
  for (int i = 0; i < F.size(); ++i) c.push_back(substitute(F[i], G.components()));
  return PolyMap(std::move(c));
}

// Grid of polynomials sharing one variable set.
class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, int nvars)
      : rows_(rows), cols_(cols), entries_(rows * cols, MultiPoly(nvars)) {}

  static PolyMatrix identity(int n, int nvars) {
    PolyMatrix m(n, n, nvars);
    for (int i = 0; i < n; ++i) m.at(i, i) = MultiPoly::constant(nvars, 1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return entries_.at(0).nvars(); }
  MultiPoly& at(int i, int j) { return entries_.at(i * cols_ + j); }
  const MultiPoly& at(int i, int j) const { return entries_.at(i * cols_ + j); }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dim mismatch");
    PolyMatrix r(a.rows_, b.cols_, a.nvars());
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        MultiPoly s(a.nvars());
        for (int k = 0; k < a.cols_; ++k) s += a.at(i, k) * b.at(k, j);
        r.at(i, j) = std::move(s);
      }
    return r;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  int rows_, cols_;
  std::vector<MultiPoly> entries_;
};

inline PolyMatrix jacobian(const PolyMap& F) {
  PolyMatrix J(F.size(), F.nvars(), F.nvars());
  for (int i = 0; i < F.size(); ++i)
    for (int j = 0; j < F.nvars(); ++j) J.at(i, j) = differentiate(F[i], j);
  return J;
}

inline RatMat evaluate(const PolyMatrix& M, const RatVec& x) {
  RatMat r(M.rows(), RatVec(M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) r[i][j] = evaluate(M.at(i, j), x);
  return r;
}

// Exact k-th power by repeated squaring; k = 0 gives the identity.
inline PolyMatrix mat_pow(const PolyMatrix& M, unsigned k) {
  if (M.rows() != M.cols()) throw std::invalid_argument("non-square matrix");
  PolyMatrix r = PolyMatrix::identity(M.rows(), M.nvars());
  PolyMatrix base = M;
  while (k) {
    if (k & 1u) r = r * base;
    base = base * base;
    k >>= 1u;
  }
  return r;
}

// ---- exact rational linear algebra -------------------------------------

inline std::optional<RatMat> rat_inverse(const RatMat& A) {
  const int n = static_cast<int>(A.size());
  RatMat w = A;
  RatMat inv(n, RatVec(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (w[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(w[piv], w[col]);
    std::swap(inv[piv], inv[col]);
    Rational d = w[col][col];
    for (int j = 0; j < n; ++j) {
      w[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || w[r][col] == 0) continue;
      Rational f = w[r][col];
      for (int j = 0; j < n; ++j) {
        w[r][j] -= f * w[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline int rat_rank(RatMat w) {
  if (w.empty()) return 0;
  const int rows = static_cast<int>(w.size());
  const int cols = static_cast<int>(w[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (w[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[piv], w[rank]);
    Rational d = w[rank][col];
    for (int j = col; j < cols; ++j) w[rank][j] /= d;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || w[r][col] == 0) continue;
      Rational f = w[r][col];
      for (int j = col; j < cols; ++j) w[r][j] -= f * w[rank][j];
    }
    ++rank;
  }
  return rank;
}

// One nonzero kernel vector of A (A x = 0), normalized so the first nonzero
// entry is 1; nullopt when A has full column rank.
inline std::optional<RatVec> rat_kernel_vector(const RatMat& A) {
  if (A.empty()) return std::nullopt;
  const int rows = static_cast<int>(A.size());
  const int cols = static_cast<int>(A[0].size());
  RatMat w = A;
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (w[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[piv], w[rank]);
    Rational d = w[rank][col];
    for (int j = col; j < cols; ++j) w[rank][j] /= d;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || w[r][col] == 0) continue;
      Rational f = w[r][col];
      for (int j = col; j < cols; ++j) w[r][j] -= f * w[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank == cols) return std::nullopt;
  // first free column
  int free_col = 0;
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  while (is_pivot[free_col]) ++free_col;
  RatVec x(cols, 0);
  x[free_col] = 1;
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = -w[r][free_col];
  // normalize: first nonzero entry = 1
  for (int i = 0; i < cols; ++i)
    if (x[i] != 0) {
      Rational d = x[i];
      for (auto& v : x) v /= d;
      break;
    }
  return x;
}

inline Rational rat_det(RatMat w) {
  const int n = static_cast<int>(w.size());
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (w[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(w[piv], w[col]);
      det = -det;
    }
    det *= w[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (w[r][col] == 0) continue;
      Rational f = w[r][col] / w[col][col];
      for (int j = col; j < n; ++j) w[r][j] -= f * w[col][j];
    }
  }
  return det;
}

// ---- conjugation --------------------------------------------------------

inline PolyMap apply_linear(const RatMat& T, const PolyMap& F) {
  const int n = F.size();
  std::vector<MultiPoly> c;
  c.reserve(n);
  for (int i = 0; i < n; ++i) {
    MultiPoly s(F.nvars());
    for (int j = 0; j < n; ++j) s += T[i][j] * F[j];
    c.push_back(std::move(s));
  }
  return PolyMap(std::move(c));
}

inline PolyMap linear_map(const RatMat& T, int nvars) {
  std::vector<MultiPoly> c;
  for (const auto& row : T) {
    MultiPoly s(nvars);
    for (int j = 0; j < nvars; ++j)
      s += row[j] * MultiPoly::variable(nvars, j);
    c.push_back(std::move(s));
  }
  return PolyMap(std::move(c));
}

// T o F o T^{-1}; identical for the continuous and discrete readings when T
// is linear.
inline PolyMap conjugate_linear(const PolyMap& F, const RatMat& T) {
  auto Tinv = rat_inverse(T);
  if (!Tinv) throw std::invalid_argument("singular change of coordinates");
  return apply_linear(T, compose_map(F, linear_map(*Tinv, F.nvars())));
}

enum class ChartMode { Continuous, Discrete };

// Polynomial coordinate change with polynomial inverse, checked symbolically
// at construction.
class ChartPair {
 public:
  ChartPair(PolyMap forward, PolyMap inverse, ChartMode mode)
      : forward_(std::move(forward)), inverse_(std::move(inverse)), mode_(mode) {
    const PolyMap id = PolyMap::identity(forward_.nvars());
    if (!(compose_map(forward_, inverse_) == id) ||
        !(compose_map(inverse_, forward_) == id))
      throw std::invalid_argument("chart pair is not inverse");
  }

  static ChartPair identity(int n, ChartMode mode) {
    return ChartPair(PolyMap::identity(n), PolyMap::identity(n), mode);
  }

  const PolyMap& forward() const { return forward_; }
  const PolyMap& inverse() const { return inverse_; }
  ChartMode mode() const { return mode_; }

 private:
  PolyMap forward_;
  PolyMap inverse_;
  ChartMode mode_;
};

// Pushforward of F through the chart. Discrete: forward o F o inverse.
// Continuous: Jforward(inverse(y)) . F(inverse(y)).
inline PolyMap conjugate_polynomial(const PolyMap& F, const ChartPair& chart) {
  if (chart.mode() == ChartMode::Discrete)
    return compose_map(chart.forward(), compose_map(F, chart.inverse()));
  const PolyMatrix J = jacobian(chart.forward());
  const int n = F.size();
  std::vector<MultiPoly> c;
  c.reserve(n);
  for (int i = 0; i < n; ++i) {
    MultiPoly s(F.nvars());
    for (int j = 0; j < n; ++j) s += J.at(i, j) * F[j];
    c.push_back(substitute(s, chart.inverse().components()));
  }
  return PolyMap(std::move(c));
}

// Residual of the semiconjugacy JT(x).F(x) = G(T(x)); zero certifies that T
// carries orbits of F onto orbits of G (continuous time).
inline PolyMap semiconjugacy_residual(const PolyMap& F, const PolyMap& T,
                                      const PolyMap& G) {
  const PolyMatrix J = jacobian(T);
  std::vector<MultiPoly> c;
  for (int i = 0; i < T.size(); ++i) {
    MultiPoly s(F.nvars());
    for (int j = 0; j < F.size(); ++j) s += J.at(i, j) * F[j];
    c.push_back(s - substitute(G[i], T.components()));
  }
  return PolyMap(std::move(c));
}

}  // namespace njl
