#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "njlab/multipoly.hpp"

namespace njl {

// Quotient of two polynomials. Kept lightly normalized: common monomial
// content cancelled, exact polynomial quotients collapsed, zero stored as
// 0/1. Enough for the chart computations here; no full gcd.
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(MultiPoly num)
      : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), 1)) {}
  RatFun(MultiPoly num, MultiPoly den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    normalize();
  }

  static RatFun constant(int nvars, const Rational& c) {
    return RatFun(MultiPoly::constant(nvars, c));
  }
  static RatFun variable(int nvars, int i) {
    return RatFun(MultiPoly::variable(nvars, i));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  bool is_polynomial() const { return den_ == MultiPoly::constant(nvars(), 1); }

  // Exact conversion; nullopt when the denominator does not divide out.
  std::optional<MultiPoly> to_polynomial() const {
    return divide_exact(num_, den_);
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a) { return RatFun(-a.num_, a.den_); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RatFun operator*(const Rational& c, const RatFun& a) {
    return RatFun(c * a.num_, a.den_);
  }

  // Equality as rational functions: cross-multiplied.
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  void normalize() {
    const int n = num_.nvars();
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(n, 1);
      return;
    }
    // cancel the common monomial content of numerator and denominator
    MultiPoly::Exps m(n, std::numeric_limits<int>::max());
    auto meet = [&m, n](const MultiPoly& p) {
      for (const auto& [e, c] : p.terms())
        for (int i = 0; i < n; ++i) m[i] = std::min(m[i], e[i]);
    };
    meet(num_);
    meet(den_);
    bool nontrivial = false;
    for (int i = 0; i < n; ++i) nontrivial |= m[i] > 0;
    if (nontrivial) {
      const MultiPoly mono = MultiPoly::monomial(n, m, 1);
      num_ = *divide_exact(num_, mono);
      den_ = *divide_exact(den_, mono);
    }
    if (auto q = divide_exact(num_, den_)) {
      num_ = std::move(*q);
      den_ = MultiPoly::constant(n, 1);
      return;
    }
    // scale the denominator leading coefficient to 1
    const Rational lc = den_.leading_term().second;
    if (lc != 1) {
      const Rational inv = 1 / lc;
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  MultiPoly num_{MultiPoly(0)};
  MultiPoly den_{MultiPoly(0)};
};

inline RatFun differentiate(const RatFun& r, int var) {
  return RatFun(differentiate(r.num(), var) * r.den() -
                    r.num() * differentiate(r.den(), var),
                r.den() * r.den());
}

// p(args[0], ..., args[k-1]) over a single common denominator.
inline RatFun substitute(const MultiPoly& p, const std::vector<RatFun>& args) {
  if (static_cast<int>(args.size()) != p.nvars())
    throw std::invalid_argument("argument count");
  const int k = p.nvars();
  const int out_vars = args.empty() ? 0 : args[0].nvars();
  std::vector<int> maxdeg(k, 0);
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < k; ++i) maxdeg[i] = std::max(maxdeg[i], e[i]);
  MultiPoly num(out_vars);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(out_vars, c);
    for (int i = 0; i < k; ++i) {
      t = t * poly_pow(args[i].num(), static_cast<unsigned>(e[i]));
      t = t * poly_pow(args[i].den(), static_cast<unsigned>(maxdeg[i] - e[i]));
    }
    num += t;
  }
  MultiPoly den = MultiPoly::constant(out_vars, 1);
  for (int i = 0; i < k; ++i)
    den = den * poly_pow(args[i].den(), static_cast<unsigned>(maxdeg[i]));
  return RatFun(std::move(num), std::move(den));
}

inline RatFun substitute(const RatFun& r, const std::vector<RatFun>& args) {
  return substitute(r.num(), args) / substitute(r.den(), args);
}

}  // namespace njl
