#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "njlab/rational.hpp"

namespace njl {

// Degree of the zero polynomial.
inline constexpr int kDegNegInf = std::numeric_limits<int>::min();

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are keyed by exponent vector in lexicographic order; no zero
// coefficient is ever stored.
class MultiPoly {
 public:
  using Exps = std::vector<int>;
  using TermMap = std::map<Exps, Rational>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exps(nvars, 0), c);
    return p;
  }

  static MultiPoly variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("variable index");
    MultiPoly p(nvars);
    Exps e(nvars, 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
  }

  static MultiPoly monomial(int nvars, Exps e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars)
      throw std::invalid_argument("exponent length");
    MultiPoly p(nvars);
    p.add_term(std::move(e), c);
    return p;
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(Exps e, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(std::move(e), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coeff(Exps(nvars_, 0)); }

  int degree() const {
    if (terms_.empty()) return kDegNegInf;
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_in(int var) const {
    if (terms_.empty()) return kDegNegInf;
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  // Largest term in lex order.
  const std::pair<const Exps, Rational>& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero");
    return *terms_.rbegin();
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same(b);
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exps e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  friend MultiPoly operator*(const Rational& c, const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : a.terms_) r.terms_.emplace(e, c * k);
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const Rational& c) {
    return c * a;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
    return !(a == b);
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << it->second.get_str();
      for (int i = 0; i < nvars_; ++i) {
        if (it->first[i] == 0) continue;
        os << "*"
           << (i < static_cast<int>(names.size()) ? names[i]
                                                  : "x" + std::to_string(i));
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

 private:
  void check_same(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
  }

  int nvars_;
  TermMap terms_;
};

inline MultiPoly poly_pow(const MultiPoly& p, unsigned k) {
  MultiPoly r = MultiPoly::constant(p.nvars(), 1);
  MultiPoly base = p;
  while (k) {
    if (k & 1u) r = r * base;
    base = base * base;
    k >>= 1u;
  }
  return r;
}

inline MultiPoly differentiate(const MultiPoly& p, int var) {
  if (var < 0 || var >= p.nvars()) throw std::out_of_range("variable index");
  MultiPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    MultiPoly::Exps d = e;
    d[var] -= 1;
    r.add_term(std::move(d), c * e[var]);
  }
  return r;
}

inline Rational evaluate(const MultiPoly& p, const RatVec& x) {
  if (static_cast<int>(x.size()) != p.nvars())
    throw std::invalid_argument("point length");
  Rational s = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational t = c;
    for (int i = 0; i < p.nvars(); ++i)
      if (e[i]) t *= rat_pow(x[i], static_cast<unsigned>(e[i]));
    s += t;
  }
  return s;
}

// Term-by-term evaluation with pairwise summation.
inline double evaluate_double(const MultiPoly& p, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != p.nvars())
    throw std::invalid_argument("point length");
  std::vector<double> vals;
  vals.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) {
    double t = to_double(c);
    for (int i = 0; i < p.nvars(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    vals.push_back(t);
  }
  // pairwise reduce
  while (vals.size() > 1) {
    std::size_t half = (vals.size() + 1) / 2;
    for (std::size_t i = 0; i + half < vals.size(); ++i) vals[i] += vals[i + half];
    vals.resize(half);
  }
  return vals.empty() ? 0.0 : vals[0];
}

// Full substitution: variable i of p is replaced by repl[i]; all repl share
// a common nvars, which becomes the arity of the result.
inline MultiPoly substitute(const MultiPoly& p,
                            const std::vector<MultiPoly>& repl) {
  if (static_cast<int>(repl.size()) != p.nvars())
    throw std::invalid_argument("replacement count");
  int out_vars = repl.empty() ? 0 : repl[0].nvars();
  for (const auto& r : repl)
    if (r.nvars() != out_vars) throw std::invalid_argument("replacement nvars");
  MultiPoly s(out_vars);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(out_vars, c);
    for (int i = 0; i < p.nvars(); ++i)
      if (e[i]) t = t * poly_pow(repl[i], static_cast<unsigned>(e[i]));
    s += t;
  }
  return s;
}

// Partial substitution: vars not present in the assignment stay themselves.
inline MultiPoly substitute(const MultiPoly& p,
                            const std::map<int, MultiPoly>& assignment) {
  std::vector<MultiPoly> repl;
  repl.reserve(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) {
    auto it = assignment.find(i);
    repl.push_back(it != assignment.end() ? it->second
                                          : MultiPoly::variable(p.nvars(), i));
  }
  return substitute(p, repl);
}

// Exact multivariate division: returns p/q when q divides p, nullopt
// otherwise. Single-divisor lex division; a singleton set is a Groebner
// basis of its ideal, so the remainder is zero exactly when q | p.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& p,
                                             const MultiPoly& q) {
  if (p.nvars() != q.nvars()) throw std::invalid_argument("nvars mismatch");
  if (q.is_zero()) return std::nullopt;
  MultiPoly rem = p;
  MultiPoly quot(p.nvars());
  const auto& [lq, cq] = q.leading_term();
  while (!rem.is_zero()) {
    const auto& [lr, cr] = rem.leading_term();
    MultiPoly::Exps d(p.nvars());
    bool divides = true;
    for (int i = 0; i < p.nvars(); ++i) {
      d[i] = lr[i] - lq[i];
      if (d[i] < 0) {
        divides = false;
        break;
      }
    }
    if (!divides) return std::nullopt;
    MultiPoly t = MultiPoly::monomial(p.nvars(), d, cr / cq);
    quot += t;
    rem -= t * q;
  }
  return quot;
}

// Lift a polynomial in fewer variables into nvars variables by mapping its
// variable i to variable offset+i.
inline MultiPoly lift(const MultiPoly& p, int nvars, int offset) {
  MultiPoly r(nvars);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly::Exps f(nvars, 0);
    for (int i = 0; i < p.nvars(); ++i) f[offset + i] = e[i];
    r.add_term(std::move(f), c);
  }
  return r;
}

}  // namespace njl
