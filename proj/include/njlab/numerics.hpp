#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include "njlab/polymap.hpp"

namespace njl {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> from_eigen(const VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

// Double-precision evaluator for a polynomial map together with its exact
// symbolic Jacobian.
class MapEval {
 public:
  explicit MapEval(PolyMap F) : F_(std::move(F)), J_(jacobian(F_)) {}

  int dim() const { return F_.size(); }
  const PolyMap& map() const { return F_; }

  VectorXd operator()(const VectorXd& x) const {
    std::vector<double> xs = from_eigen(x);
    return to_eigen(evaluate_double(F_, xs));
  }

  MatrixXd jacobian_at(const VectorXd& x) const {
    std::vector<double> xs = from_eigen(x);
    MatrixXd J(J_.rows(), J_.cols());
    for (int i = 0; i < J_.rows(); ++i)
      for (int j = 0; j < J_.cols(); ++j)
        J(i, j) = evaluate_double(J_.at(i, j), xs);
    return J;
  }

 private:
  PolyMap F_;
  PolyMatrix J_;
};

struct NewtonResult {
  VectorXd point;
  double residual_norm = 0;  // sup norm of G at point
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
};

// Damped Newton on a square system: full step, halved up to 30 times while
// the residual does not decrease. Singular Jacobians end the search with
// converged = false.
template <class Fn, class Jn>
NewtonResult newton_solve(Fn&& G, Jn&& J, VectorXd seed, double tol = 1e-12,
                          int maxit = 100) {
  NewtonResult res;
  res.point = std::move(seed);
  VectorXd g = G(res.point);
  res.residual_norm = g.lpNorm<Eigen::Infinity>();
  res.residual_history.push_back(res.residual_norm);
  for (int it = 0; it < maxit; ++it) {
    if (res.residual_norm <= tol) {
      res.converged = true;
      res.iterations = it;
      return res;
    }
    MatrixXd Jx = J(res.point);
    Eigen::FullPivLU<MatrixXd> lu(Jx);
    if (!lu.isInvertible()) {
      res.iterations = it;
      return res;
    }
    const VectorXd step = lu.solve(g);
    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h) {
      VectorXd trial = res.point - scale * step;
      VectorXd gt = G(trial);
      const double nt = gt.lpNorm<Eigen::Infinity>();
      if (nt < res.residual_norm) {
        res.point = std::move(trial);
        g = std::move(gt);
        res.residual_norm = nt;
        res.residual_history.push_back(nt);
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) {
      res.iterations = it;
      return res;
    }
  }
  res.iterations = maxit;
  res.converged = res.residual_norm <= tol;
  return res;
}

inline NewtonResult newton_solve(const MapEval& G, const VectorXd& seed,
                                 double tol = 1e-12, int maxit = 100) {
  return newton_solve([&G](const VectorXd& x) { return G(x); },
                      [&G](const VectorXd& x) { return G.jacobian_at(x); },
                      seed, tol, maxit);
}

struct EigenReport {
  MatrixXd matrix;
  std::vector<std::complex<double>> eigenvalues;  // sorted by (re, im)
  double max_backward_error = 0;
};

inline EigenReport eigenvalues(const MatrixXd& M) {
  EigenReport rep;
  rep.matrix = M;
  Eigen::EigenSolver<MatrixXd> es(M);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue iteration failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    rep.eigenvalues.push_back(vals(k));
    const Eigen::VectorXcd v = vecs.col(k);
    const double err =
        ((M.cast<std::complex<double>>() * v) - vals(k) * v).norm() / v.norm();
    rep.max_backward_error = std::max(rep.max_backward_error, err);
  }
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const auto& a, const auto& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
  return rep;
}

// Central differences, entrywise.
template <class Fn>
MatrixXd fd_jacobian(Fn&& f, const VectorXd& x, double h) {
  if (h <= 0) throw std::invalid_argument("h must be positive");
  const VectorXd f0 = f(x);
  MatrixXd J(f0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    J.col(j) = (f(xp) - f(xm)) / (2 * h);
  }
  return J;
}

}  // namespace njl
