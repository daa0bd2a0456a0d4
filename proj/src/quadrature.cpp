#include "revgap/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "revgap/errors.hpp"

namespace revgap {

double QuadratureRule::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double jacobi_weight_mass(double alpha) {
  if (!(alpha > -1.0)) throw ParameterError("Jacobi exponent must exceed -1");
  return std::exp(std::lgamma(0.5) + std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
}

QuadratureRule gauss_jacobi(std::size_t n, double alpha) {
  if (n < 1) throw ParameterError("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0)) throw ParameterError("gauss_jacobi: alpha must exceed -1");

  QuadratureRule rule;
  rule.alpha = alpha;
  const double mass = jacobi_weight_mass(alpha);
  if (n == 1) {
    rule.nodes = {0.0};
    rule.weights = {mass};
    return rule;
  }

  // Monic recurrence p_{k+1} = t p_k - beta_k p_{k-1}; beta_1 written with the
  // (2 alpha + 1) factor cancelled so alpha = -1/2 needs no special case.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n - 1));
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    double beta;
    if (k == 1) {
      beta = 1.0 / (2.0 * alpha + 3.0);
    } else {
      beta = kk * (kk + 2.0 * alpha) /
             ((2.0 * kk + 2.0 * alpha + 1.0) * (2.0 * kk + 2.0 * alpha - 1.0));
    }
    sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(beta);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw ConditioningError("gauss_jacobi: eigensolver failed");

  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    rule.nodes[i] = values[ii];
    rule.weights[i] = mass * vectors(0, ii) * vectors(0, ii);
  }

  // Symmetrize: the exact rule is invariant under t -> -t.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace revgap
