#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "revgap/quadrature.hpp"
#include "revgap/rational.hpp"

namespace revgap {

enum class Parity { kAll, kEven, kOdd };

const char* to_string(Parity parity);

/**
 * Orthonormal ultraspherical basis for the weight (1 - t^2)^(lambda - 1/2).
 *
 * The context covers degrees 0..degree_bound-1, restricted to the selected
 * parity. Elements are evaluated through the orthonormal three-term
 * recurrence; lambda = 0 is the Chebyshev case.
 */
class BasisContext {
 public:
  BasisContext(double lambda, std::size_t degree_bound, Parity parity = Parity::kAll);

  /// lambda = m + (n - 2)/2, the weight exponent of <., .>_{m,n}.
  static BasisContext for_harmonic(int n, int m, std::size_t degree_bound,
                                   Parity parity = Parity::kAll);

  double lambda() const { return lambda_; }
  double weight_exponent() const { return lambda_ - 0.5; }
  std::size_t degree_bound() const { return degree_bound_; }
  Parity parity() const { return parity_; }
  /// Number of active elements.
  std::size_t size() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }

  /// Values (and optionally derivatives) of the active elements at t.
  void evaluate(double t, std::span<double> values, std::span<double> derivs = {}) const;

  /// sum_i coeffs[i] * phi_i(t) and its derivative.
  std::pair<double, double> evaluate_expansion(std::span<const double> coeffs, double t) const;

  /// Orthonormal projection of g with respect to the pure Jacobi weight.
  Eigen::VectorXd project(const std::function<double(double)>& g, std::size_t order = 0) const;

  bool same_space(const BasisContext& other) const;

 private:
  double lambda_;
  std::size_t degree_bound_;
  Parity parity_;
  std::vector<int> degrees_;
  std::vector<double> sqrt_beta_;  // sqrt of monic recurrence coefficients, index k = 1..
  double p0_;                      // constant orthonormal element
};

/// C_k^(lambda)(t) by the standard recurrence; lambda = 0 returns Chebyshev T_k.
double gegenbauer_eval(double lambda, int k, double t);

/// int (1 - t^2)^(lambda - 1/2) C_k^(lambda)(t)^2 dt (closed form).
double gegenbauer_norm_squared(double lambda, int k);

/// 1 - (m + k)(m + k + n - 2)/(n - 1), exact.
Rational ball_eigenvalue_exact(int n, int m, int k);
double ball_eigenvalue(int n, int m, int k);

struct Orthonormalization {
  /// phi_k = C_k^(lambda) / sqrt(norms_squared[k]) for each active degree.
  std::vector<double> norms_squared;
  Eigen::MatrixXd gram;
  double max_deviation = 0.0;  // max |gram - I|
  bool ok = true;
  std::string message;
};

/// Normalization constants of the Gegenbauer family and a quadrature self-test of orthonormality.
Orthonormalization orthonormalize(const BasisContext& context, const QuadratureRule& rule);

}  // namespace revgap
