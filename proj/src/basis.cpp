#include "revgap/basis.hpp"

#include <cmath>
#include <numbers>

#include "revgap/errors.hpp"

namespace revgap {

const char* to_string(Parity parity) {
  switch (parity) {
    case Parity::kEven:
      return "even";
    case Parity::kOdd:
      return "odd";
    default:
      return "all";
  }
}

BasisContext::BasisContext(double lambda, std::size_t degree_bound, Parity parity)
    : lambda_(lambda), degree_bound_(degree_bound), parity_(parity) {
  if (!(lambda >= 0.0)) throw ParameterError("Gegenbauer parameter must be non-negative");
  if (degree_bound < 1) throw ParameterError("basis needs at least one degree");
  for (std::size_t k = 0; k < degree_bound; ++k) {
    const bool even = k % 2 == 0;
    if (parity == Parity::kAll || (parity == Parity::kEven) == even) {
      degrees_.push_back(static_cast<int>(k));
    }
  }
  if (degrees_.empty()) throw ParameterError("basis has no element of the requested parity");

  const double alpha = lambda - 0.5;
  sqrt_beta_.assign(degree_bound + 1, 0.0);
  for (std::size_t k = 1; k <= degree_bound; ++k) {
    const double kk = static_cast<double>(k);
    const double beta = k == 1 ? 1.0 / (2.0 * alpha + 3.0)
                               : kk * (kk + 2.0 * alpha) /
                                     ((2.0 * kk + 2.0 * alpha + 1.0) * (2.0 * kk + 2.0 * alpha - 1.0));
    sqrt_beta_[k] = std::sqrt(beta);
  }
  p0_ = 1.0 / std::sqrt(jacobi_weight_mass(alpha));
}

BasisContext BasisContext::for_harmonic(int n, int m, std::size_t degree_bound, Parity parity) {
  if (n < 2 || m < 0) throw ParameterError("for_harmonic: need n >= 2 and m >= 0");
  return BasisContext(m + 0.5 * (n - 2), degree_bound, parity);
}

void BasisContext::evaluate(double t, std::span<double> values, std::span<double> derivs) const {
  if (values.size() < degrees_.size()) throw UsageError("evaluate: output span too small");
  const bool want_d = !derivs.empty();
  if (want_d && derivs.size() < degrees_.size()) throw UsageError("evaluate: derivative span too small");

  // Orthonormal recurrence: sqrt(b_{k+1}) p_{k+1} = t p_k - sqrt(b_k) p_{k-1}.
  double prev = 0.0, cur = p0_;
  double dprev = 0.0, dcur = 0.0;
  std::size_t out = 0;
  for (std::size_t k = 0; k < degree_bound_ && out < degrees_.size(); ++k) {
    if (static_cast<std::size_t>(degrees_[out]) == k) {
      values[out] = cur;
      if (want_d) derivs[out] = dcur;
      ++out;
    }
    const double next = (t * cur - sqrt_beta_[k] * prev) / sqrt_beta_[k + 1];
    const double dnext = (cur + t * dcur - sqrt_beta_[k] * dprev) / sqrt_beta_[k + 1];
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
  }
}

std::pair<double, double> BasisContext::evaluate_expansion(std::span<const double> coeffs,
                                                           double t) const {
  if (coeffs.size() != degrees_.size()) throw UsageError("coefficient vector does not match basis size");
  std::vector<double> v(degrees_.size()), d(degrees_.size());
  evaluate(t, v, d);
  double value = 0.0, deriv = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    value += coeffs[i] * v[i];
    deriv += coeffs[i] * d[i];
  }
  return {value, deriv};
}

Eigen::VectorXd BasisContext::project(const std::function<double(double)>& g, std::size_t order) const {
  if (order == 0) order = oversampled_order(degree_bound_);
  const auto rule = gauss_jacobi(order, weight_exponent());
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  std::vector<double> v(size());
  for (std::size_t q = 0; q < rule.order(); ++q) {
    evaluate(rule.nodes[q], v);
    const double gw = rule.weights[q] * g(rule.nodes[q]);
    for (std::size_t i = 0; i < v.size(); ++i) coeffs[static_cast<Eigen::Index>(i)] += gw * v[i];
  }
  return coeffs;
}

bool BasisContext::same_space(const BasisContext& other) const {
  return std::abs(lambda_ - other.lambda_) < 1e-14 && degree_bound_ == other.degree_bound_ &&
         parity_ == other.parity_;
}

double gegenbauer_eval(double lambda, int k, double t) {
  if (k < 0) throw ParameterError("Gegenbauer degree must be non-negative");
  if (k == 0) return 1.0;
  if (lambda == 0.0) {
    double prev = 1.0, cur = t;
    for (int j = 1; j < k; ++j) {
      const double next = 2.0 * t * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  double prev = 1.0, cur = 2.0 * lambda * t;
  for (int j = 1; j < k; ++j) {
    const double next = (2.0 * t * (j + lambda) * cur - (j + 2.0 * lambda - 1.0) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_norm_squared(double lambda, int k) {
  if (k < 0) throw ParameterError("Gegenbauer degree must be non-negative");
  if (lambda == 0.0) return k == 0 ? std::numbers::pi : 0.5 * std::numbers::pi;
  const double log_h = std::log(std::numbers::pi) + (1.0 - 2.0 * lambda) * std::log(2.0) +
                       std::lgamma(k + 2.0 * lambda) - std::lgamma(k + 1.0) - std::log(k + lambda) -
                       2.0 * std::lgamma(lambda);
  return std::exp(log_h);
}

Rational ball_eigenvalue_exact(int n, int m, int k) {
  if (n < 2 || m < 0 || k < 0) throw ParameterError("ball_eigenvalue: need n >= 2, m >= 0, k >= 0");
  const std::int64_t j = m + k;
  return Rational(1) - Rational(j * (j + n - 2), n - 1);
}

double ball_eigenvalue(int n, int m, int k) { return ball_eigenvalue_exact(n, m, k).to_double(); }

Orthonormalization orthonormalize(const BasisContext& context, const QuadratureRule& rule) {
  if (std::abs(rule.alpha - context.weight_exponent()) > 1e-14) {
    throw UsageError("orthonormalize: rule exponent does not match lambda - 1/2");
  }
  Orthonormalization result;
  const std::size_t size = context.size();
  for (int k : context.degrees()) result.norms_squared.push_back(gegenbauer_norm_squared(context.lambda(), k));

  result.gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  std::vector<double> v(size);
  for (std::size_t q = 0; q < rule.order(); ++q) {
    for (std::size_t i = 0; i < size; ++i) {
      v[i] = gegenbauer_eval(context.lambda(), context.degrees()[i], rule.nodes[q]) /
             std::sqrt(result.norms_squared[i]);
    }
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        result.gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += rule.weights[q] * v[i] * v[j];
      }
    }
  }
  result.max_deviation =
      (result.gram - Eigen::MatrixXd::Identity(result.gram.rows(), result.gram.cols())).cwiseAbs().maxCoeff();
  const int max_degree = context.degrees().back();
  if (2 * static_cast<std::size_t>(max_degree) > 2 * rule.order() - 1) {
    result.ok = false;
    result.message = "quadrature order " + std::to_string(rule.order()) +
                     " cannot resolve degree " + std::to_string(max_degree) + " products";
  } else if (result.max_deviation > 1e-10) {
    result.ok = false;
    result.message = "Gram deviation " + std::to_string(result.max_deviation) + " exceeds 1e-10";
  }
  return result;
}

}  // namespace revgap
