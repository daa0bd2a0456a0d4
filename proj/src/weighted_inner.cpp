#include "revgap/weighted_inner.hpp"

#include <cmath>

#include "revgap/errors.hpp"

namespace revgap {

WeightValue weight_w(const DimensionedProfile& dprofile, int m, double t) {
  if (m < 0) throw ParameterError("harmonic degree m must be non-negative");
  WeightValue w;
  w.exponent = harmonic_weight_exponent(dprofile.n, m);
  const double s = 1.0 - t * t;
  if (std::abs(t) >= 1.0 && w.exponent < 0.0) {
    throw SingularPointError("w_{m,n} is singular at t = +-1 for exponent " + std::to_string(w.exponent));
  }
  const auto v = dprofile.profile.eval(t);
  const double va1 = -t * v.d1 + v.value;
  const double va2 = s * v.d2 + va1;
  w.smooth = va2 * std::pow(va1, dprofile.n - 2) / (dprofile.n * v.value);
  w.singular = w.exponent == 0.0 ? 1.0 : std::pow(std::max(s, 0.0), w.exponent);
  w.value = w.smooth * w.singular;
  return w;
}

double inner_product_mn(const DimensionedProfile& dprofile, int m, std::span<const double> coeffs1,
                        std::span<const double> coeffs2, const BasisContext& context,
                        std::size_t order) {
  const double expected_lambda = m + 0.5 * (dprofile.n - 2);
  if (std::abs(context.lambda() - expected_lambda) > 1e-14) {
    throw UsageError("basis context lambda does not match m + (n - 2)/2");
  }
  if (coeffs1.size() != context.size() || coeffs2.size() != context.size()) {
    throw UsageError("coefficient vectors do not match the basis context");
  }
  if (order == 0) order = oversampled_order(context.degree_bound());
  const auto rule = gauss_jacobi(order, harmonic_weight_exponent(dprofile.n, m));
  std::vector<double> v(context.size());
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.order(); ++q) {
    const double t = rule.nodes[q];
    context.evaluate(t, v);
    double f1 = 0.0, f2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      f1 += coeffs1[i] * v[i];
      f2 += coeffs2[i] * v[i];
    }
    sum += rule.weights[q] * weight_w(dprofile, m, t).smooth * f1 * f2;
  }
  return sum;
}

}  // namespace revgap
