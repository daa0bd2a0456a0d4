#pragma once

#include <span>

#include "revgap/basis.hpp"
#include "revgap/profile.hpp"

namespace revgap {

/// w_{m,n}(t) split into its smooth part and the Jacobi factor (1 - t^2)^exponent.
struct WeightValue {
  double smooth = 0.0;    // A2 A1^(n-2) / (n eta)
  double exponent = 0.0;  // m + (n - 3)/2
  double singular = 0.0;  // (1 - t^2)^exponent
  double value = 0.0;     // smooth * singular
};

/// Exponent m + (n - 3)/2 of the Jacobi factor of w_{m,n}.
inline double harmonic_weight_exponent(int n, int m) { return m + 0.5 * (n - 3); }

WeightValue weight_w(const DimensionedProfile& dprofile, int m, double t);

/**
 * <f1, f2>_{m,n} = int w_{m,n} f1 f2 dt for expansions in the m-basis of `context`.
 *
 * Uses a Gauss-Jacobi rule absorbing (1 - t^2)^(m + (n-3)/2) with
 * 2 * degree_bound + 32 nodes unless `order` is given.
 */
double inner_product_mn(const DimensionedProfile& dprofile, int m, std::span<const double> coeffs1,
                        std::span<const double> coeffs2, const BasisContext& context,
                        std::size_t order = 0);

}  // namespace revgap
