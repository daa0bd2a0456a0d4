#pragma once

#include <cstddef>
#include <vector>

namespace revgap {

/// Gauss rule for the weight (1 - t^2)^alpha on [-1, 1].
struct QuadratureRule {
  double alpha = 0.0;
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // positive, symmetric

  std::size_t order() const { return nodes.size(); }
  double total_weight() const;

  /// sum_i w_i f(t_i), i.e. int f(t) (1 - t^2)^alpha dt.
  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// int_{-1}^{1} (1 - t^2)^alpha dt = B(1/2, alpha + 1).
double jacobi_weight_mass(double alpha);

/**
 * N-point Gauss-Jacobi rule with symmetric weight (1 - t^2)^alpha, alpha > -1.
 *
 * Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal Jacobi
 * matrix of the ultraspherical recurrence, weights come from the first
 * eigenvector components scaled by the total mass.
 */
QuadratureRule gauss_jacobi(std::size_t n, double alpha);

inline QuadratureRule gauss_legendre(std::size_t n) { return gauss_jacobi(n, 0.0); }

/// Node count used for weighted integrals over a basis of the given size.
inline std::size_t oversampled_order(std::size_t basis_size) { return 2 * basis_size + 32; }

}  // namespace revgap
