#include <vector>

#include "assembly_common.hpp"

namespace revgap {

// One node at a time, rank-one updates of both matrices.
GalerkinSystem assemble_reference(const DimensionedProfile& dprofile, int m, std::size_t basis_size,
                                  Parity parity) {
  auto sys = detail::prepare_system(dprofile, m, basis_size, parity);
  ProfileSamples samples;
  samples.rule = sys.rule;
  for (double t : sys.rule.nodes) {
    const auto v = sys.profile.eval(t);
    const double va1 = -t * v.d1 + v.value;
    samples.eta.push_back(v.value);
    samples.d2.push_back(v.d2);
    samples.a1.push_back(va1);
    samples.a2.push_back((1.0 - t * t) * v.d2 + va1);
  }
  const auto coef = detail::node_coefficients(samples, sys.n, m);
  sys.mass_weights = coef.mass;

  const std::size_t size = sys.basis.size();
  sys.form = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  sys.mass = sys.form;
  std::vector<double> v(size), d(size);
  for (std::size_t q = 0; q < sys.rule.order(); ++q) {
    sys.basis.evaluate(sys.rule.nodes[q], v, d);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        sys.form(ii, jj) += coef.stiffness[q] * d[i] * d[j] + coef.potential[q] * v[i] * v[j];
        sys.mass(ii, jj) += coef.mass[q] * v[i] * v[j];
      }
    }
  }
  return sys;
}

}  // namespace revgap
