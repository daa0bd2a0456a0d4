#include <omp.h>

#include <cmath>

#include "assembly_common.hpp"
#include "revgap/errors.hpp"

namespace revgap {

ProfileSamples ProfileSamples::sample(const Profile& profile, QuadratureRule rule) {
  ProfileSamples s;
  const std::size_t count = rule.order();
  s.rule = std::move(rule);
  s.eta.resize(count);
  s.d2.resize(count);
  s.a1.resize(count);
  s.a2.resize(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(count); ++q) {
    const double t = s.rule.nodes[q];
    const auto v = profile.eval(t);
    s.eta[q] = v.value;
    s.d2[q] = v.d2;
    s.a1[q] = -t * v.d1 + v.value;
    s.a2[q] = (1.0 - t * t) * v.d2 + s.a1[q];
  }
  return s;
}

namespace detail {

GalerkinSystem prepare_system(const DimensionedProfile& dprofile, int m, std::size_t basis_size, Parity parity) {
  if (m < 0) throw ParameterError("harmonic degree m must be non-negative");
  if (basis_size < 4) throw ParameterError("basis size must be at least 4");
  require_valid(dprofile);
  GalerkinSystem sys{.n = dprofile.n,
                     .m = m,
                     .basis = BasisContext::for_harmonic(dprofile.n, m, basis_size, parity),
                     .profile = dprofile.profile};
  sys.rule = gauss_jacobi(oversampled_order(basis_size), m + 0.5 * (dprofile.n - 3));
  return sys;
}

NodeCoefficients node_coefficients(const ProfileSamples& samples, int n, int m) {
  const std::size_t count = samples.rule.order();
  NodeCoefficients c;
  c.stiffness.resize(count);
  c.potential.resize(count);
  c.mass.resize(count);
  const double scale = 1.0 / (n * (n - 1.0));
  for (std::size_t q = 0; q < count; ++q) {
    const double t = samples.rule.nodes[q];
    const double w = samples.rule.weights[q];
    const double a1n3 = std::pow(samples.a1[q], n - 3);
    const double a1n2 = a1n3 * samples.a1[q];
    const double k = potential_k(n, m, samples.a1[q], samples.a2[q], samples.d2[q]);
    c.stiffness[q] = -w * scale * a1n2 * (1.0 - t * t);
    c.potential[q] = w * scale * a1n3 * k;
    c.mass[q] = w * samples.a2[q] * a1n2 / (n * samples.eta[q]);
  }
  return c;
}

}  // namespace detail

GalerkinSystem assemble(const DimensionedProfile& dprofile, int m, std::size_t basis_size, Parity parity) {
  auto sys = detail::prepare_system(dprofile, m, basis_size, parity);
  const auto samples = ProfileSamples::sample(sys.profile, sys.rule);
  const auto coef = detail::node_coefficients(samples, sys.n, m);
  sys.mass_weights = coef.mass;

  const auto nodes = static_cast<Eigen::Index>(sys.rule.order());
  const auto size = static_cast<Eigen::Index>(sys.basis.size());
  // Tabulate: column i holds phi_i (or phi_i') over all nodes.
  Eigen::MatrixXd values(nodes, size), derivs(nodes, size);
#pragma omp parallel
  {
    std::vector<double> v(size), d(size);
#pragma omp for schedule(static)
    for (Eigen::Index q = 0; q < nodes; ++q) {
      sys.basis.evaluate(sys.rule.nodes[q], v, d);
      for (Eigen::Index i = 0; i < size; ++i) {
        values(q, i) = v[i];
        derivs(q, i) = d[i];
      }
    }
  }

  const Eigen::Map<const Eigen::VectorXd> cs(coef.stiffness.data(), nodes);
  const Eigen::Map<const Eigen::VectorXd> cp(coef.potential.data(), nodes);
  const Eigen::Map<const Eigen::VectorXd> cm(coef.mass.data(), nodes);
  sys.form.resize(size, size);
  sys.mass.resize(size, size);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index i = 0; i < size; ++i) {
    const Eigen::VectorXd sd = derivs.col(i).cwiseProduct(cs);
    const Eigen::VectorXd pv = values.col(i).cwiseProduct(cp);
    const Eigen::VectorXd mv = values.col(i).cwiseProduct(cm);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double q = sd.dot(derivs.col(j)) + pv.dot(values.col(j));
      const double mm = mv.dot(values.col(j));
      sys.form(i, j) = sys.form(j, i) = q;
      sys.mass(i, j) = sys.mass(j, i) = mm;
    }
  }
  return sys;
}

}  // namespace revgap
