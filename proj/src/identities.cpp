#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

#include "revgap/errors.hpp"
#include "revgap/spectral.hpp"

namespace revgap {

double weak_form_on_samples(const ProfileSamples& samples, int n, int m, std::span<const double> f,
                            std::span<const double> df) {
  double sum = 0.0;
  for (std::size_t q = 0; q < samples.rule.order(); ++q) {
    const double t = samples.rule.nodes[q];
    const double a1n3 = std::pow(samples.a1[q], n - 3);
    const double k = potential_k(n, m, samples.a1[q], samples.a2[q], samples.d2[q]);
    sum += samples.rule.weights[q] *
           (-a1n3 * samples.a1[q] * (1.0 - t * t) * df[q] * df[q] + a1n3 * k * f[q] * f[q]);
  }
  return sum / (n * (n - 1.0));
}

double mass_form_on_samples(const ProfileSamples& samples, int n, std::span<const double> f) {
  double sum = 0.0;
  for (std::size_t q = 0; q < samples.rule.order(); ++q) {
    sum += samples.rule.weights[q] * samples.a2[q] * std::pow(samples.a1[q], n - 2) / (n * samples.eta[q]) *
           f[q] * f[q];
  }
  return sum;
}

namespace {

struct Expansion {
  std::vector<double> value, deriv;
};

Expansion expand(const BasisContext& basis, std::span<const double> coeffs, const QuadratureRule& rule) {
  Expansion e;
  for (double t : rule.nodes) {
    const auto [v, d] = basis.evaluate_expansion(coeffs, t);
    e.value.push_back(v);
    e.deriv.push_back(d);
  }
  return e;
}

OrthogonalSpaceIdentity identity_at_order(const DimensionedProfile& dp, int m, std::span<const double> coeffs,
                                          const BasisContext& basis, std::size_t order) {
  const int n = dp.n;
  OrthogonalSpaceIdentity r;

  const auto sm = ProfileSamples::sample(dp.profile, gauss_jacobi(order, m + 0.5 * (n - 3)));
  const auto f = expand(basis, coeffs, sm.rule);
  const double form_m = weak_form_on_samples(sm, n, m, f.value, f.deriv);
  const double mass_m = mass_form_on_samples(sm, n, f.value);
  r.lhs = form_m + mass_m / (n - 1.0);

  // g = (1 - t^2)^(m/2) f on the zonal rule.
  const auto s0 = ProfileSamples::sample(dp.profile, gauss_jacobi(order, 0.5 * (n - 3)));
  const auto f0 = expand(basis, coeffs, s0.rule);
  std::vector<double> g(s0.rule.order()), dg(s0.rule.order());
  for (std::size_t q = 0; q < s0.rule.order(); ++q) {
    const double t = s0.rule.nodes[q];
    const double u = 1.0 - t * t;
    const double um = std::pow(u, 0.5 * m);
    g[q] = um * f0.value[q];
    dg[q] = um * f0.deriv[q] - m * t * (um / u) * f0.value[q];
  }
  const double form_0 = weak_form_on_samples(s0, n, 0, g, dg);
  const double mass_0 = mass_form_on_samples(s0, n, g);

  const auto sc = ProfileSamples::sample(dp.profile, gauss_jacobi(order, m + 0.5 * (n - 5)));
  const auto fc = expand(basis, coeffs, sc.rule);
  double integral = 0.0;
  for (std::size_t q = 0; q < sc.rule.order(); ++q) {
    integral += sc.rule.weights[q] * sc.a2[q] * std::pow(sc.a1[q], n - 3) * fc.value[q] * fc.value[q];
  }
  r.correction = m * (m + n - 3.0) / (n * (n - 1.0)) * integral;
  r.rhs = form_0 + mass_0 / (n - 1.0) - r.correction;
  r.scale = std::max({std::abs(form_m), std::abs(mass_m), std::abs(form_0), std::abs(mass_0), std::abs(r.correction)});
  return r;
}

}  // namespace

OrthogonalSpaceIdentity orthogonal_space_identity(const DimensionedProfile& dprofile, int m,
                                                  std::span<const double> coeffs, std::size_t order) {
  if (m < 1) throw ParameterError("orthogonal-space identity needs m >= 1");
  if (coeffs.empty()) throw ParameterError("empty coefficient vector");
  require_valid(dprofile);
  const auto basis = BasisContext::for_harmonic(dprofile.n, m, coeffs.size());
  if (order == 0) order = oversampled_order(std::max(coeffs.size(), kDefaultBasisSize));
  auto r = identity_at_order(dprofile, m, coeffs, basis, order);
  const auto refined = identity_at_order(dprofile, m, coeffs, basis, 2 * order);
  const double change = std::max(std::abs(refined.lhs - r.lhs), std::abs(refined.rhs - r.rhs));
  if (change > 1e-9 * std::max(r.scale, 1e-300)) {
    r.converged = false;
    spdlog::warn("orthogonal-space identity: doubling the quadrature order changed the result by {:.3e}", change);
  }
  return r;
}

CsBoundReport cs_bound_check(const DimensionedProfile& dprofile, int m, std::span<const double> coeffs,
                             std::size_t order) {
  const int n = dprofile.n;
  if (m < 1) throw ParameterError("Cauchy-Schwarz bound needs m >= 1");
  if (m == 1 && n < 3) throw UnsupportedCaseError("the m = 1 product bound is not available for n = 2");
  if (!dprofile.profile.symmetric()) throw UnsupportedCaseError("Cauchy-Schwarz bound needs an origin-symmetric profile");
  if (coeffs.empty()) throw ParameterError("empty coefficient vector");
  require_valid(dprofile);
  const auto basis = BasisContext::for_harmonic(n, m, coeffs.size());
  if (order == 0) order = oversampled_order(std::max(coeffs.size(), kDefaultBasisSize));

  // sum over a rule of exponent alpha of integrand(samples, q, f(t_q)).
  auto integrate = [&](double alpha, auto&& integrand) {
    const auto s = ProfileSamples::sample(dprofile.profile, gauss_jacobi(order, alpha));
    const auto f = expand(basis, coeffs, s.rule);
    double sum = 0.0;
    for (std::size_t q = 0; q < s.rule.order(); ++q) sum += s.rule.weights[q] * integrand(s, q, f.value[q]);
    return sum;
  };
  auto base = [](const ProfileSamples& s, std::size_t q, int power) { return s.a2[q] * std::pow(s.a1[q], power); };

  CsBoundReport r;
  r.m = m;
  double pairing = 0.0;
  if (m == 1) {
    r.factor = n - 2.0;
    pairing = integrate(0.5 * (n - 2), [&](const ProfileSamples& s, std::size_t q, double f) {
      return base(s, q, n - 2) / s.eta[q] * s.rule.nodes[q] * f;
    });
    r.i1 = integrate(0.5 * (n - 3), [&](const ProfileSamples& s, std::size_t q, double f) {
      return base(s, q, n - 3) * f * f;
    });
    r.i2 = integrate(0.5 * (n - 3), [&](const ProfileSamples& s, std::size_t q, double) {
      const double t = s.rule.nodes[q];
      return base(s, q, n - 2) / s.eta[q] * t * t;
    });
  } else {
    r.factor = m * (m + n - 3.0) / n;
    pairing = integrate(0.5 * m + 0.5 * (n - 3), [&](const ProfileSamples& s, std::size_t q, double f) {
      return base(s, q, n - 2) * f;
    });
    r.i1 = integrate(m + 0.5 * (n - 5), [&](const ProfileSamples& s, std::size_t q, double f) {
      return base(s, q, n - 3) * f * f;
    });
    r.i2 = integrate(0.5 * (n - 3), [&](const ProfileSamples& s, std::size_t q, double) {
      return base(s, q, n - 2) * s.eta[q];
    });
  }
  r.lhs = pairing * pairing;
  r.bound = r.factor * r.i1 * r.i2;
  r.slack = r.bound - r.lhs;
  r.holds = r.lhs <= r.bound * (1.0 + 1e-9);
  return r;
}

}  // namespace revgap
