#pragma once

#include "revgap/spectral.hpp"

namespace revgap::detail {

/// Checks arguments, validates the profile and fills everything but form and mass.
GalerkinSystem prepare_system(const DimensionedProfile& dprofile, int m, std::size_t basis_size, Parity parity);

/// Per-node coefficients of the three integrand pieces, already multiplied by rule weights.
struct NodeCoefficients {
  std::vector<double> stiffness;  // -w A1^(n-2) (1-t^2) / (n(n-1))
  std::vector<double> potential;  // w A1^(n-3) k_m / (n(n-1))
  std::vector<double> mass;       // w A2 A1^(n-2) / (n eta)
};

NodeCoefficients node_coefficients(const ProfileSamples& samples, int n, int m);

}  // namespace revgap::detail
