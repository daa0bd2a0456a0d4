#include <exception>

#include "revgap/errors.hpp"
#include "revgap/spectral.hpp"

namespace revgap {

std::pair<std::string, std::string> homotopy_subspaces(int m) {
  if (m == 0) return {"even, orthogonal to eta_s", "odd, orthogonal to t"};
  if (m == 1) return {"odd", "even, orthogonal to 1"};
  return {"even", "odd"};
}

namespace {

double top_eigenvalue(const DimensionedProfile& ds, int m, Parity parity, std::size_t basis_size,
                      const std::function<double(double)>& orthogonal_to) {
  auto system = assemble(ds, m, basis_size, parity);
  if (orthogonal_to) system.constrain_orthogonal_to(orthogonal_to);
  return solve(system).eigenvalues.front();
}

}  // namespace

std::vector<HomotopyPoint> homotopy_scan(const DimensionedProfile& dprofile, int m, std::span<const double> s_grid,
                                         std::size_t basis_size) {
  if (m < 0) throw ParameterError("harmonic degree m must be non-negative");
  if (!dprofile.profile.symmetric()) throw UnsupportedCaseError("homotopy scan needs an origin-symmetric profile");
  for (double s : s_grid) {
    if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("homotopy parameter outside [0, 1]");
  }
  std::vector<HomotopyPoint> points(s_grid.size());
  std::vector<std::exception_ptr> errors(s_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(s_grid.size()); ++i) {
    try {
      const double s = s_grid[i];
      const DimensionedProfile ds(Profile::homotopy(dprofile.profile, s), dprofile.n);
      const Profile eta_s = ds.profile;
      HomotopyPoint& pt = points[i];
      pt.s = s;
      if (m == 0) {
        pt.sup_a = top_eigenvalue(ds, m, Parity::kEven, basis_size, [eta_s](double t) { return eta_s.eval(t).value; });
        pt.sup_b = top_eigenvalue(ds, m, Parity::kOdd, basis_size, [](double t) { return t; });
      } else if (m == 1) {
        pt.sup_a = top_eigenvalue(ds, m, Parity::kOdd, basis_size, {});
        pt.sup_b = top_eigenvalue(ds, m, Parity::kEven, basis_size, [](double) { return 1.0; });
      } else {
        pt.sup_a = top_eigenvalue(ds, m, Parity::kEven, basis_size, {});
        pt.sup_b = top_eigenvalue(ds, m, Parity::kOdd, basis_size, {});
      }
      pt.f = pt.sup_a - pt.sup_b;
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

}  // namespace revgap
