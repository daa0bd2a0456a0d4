#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "revgap/geometry.hpp"
#include "revgap/profile.hpp"
#include "revgap/spectral.hpp"

namespace revgap {

/// Parses {"kind": ..., ...}; kinds: ball, spheroid, even-polynomial, homotopy, scaled-sum, shifted.
Profile profile_from_json(const nlohmann::json& j);

struct ProfileEntry {
  std::string id;
  Profile profile;
  nlohmann::json source;
};

/// Batch experiment description.
struct ExperimentSpec {
  std::vector<ProfileEntry> profiles;
  std::vector<int> n_list{3};
  int m_max = 4;
  std::size_t basis_size = kDefaultBasisSize;
  double tol = kDefaultGapTolerance;
  std::vector<double> p_list{0.0};
  std::vector<std::uint64_t> seeds{0};
  std::vector<double> s_grid;  // defaults to 21 equispaced points
  std::string out_dir = "revgap_out";
  std::vector<std::string> formats{"json", "csv"};

  bool wants(const std::string& format) const;
};

/// Accepts a full experiment description or a bare profile description.
ExperimentSpec parse_spec(const nlohmann::json& j);
ExperimentSpec load_spec(const std::filesystem::path& path);

/// Fixed 17-significant-digit formatting used in every CSV.
std::string format_double(double x);

nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const GapEntry& e, int n);
nlohmann::json to_json(const GapReport& r);
nlohmann::json to_json(const FrobeniusReport& r);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const HomotopyPoint& p);
nlohmann::json to_json(const Rational& r);

}  // namespace revgap
