#include "commands.hpp"

#include <omp.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>

#include "revgap/errors.hpp"

namespace revgap::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_text(const ExperimentSpec& spec, const std::string& name, const std::string& text) {
  fs::create_directories(spec.out_dir);
  const auto path = fs::path(spec.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  spdlog::info("wrote {}", path.string());
}

void write_json(const ExperimentSpec& spec, const std::string& name, const json& j) {
  if (spec.wants("json")) write_text(spec, name, j.dump(2) + "\n");
}

int top_degree(int n, int m_max) { return n == 2 ? std::min(m_max, 1) : m_max; }

std::string context(const ProfileEntry& p, int n) { return "profile '" + p.id + "', n = " + std::to_string(n); }

std::vector<double> effective_s_grid(const ExperimentSpec& spec) {
  if (!spec.s_grid.empty()) return spec.s_grid;
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  return grid;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const ParameterError*>(&e)) {
    return kInputError;
  }
  return kAssertionFailed;
}

double homotopy_f0(int n, int m) {
  if (m <= 1) return (n + 3.0) / (n - 1.0);
  return (2.0 * m + n - 1.0) / (n - 1.0);
}

int cmd_validate(const ExperimentSpec& spec) {
  json out = json::array();
  bool all_ok = true;
  for (const auto& p : spec.profiles) {
    for (int n : spec.n_list) {
      const auto report = validate(DimensionedProfile(p.profile, n));
      if (!report.ok()) {
        all_ok = false;
        spdlog::error("{}: {}", context(p, n), report.summary());
      }
      auto j = to_json(report);
      j["profile_id"] = p.id;
      j["profile"] = p.profile.describe();
      j["n"] = n;
      out.push_back(j);
    }
  }
  write_json(spec, "validate.json", {{"statement", "def:class_c2_plus"}, {"profiles", out}, {"ok", all_ok}});
  return all_ok ? kOk : kAssertionFailed;
}

int cmd_spectrum(const ExperimentSpec& spec) {
  json reports = json::array();
  std::ostringstream csv;
  csv << "profile_id,n,m,k,eigenvalue,role\n";
  bool ok = true;
  for (const auto& p : spec.profiles) {
    for (int n : spec.n_list) {
      const DimensionedProfile dp(p.profile, n);
      GapReport coarse, fine;
      try {
        coarse = gap_check(dp, spec.m_max, spec.basis_size, spec.tol);
        fine = gap_check(dp, spec.m_max, 2 * spec.basis_size, spec.tol);
      } catch (const Error& e) {
        spdlog::error("{}: {}", context(p, n), e.what());
        throw;
      }
      auto j = to_json(coarse);
      j["profile_id"] = p.id;
      j["profile"] = p.profile.describe();
      json warnings = json::array();
      for (std::size_t i = 0; i < coarse.entries.size(); ++i) {
        const auto& a = coarse.entries[i];
        const auto& b = fine.entries[i];
        // Only reported values are compared; the bottom of a Galerkin spectrum is never resolved.
        double change = std::abs(a.max_nontrivial - b.max_nontrivial);
        for (std::size_t k = 0; k < a.trivial.size() && k < b.trivial.size(); ++k) {
          change = std::max(change, std::abs(a.trivial[k].lambda - b.trivial[k].lambda));
        }
        j["per_m"][i]["refinement_change"] = change;
        if (change > 1e-6) {
          const auto msg = "m = " + std::to_string(a.m) + ": N = " + std::to_string(spec.basis_size) + " and " +
                           std::to_string(2 * spec.basis_size) + " disagree by " + format_double(change);
          spdlog::warn("{}: {}", context(p, n), msg);
          warnings.push_back(msg);
        }
        std::vector<std::string> role(a.eigenvalues.size(), "nontrivial");
        for (const auto& t : a.trivial) role[t.index] = "trivial-" + t.match;
        for (std::size_t k = 0; k < a.eigenvalues.size(); ++k) {
          csv << p.id << ',' << n << ',' << a.m << ',' << k << ',' << format_double(a.eigenvalues[k]) << ','
              << role[k] << '\n';
        }
      }
      j["convergence_warnings"] = warnings;
      if (!coarse.passed) {
        ok = false;
        spdlog::error("{}: spectral gap assertion failed (margin {})", context(p, n), coarse.margin);
      }
      reports.push_back(j);
    }
  }
  write_json(spec, "spectrum.json", {{"reports", reports}, {"ok", ok}});
  if (spec.wants("csv")) write_text(spec, "spectrum.csv", csv.str());
  return ok ? kOk : kAssertionFailed;
}

namespace {

struct InequalityRow {
  std::string profile_id;
  int n = 0;
  std::string seed;
  InequalityReport report;
};

std::string csv_row(const InequalityRow& row, int m_max) {
  std::ostringstream s;
  const auto& r = row.report;
  s << row.profile_id << ',' << row.n << ',' << row.seed << ',' << r.kind << ',' << format_double(r.p) << ','
    << format_double(r.deficit) << ',' << format_double(-r.deficit) << ',' << format_double(r.tolerance) << ','
    << (r.passed ? 1 : 0) << ',' << (r.certified ? 1 : 0);
  for (int m = 1; m <= m_max; ++m) {
    s << ',';
    for (const auto& t : r.per_m_stability) {
      if (t.m == m) s << format_double(t.value);
    }
  }
  s << '\n';
  return s.str();
}

}  // namespace

int cmd_inequality(const ExperimentSpec& spec) {
  std::vector<InequalityRow> rows;
  for (const auto& p : spec.profiles) {
    for (int n : spec.n_list) {
      const DimensionedProfile dp(p.profile, n);
      const BodyModel model(dp, top_degree(n, spec.m_max), spec.basis_size);
      const bool strengthened = n >= 3 && p.profile.symmetric();

      const auto hk = support_test_function(model);
      for (double q : spec.p_list) {
        auto r = local_lp_deficit(model, hk, q);
        r.kind = "equality";
        rows.push_back({p.id, n, "hK", r});
      }

      std::vector<std::vector<InequalityRow>> per_seed(spec.seeds.size());
      std::vector<std::exception_ptr> errors(spec.seeds.size());
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(spec.seeds.size()); ++i) {
        try {
          const auto seed = spec.seeds[static_cast<std::size_t>(i)];
          const auto f = random_test_function(model, seed);
          auto& out = per_seed[static_cast<std::size_t>(i)];
          for (double q : spec.p_list) out.push_back({p.id, n, std::to_string(seed), local_lp_deficit(model, f, q)});
          if (strengthened) out.push_back({p.id, n, std::to_string(seed), strengthened_deficit(model, f)});
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      for (auto& v : per_seed) rows.insert(rows.end(), v.begin(), v.end());
    }
  }

  std::ostringstream csv;
  csv << "profile_id,n,seed,kind,p,deficit,margin,tolerance,pass,certified";
  for (int m = 1; m <= spec.m_max; ++m) csv << ",stab_m" << m;
  csv << '\n';
  json j = json::array();
  bool ok = true;
  std::size_t suspicious = 0;
  for (const auto& row : rows) {
    csv << csv_row(row, spec.m_max);
    auto rj = to_json(row.report);
    rj["profile_id"] = row.profile_id;
    rj["n"] = row.n;
    rj["seed"] = row.seed;
    j.push_back(rj);
    const bool must_hold = row.report.certified || row.report.kind == "equality";
    if (must_hold && !row.report.passed) {
      ok = false;
      spdlog::error("profile '{}', n = {}, seed {}: {} deficit {} exceeds tolerance {}", row.profile_id, row.n,
                    row.seed, row.report.kind, row.report.deficit, row.report.tolerance);
    }
    if (row.report.kind == "equality" && std::abs(row.report.deficit) > row.report.tolerance) ok = false;
    if (row.report.suspicious) ++suspicious;
  }
  if (suspicious > 0) spdlog::warn("{} rows are near equality with a nonzonal part", suspicious);
  if (spec.wants("csv")) write_text(spec, "inequality.csv", csv.str());
  write_json(spec, "inequality.json", {{"rows", j}, {"ok", ok}, {"suspicious", suspicious}});
  return ok ? kOk : kAssertionFailed;
}

int cmd_homotopy(const ExperimentSpec& spec) {
  const auto grid = effective_s_grid(spec);
  std::ostringstream csv;
  csv << "profile_id,n,m,s,sup_a,sup_b,F,both_above_threshold\n";
  json reports = json::array();
  bool ok = true;
  for (const auto& p : spec.profiles) {
    for (int n : spec.n_list) {
      const DimensionedProfile dp(p.profile, n);
      const double threshold = -1.0 / (n - 1.0);
      for (int m = 0; m <= top_degree(n, spec.m_max); ++m) {
        const auto points = homotopy_scan(dp, m, grid, spec.basis_size);
        const auto [name_a, name_b] = homotopy_subspaces(m);
        json pts = json::array();
        json flagged = json::array();
        bool finite = true;
        for (const auto& pt : points) {
          const bool both_above = pt.sup_a > threshold + spec.tol && pt.sup_b > threshold + spec.tol;
          finite = finite && std::isfinite(pt.f);
          if (both_above) flagged.push_back(pt.s);
          pts.push_back(to_json(pt));
          csv << p.id << ',' << n << ',' << m << ',' << format_double(pt.s) << ',' << format_double(pt.sup_a) << ','
              << format_double(pt.sup_b) << ',' << format_double(pt.f) << ',' << (both_above ? 1 : 0) << '\n';
        }
        json r = {{"statement", "thm:homotopy_no_crossing"},
                  {"profile_id", p.id},
                  {"n", n},
                  {"m", m},
                  {"subspace_a", name_a},
                  {"subspace_b", name_b},
                  {"points", pts},
                  {"flagged_s", flagged},
                  {"finite", finite}};
        for (const auto& pt : points) {
          if (pt.s == 0.0) {
            r["F0_expected"] = homotopy_f0(n, m);
            r["F0_error"] = std::abs(pt.f - homotopy_f0(n, m));
            if (std::abs(pt.f - homotopy_f0(n, m)) > 1e-8) ok = false;
          }
          if (pt.s == 1.0) {
            const bool end_ok = pt.sup_a <= threshold + spec.tol && pt.sup_b <= threshold + spec.tol;
            r["endpoint_ok"] = end_ok;
            ok = ok && end_ok;
          }
        }
        if (!points.empty()) {
          r["sign_F_start"] = points.front().f > 0 ? 1 : (points.front().f < 0 ? -1 : 0);
          r["sign_F_end"] = points.back().f > 0 ? 1 : (points.back().f < 0 ? -1 : 0);
        }
        ok = ok && finite && flagged.empty();
        reports.push_back(r);
      }
    }
  }
  if (spec.wants("csv")) write_text(spec, "homotopy.csv", csv.str());
  write_json(spec, "homotopy.json", {{"reports", reports}, {"ok", ok}});
  return ok ? kOk : kAssertionFailed;
}

int cmd_report(const ExperimentSpec& spec) {
  int code = kOk;
  json sections;
  auto run = [&](const char* name, int (*cmd)(const ExperimentSpec&)) {
    int c;
    try {
      c = cmd(spec);
    } catch (const std::exception& e) {
      spdlog::error("{}: {}", name, e.what());
      c = exit_code_for(e);
    }
    sections[name] = c;
    code = std::max(code, c);
  };
  run("validate", cmd_validate);
  if (code == kOk) {
    run("spectrum", cmd_spectrum);
    run("inequality", cmd_inequality);
    run("homotopy", cmd_homotopy);
  }

  json identities = json::array();
  for (const auto& p : spec.profiles) {
    for (int n : spec.n_list) {
      const DimensionedProfile dp(p.profile, n);
      if (!validate(dp).ok()) continue;
      const auto k = kubota_check(dp);
      json entry = {{"profile_id", p.id},
                    {"n", n},
                    {"kubota", {{"statement", "eq:kubota"}, {"lhs", k.lhs}, {"rhs", k.rhs}, {"relative_error", k.relative_error}}}};
      if (k.relative_error > 1e-10) code = std::max<int>(code, kAssertionFailed);
      if (p.profile.symmetric()) {
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
          const double t = -1.0 + i / 500.0;
          worst = std::max(worst, std::abs(rk_hk_gap(p.profile, t) - cap_height(p.profile, t)));
        }
        entry["rk_hk"] = {{"statement", "eq:rk_hk"}, {"max_abs_error", worst}};
        if (worst > 1e-9) code = std::max<int>(code, kAssertionFailed);
      }
      if (n >= 3 && p.profile.symmetric()) {
        const BodyModel model(dp, std::max(2, top_degree(n, spec.m_max)), 12);
        entry["stability_constants"] = json::array();
        for (int m = 1; m <= model.m_max(); ++m) entry["stability_constants"].push_back({{"m", m}, {"c_m", model.stability(m)}});
        entry["symmetrization_p_threshold"] = -(n - 1.0) * std::min(model.stability(1), model.stability(2));
      }
      identities.push_back(entry);
    }
  }
  json frob = json::array();
  for (int n : spec.n_list) {
    for (int m = 0; m <= spec.m_max; ++m) frob.push_back(to_json(frobenius(n, m)));
  }
  write_json(spec, "report.json", {{"sections", sections}, {"identities", identities}, {"frobenius", frob}, {"exit_code", code}});
  return code;
}

}  // namespace revgap::cli
