#include <omp.h>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "commands.hpp"

namespace {

struct Overrides {
  std::string spec_path;
  std::string out_dir;
  int n = 0;
  int m_max = -1;
  std::size_t basis_size = 0;
  double tol = 0.0;
  long long seed = -1;
  int seed_count = 0;
  int jobs = 0;
};

revgap::ExperimentSpec resolve(const Overrides& o) {
  auto spec = revgap::load_spec(o.spec_path);
  if (!o.out_dir.empty()) spec.out_dir = o.out_dir;
  if (o.n != 0) {
    if (o.n < 2) throw revgap::InputError("--n must be at least 2");
    spec.n_list = {o.n};
  }
  if (o.m_max >= 0) spec.m_max = o.m_max;
  if (o.basis_size != 0) {
    if (o.basis_size < 4) throw revgap::InputError("--basis-size must be at least 4");
    spec.basis_size = o.basis_size;
  }
  if (o.tol > 0.0) spec.tol = o.tol;
  if (o.seed >= 0) {
    spec.seeds.clear();
    const int count = o.seed_count > 0 ? o.seed_count : 1;
    for (int i = 0; i < count; ++i) spec.seeds.push_back(static_cast<std::uint64_t>(o.seed) + i);
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("revgap"));
  spdlog::set_level(spdlog::level::warn);
  if (const char* levels = std::getenv("REVGAP_LOG")) spdlog::cfg::helpers::load_levels(levels);

  CLI::App app{"Spectral gap and local log-Brunn-Minkowski checks for convex bodies of revolution"};
  app.require_subcommand(1);
  Overrides o;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const revgap::ExperimentSpec&);
  };
  const Command commands[] = {
      {"validate", "check eta > 0, A1 > 0, A2 > 0 and evenness", revgap::cli::cmd_validate},
      {"spectrum", "per-m spectra, trivial pairs and the spectral gap", revgap::cli::cmd_spectrum},
      {"inequality", "local L^p and strengthened log-BM deficits on random test functions",
       revgap::cli::cmd_inequality},
      {"homotopy", "parity-split top eigenvalues along eta_s = 1 - s + s eta", revgap::cli::cmd_homotopy},
      {"report", "all of the above plus identity checks", revgap::cli::cmd_report},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--spec", o.spec_path, "experiment or profile JSON")->required();
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--n", o.n, "ambient dimension (replaces n_list)");
    sub->add_option("--m-max", o.m_max, "largest harmonic degree");
    sub->add_option("--basis-size", o.basis_size, "Galerkin basis size N");
    sub->add_option("--tol", o.tol, "spectral gap tolerance");
    sub->add_option("--seed", o.seed, "first random seed (replaces seeds)");
    sub->add_option("--seed-count", o.seed_count, "number of consecutive seeds starting at --seed");
    sub->add_option("--jobs", o.jobs, "worker threads");
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : revgap::cli::kInputError;
  }

  if (o.jobs > 0) omp_set_num_threads(o.jobs);
  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      return cmd->run(resolve(o));
    } catch (const std::exception& e) {
      std::cerr << "revgap " << cmd->name << ": " << e.what() << "\n";
      return revgap::cli::exit_code_for(e);
    }
  }
  return revgap::cli::kInputError;
}
