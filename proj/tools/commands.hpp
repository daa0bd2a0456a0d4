#pragma once

#include <filesystem>
#include <string>

#include "revgap/io.hpp"

namespace revgap::cli {

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kInputError = 2 };

/// Each command writes its reports under spec.out_dir and returns an exit code.
int cmd_validate(const ExperimentSpec& spec);
int cmd_spectrum(const ExperimentSpec& spec);
int cmd_inequality(const ExperimentSpec& spec);
int cmd_homotopy(const ExperimentSpec& spec);
/// Everything above plus the identity checks, gathered into report.json.
int cmd_report(const ExperimentSpec& spec);

/// Input-side failures (bad spec, invalid profile, bad parameter) give 2, anything else 1.
int exit_code_for(const std::exception& e);

/// Closed form of F(0) for the subspace pair homotopy_scan uses at degree m.
double homotopy_f0(int n, int m);

}  // namespace revgap::cli
