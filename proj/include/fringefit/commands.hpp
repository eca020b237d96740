// Subcommand implementations behind the `fringefit` executable.

#ifndef FRINGEFIT_COMMANDS_HPP_
#define FRINGEFIT_COMMANDS_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fringefit/config.hpp"
#include "fringefit/kernels.hpp"

namespace fringefit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kNonConvergence = 3,
};

/// Writes one batch in the sample CSV format to config.output_path (stdout
/// when empty).
int simulate(const ScenarioConfig& config, std::ostream& out, std::ostream& log);

struct EstimateArgs {
  std::filesystem::path input;
  std::vector<Method> methods{Method::gauss_dft, Method::poisson_ml};
  std::filesystem::path output;
};
int estimate(const EstimateArgs& args, std::ostream& out, std::ostream& log);

struct CompareArgs {
  /// Either a sample file, or estimates (one file holding both methods, or a
  /// gauss-dft file plus a poisson-ml file).
  std::filesystem::path samples;
  std::vector<std::filesystem::path> estimates;
  double truth = 0.0;
  std::size_t window_count = 32;
  bool reference_window = false;
  std::filesystem::path output;
};
int compare(const CompareArgs& args, std::ostream& out, std::ostream& log);

/// `runs` batches with seeds derive_seed(seed, r); mean and errbar per window.
int ensemble(const ScenarioConfig& config, std::ostream& out, std::ostream& log);

int visibility(const ScenarioConfig& config, Method method, std::ostream& out,
               std::ostream& log);

/// Preset fig2 / fig3a / fig3c run the ensemble; fig4 the visibility histogram.
int scenario(const std::string& name, const ScenarioConfig& config,
             std::ostream& out, std::ostream& log);

/// Runs `body`, mapping exceptions onto exit codes and printing them to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace fringefit::cli

#endif  // FRINGEFIT_COMMANDS_HPP_
