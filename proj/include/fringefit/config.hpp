// Scenario configuration.
//
// Config files are flat `key = value` text; `#` starts a comment. Keys:
//   i_o, i_h, i_v, theta, positions, samples, runs, seed, windows, out
// Unknown keys are rejected.

#ifndef FRINGEFIT_CONFIG_HPP_
#define FRINGEFIT_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fringefit/harness.hpp"
#include "fringefit/model.hpp"
#include "fringefit/simulator.hpp"

namespace fringefit {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Extra window width added by the scenario presets.
inline constexpr double kReferenceWindow = 1.256;

struct ScenarioConfig {
  SetupParams params{2.21, 6.33, 1.03, 4.83};
  std::size_t positions = 8;
  std::size_t samples = 690;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  std::size_t window_count = 32;
  bool reference_window = false;
  std::filesystem::path output_path;

  /// Throws ConfigError.
  void validate() const;
  WindowGrid windows() const;
  /// Batch of `samples` fringe scans seeded with `batch_seed`.
  BatchSpec batch(std::uint64_t batch_seed) const;
};

/// Applies one key/value pair; throws ConfigError on unknown keys or bad values.
void apply_config_value(ScenarioConfig& config, std::string_view key,
                        std::string_view value);

ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {});
ScenarioConfig load_config(const std::filesystem::path& path,
                           ScenarioConfig base = {});
void write_config(std::ostream& out, const ScenarioConfig& config);

/// Presets fig2, fig3a, fig3c, fig4; nullopt for unknown names.
std::optional<ScenarioConfig> scenario_preset(std::string_view name);

}  // namespace fringefit

#endif  // FRINGEFIT_CONFIG_HPP_
