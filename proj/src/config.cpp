#include "fringefit/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "fringefit/csv_io.hpp"

namespace fringefit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(v))
    throw ConfigError("invalid value for " + std::string(key) + ": '" +
                      std::string(text) + "'");
  return v;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("invalid value for " + std::string(key) + ": '" +
                      std::string(text) + "'");
  return v;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!params.valid())
    throw ConfigError(
        "invalid setup: need i_o, i_h >= 0 and 0 <= i_v <= min(i_o, i_h)");
  if (positions < 2) throw ConfigError("positions must be >= 2");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (window_count < 1) throw ConfigError("windows must be >= 1");
}

WindowGrid ScenarioConfig::windows() const {
  WindowGrid grid = WindowGrid::equidistant(window_count);
  return reference_window ? grid.with_width(kReferenceWindow) : grid;
}

BatchSpec ScenarioConfig::batch(std::uint64_t batch_seed) const {
  BatchSpec spec;
  spec.params = params;
  spec.grid = AuxShiftGrid(positions);
  spec.sample_count = samples;
  spec.master_seed = batch_seed;
  return spec;
}

void apply_config_value(ScenarioConfig& c, std::string_view key,
                        std::string_view value) {
  if (key == "i_o")
    c.params.mean_o = to_real(key, value);
  else if (key == "i_h")
    c.params.mean_h = to_real(key, value);
  else if (key == "i_v")
    c.params.amplitude = to_real(key, value);
  else if (key == "theta")
    c.params.phase = wrap_phase(to_real(key, value));
  else if (key == "positions")
    c.positions = to_unsigned(key, value);
  else if (key == "samples")
    c.samples = to_unsigned(key, value);
  else if (key == "runs")
    c.runs = to_unsigned(key, value);
  else if (key == "seed")
    c.seed = to_unsigned(key, value);
  else if (key == "windows")
    c.window_count = to_unsigned(key, value);
  else if (key == "out")
    c.output_path = std::string(value);
  else
    throw ConfigError("unknown config key '" + std::string(key) + "'");
}

ScenarioConfig parse_config(std::istream& in, ScenarioConfig base) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    try {
      apply_config_value(base, trim(line.substr(0, eq)),
                         trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

ScenarioConfig load_config(const std::filesystem::path& path,
                           ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_config(in, std::move(base));
}

void write_config(std::ostream& out, const ScenarioConfig& c) {
  out << "i_o = " << format_real(c.params.mean_o) << '\n'
      << "i_h = " << format_real(c.params.mean_h) << '\n'
      << "i_v = " << format_real(c.params.amplitude) << '\n'
      << "theta = " << format_real(c.params.phase) << '\n'
      << "positions = " << c.positions << '\n'
      << "samples = " << c.samples << '\n'
      << "runs = " << c.runs << '\n'
      << "seed = " << c.seed << '\n'
      << "windows = " << c.window_count << '\n';
  if (!c.output_path.empty()) out << "out = " << c.output_path.string() << '\n';
}

std::optional<ScenarioConfig> scenario_preset(std::string_view name) {
  ScenarioConfig c;
  c.reference_window = true;
  c.params = {2.21, 6.33, 1.03, 4.83};
  if (name == "fig2") return c;
  if (name == "fig3a") {
    c.params.amplitude = 0.258;
    return c;
  }
  if (name == "fig3c") {
    c.params = {0.551, 1.582, 0.258, 4.83};
    return c;
  }
  if (name == "fig4") {
    c.params = {22.1, 63.3, 10.3, 4.83};
    c.samples = 5000;
    c.runs = 1;
    return c;
  }
  return std::nullopt;
}

}  // namespace fringefit
