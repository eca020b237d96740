#include "fringefit/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fringefit {

double wrap_phase(double phase) {
  double r = std::fmod(phase, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

void FourPortParams::validate() const {
  if (!(total_intensity >= 0.0) || !std::isfinite(total_intensity))
    throw InvalidArgument("total_intensity must be finite and >= 0");
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw InvalidArgument("visibility must lie in [0, 1]");
  if (!(noise_sigma > 0.0)) throw InvalidArgument("noise_sigma must be > 0");
  if (!std::isfinite(phase)) throw InvalidArgument("phase must be finite");
}

bool SetupParams::valid() const noexcept {
  return std::isfinite(mean_o) && std::isfinite(mean_h) &&
         std::isfinite(amplitude) && std::isfinite(phase) && mean_o >= 0.0 &&
         mean_h >= 0.0 && amplitude >= 0.0 &&
         amplitude <= std::min(mean_o, mean_h);
}

void SetupParams::validate() const {
  if (!valid())
    throw InvalidArgument(
        "setup parameters require mean_o, mean_h >= 0 and "
        "0 <= amplitude <= min(mean_o, mean_h)");
}

AuxShiftGrid::AuxShiftGrid(std::size_t count) {
  if (count < 2) throw InvalidArgument("shift grid needs at least 2 positions");
  shifts_.resize(count);
  for (std::size_t j = 0; j < count; ++j)
    shifts_[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
}

AuxShiftGrid aux_shifts(std::size_t count) { return AuxShiftGrid(count); }

FourPortSample FourPortSample::intensities(double i3, double i4, double i5,
                                           double i6) {
  return {{i3, i4, i5, i6}, SampleKind::continuous};
}

FourPortSample FourPortSample::counts(Count n3, Count n4, Count n5, Count n6) {
  return {{static_cast<double>(n3), static_cast<double>(n4),
           static_cast<double>(n5), static_cast<double>(n6)},
          SampleKind::discrete};
}

FringeSample::FringeSample(std::vector<Count> o, std::vector<Count> h,
                           AuxShiftGrid g)
    : counts_o(std::move(o)), counts_h(std::move(h)), grid(std::move(g)) {
  if (counts_o.size() != grid.count() || counts_h.size() != grid.count())
    throw InvalidArgument("fringe sample length does not match shift grid");
}

std::uint64_t FringeSample::total_o() const noexcept {
  return std::accumulate(counts_o.begin(), counts_o.end(), std::uint64_t{0});
}

std::uint64_t FringeSample::total_h() const noexcept {
  return std::accumulate(counts_h.begin(), counts_h.end(), std::uint64_t{0});
}

std::string to_string(EstimateStatus status) {
  return status == EstimateStatus::informative ? "informative"
                                               : "uninformative";
}

std::optional<double> PhaseEstimate::normalized_visibility() const noexcept {
  if (mean_o <= 0.0) return std::nullopt;
  return amplitude / mean_o;
}

TwoPortMeans mean_two_port(const SetupParams& params,
                           const AuxShiftGrid& grid) {
  TwoPortMeans out;
  out.mean_o.resize(grid.count());
  out.mean_h.resize(grid.count());
  for (std::size_t j = 0; j < grid.count(); ++j) {
    const double mod = params.amplitude * std::cos(params.phase + grid[j]);
    out.mean_o[j] = std::max(0.0, params.mean_o + mod);
    out.mean_h[j] = std::max(0.0, params.mean_h - mod);
  }
  return out;
}

std::array<double, 4> mean_four_port(const FourPortParams& params) {
  const double half = 0.5 * params.total_intensity;
  const double c = params.visibility * std::cos(params.phase);
  const double s = params.visibility * std::sin(params.phase);
  return {half * (1.0 - c), half * (1.0 + c), half * (1.0 - s),
          half * (1.0 + s)};
}

}  // namespace fringefit
