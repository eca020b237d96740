// Domain types and mean-intensity functions for interferometric count data.
//
// Two measurement schemes are modelled:
//  * a symmetric four-port device (channels 3..6) parameterised by total
//    intensity, visibility and phase;
//  * a two-port interferometer (beams o and h) scanned over N equidistant
//    auxiliary phase shifts.
//
// Channel convention for the four-port device: channels 3 and 5 carry the
// minus sign, i.e. mean_3 = (I/2)(1 - V cos th), mean_4 = (I/2)(1 + V cos th),
// mean_5 = (I/2)(1 - V sin th), mean_6 = (I/2)(1 + V sin th).

#ifndef FRINGEFIT_MODEL_HPP_
#define FRINGEFIT_MODEL_HPP_

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fringefit {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Count type for detected particles.
using Count = std::uint32_t;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reduces an angle to [0, 2pi).
double wrap_phase(double phase);

struct FourPortParams {
  double total_intensity = 0.0;
  double visibility = 0.0;
  double phase = 0.0;
  double noise_sigma = 1.0;

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

struct SetupParams {
  double mean_o = 0.0;
  double mean_h = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;

  /// Requires nonnegative means and amplitude <= min(mean_o, mean_h).
  void validate() const;
  bool valid() const noexcept;
};

/// Equidistant auxiliary shifter positions, delta_j = 2 pi j / N.
class AuxShiftGrid {
 public:
  explicit AuxShiftGrid(std::size_t count);

  std::size_t count() const noexcept { return shifts_.size(); }
  std::span<const double> shifts() const noexcept { return shifts_; }
  double operator[](std::size_t j) const { return shifts_[j]; }

  friend bool operator==(const AuxShiftGrid&, const AuxShiftGrid&) = default;

 private:
  std::vector<double> shifts_;
};

/// aux_shifts(count): throws InvalidArgument for count < 2.
AuxShiftGrid aux_shifts(std::size_t count);

enum class SampleKind { continuous, discrete };

struct FourPortSample {
  std::array<double, 4> channels{};  // ch3, ch4, ch5, ch6
  SampleKind kind = SampleKind::continuous;

  static FourPortSample intensities(double i3, double i4, double i5, double i6);
  static FourPortSample counts(Count n3, Count n4, Count n5, Count n6);

  double ch3() const noexcept { return channels[0]; }
  double ch4() const noexcept { return channels[1]; }
  double ch5() const noexcept { return channels[2]; }
  double ch6() const noexcept { return channels[3]; }
};

struct FringeSample {
  std::vector<Count> counts_o;
  std::vector<Count> counts_h;
  AuxShiftGrid grid;

  FringeSample(std::vector<Count> o, std::vector<Count> h, AuxShiftGrid g);

  std::size_t positions() const noexcept { return grid.count(); }
  std::uint64_t total_o() const noexcept;
  std::uint64_t total_h() const noexcept;

  friend bool operator==(const FringeSample&, const FringeSample&) = default;
};

enum class EstimateStatus { informative, uninformative };

std::string to_string(EstimateStatus status);

/// Estimate for the two-port fringe model.
struct PhaseEstimate {
  std::optional<double> phase;  // [0, 2pi); absent when uninformative
  double mean_o = 0.0;
  double mean_h = 0.0;
  double amplitude = 0.0;
  EstimateStatus status = EstimateStatus::uninformative;

  bool informative() const noexcept {
    return status == EstimateStatus::informative;
  }
  /// amplitude / mean_o, absent when mean_o == 0.
  std::optional<double> normalized_visibility() const noexcept;
};

/// Estimate for the four-port device.
struct FourPortEstimate {
  std::optional<double> phase;
  double total_intensity = 0.0;
  double visibility = 0.0;
  EstimateStatus status = EstimateStatus::uninformative;

  bool informative() const noexcept {
    return status == EstimateStatus::informative;
  }
};

struct TwoPortMeans {
  std::vector<double> mean_o;
  std::vector<double> mean_h;
};

/// mean_o_j = I^o + I^V cos(th + delta_j), mean_h_j = I^h - I^V cos(th + delta_j).
/// Values are clamped at 0 to absorb rounding at amplitude == min(means).
TwoPortMeans mean_two_port(const SetupParams& params, const AuxShiftGrid& grid);

/// Channel means (m3, m4, m5, m6).
std::array<double, 4> mean_four_port(const FourPortParams& params);

}  // namespace fringefit

#endif  // FRINGEFIT_MODEL_HPP_
