// Estimator-efficiency comparison: window hit frequencies, the Poisson minus
// Gaussian efficiency difference Delta E over a grid of window widths,
// ensemble error bars and visibility histograms.
//
// Window convention: a window of width w around the true phase accepts an
// estimate whose circular distance to the truth is <= w / 2. Uninformative
// estimates have no phase; hit frequencies credit each of them with w / 2pi,
// the hit probability of a uniformly random phase.

#ifndef FRINGEFIT_HARNESS_HPP_
#define FRINGEFIT_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fringefit/model.hpp"

namespace fringefit {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class WindowGrid {
 public:
  /// Widths must be strictly ascending within (0, 2pi].
  explicit WindowGrid(std::vector<double> widths);

  /// {2 pi k / count : k = 1..count}.
  static WindowGrid equidistant(std::size_t count);
  /// Copy with `width` inserted in order (no-op if already present).
  WindowGrid with_width(double width) const;

  std::span<const double> widths() const noexcept { return widths_; }
  std::size_t size() const noexcept { return widths_.size(); }
  double operator[](std::size_t k) const { return widths_[k]; }

  friend bool operator==(const WindowGrid&, const WindowGrid&) = default;

 private:
  std::vector<double> widths_;
};

struct DeltaECurve {
  WindowGrid windows{std::vector<double>{kTwoPi}};
  std::vector<double> f_gauss;
  std::vector<double> f_poisson;
  std::vector<double> delta_e;
  std::optional<std::vector<double>> errbar;

  std::size_t samples = 0;
  std::size_t nonconverged = 0;
  std::size_t uninformative_gauss = 0;
  std::size_t uninformative_poisson = 0;
};

struct VisibilityHistogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  double mean = 0.0;
  double true_value = 0.0;
};

/// Distance on the circle, in [0, pi].
double circular_distance(double a, double b);

/// Informative estimates within the window; uninformative ones are ignored.
std::size_t window_hits(std::span<const PhaseEstimate> estimates, double truth,
                        double width);

/// Throws InvalidArgument for an empty list.
double hit_frequency(std::span<const PhaseEstimate> estimates, double truth,
                     double width);

/// Delta E(w) = f_poisson(w) - f_gauss(w) from two matching estimate lists.
DeltaECurve compare_estimates(std::span<const PhaseEstimate> gauss,
                              std::span<const PhaseEstimate> poisson,
                              double truth, const WindowGrid& windows);

/// Runs both estimators over the samples and compares them.
DeltaECurve delta_e_curve(std::span<const FringeSample> samples, double truth,
                          const WindowGrid& windows);

/// Poisson hits minus Gaussian hits at one window width.
std::int64_t score_difference(std::span<const PhaseEstimate> gauss,
                              std::span<const PhaseEstimate> poisson,
                              double truth, double width);
std::int64_t score_difference(std::span<const FringeSample> samples,
                              double truth, double width);

/// Per-window means with the sample standard deviation of delta_e in errbar.
/// Needs >= 2 curves sharing one window grid.
DeltaECurve ensemble_stats(std::span<const DeltaECurve> curves);

/// Histogram of normalized visibilities of informative estimates over
/// [0, max observed].
VisibilityHistogram visibility_histogram(std::span<const PhaseEstimate> estimates,
                                         double true_norm_vis,
                                         std::size_t bins = 30);

}  // namespace fringefit

#endif  // FRINGEFIT_HARNESS_HPP_
