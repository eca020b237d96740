// Phase estimators for four-port and fringe-scan count data.
//
// Gaussian family: nfm_four_port (closed form) and dft_estimate (first Fourier
// coefficient of the o-h difference). Poisson family: poisson_four_port
// (closed form, boundary search when the visibility would exceed 1) and
// poisson_maxlik (numerical maximisation of the fringe likelihood).
//
// Log-likelihoods omit parameter-independent log(n!) terms.

#ifndef FRINGEFIT_ESTIMATORS_HPP_
#define FRINGEFIT_ESTIMATORS_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "fringefit/model.hpp"

namespace fringefit {

class UndefinedGradient : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Four-port device

FourPortEstimate nfm_four_port(const FourPortSample& sample);
FourPortEstimate poisson_four_port(const FourPortSample& sample);

/// -(1/2 sigma^2) sum (I_i - mean_i)^2 - 4 ln sigma - ln(4 pi^2).
double gaussian_four_port_loglik(const FourPortParams& params,
                                 const FourPortSample& sample);

/// Log of the four-port Poisson likelihood without factorials. -inf when a
/// zero mean faces a positive count.
double poisson_four_port_loglik(const FourPortParams& params,
                                const FourPortSample& sample);

// ---------------------------------------------------------------------------
// Fringe scan

/// sum_j diff_j exp(-i shifts_j). Accepts any shift list, so non-equidistant
/// two-position scans (0, pi/2) can be evaluated as well.
std::complex<double> fourier_coefficient(std::span<const double> diff,
                                         std::span<const double> shifts);

PhaseEstimate dft_estimate(std::span<const double> counts_o,
                           std::span<const double> counts_h,
                           const AuxShiftGrid& grid);
PhaseEstimate dft_estimate(const FringeSample& sample);

double poisson_fringe_loglik(const SetupParams& params,
                             const FringeSample& sample);

struct LogLikGradient {
  double d_mean_o = 0.0;
  double d_mean_h = 0.0;
  double d_amplitude = 0.0;
  double d_phase = 0.0;
};

/// Throws UndefinedGradient when a zero mean faces a positive count.
LogLikGradient poisson_fringe_loglik_grad(const SetupParams& params,
                                          const FringeSample& sample);

// ---------------------------------------------------------------------------
// Poisson maximum likelihood

/// Nuisance parameters maximising the likelihood at a fixed phase, over
/// {0 <= amplitude <= min(mean_o, mean_h)}. The problem is concave for a fixed
/// phase, so this is the exact profile.
struct ProfilePoint {
  SetupParams params;
  double loglik = 0.0;
  /// d loglik / d phase at the profiled nuisance parameters.
  double slope = 0.0;
};

ProfilePoint profile_at(const FringeSample& sample, double phase);

struct LogLikCurve {
  std::vector<double> grid;
  std::vector<double> values;
};

/// Profile log-likelihood on the equidistant phase grid 2 pi k / grid_size.
/// Throws InvalidArgument for grid_size < 4.
LogLikCurve profile_phase_loglik(const FringeSample& sample,
                                 std::size_t grid_size);

enum class Initializer { dft, grid_fallback };

struct OptimizerReport {
  bool converged = false;
  std::size_t iterations = 0;
  double final_loglik = 0.0;
  Initializer initializer = Initializer::dft;
  /// Projected-gradient norm at the returned point.
  double stationarity = 0.0;
};

struct MaxLikOptions {
  std::size_t max_iterations = 10000;
  /// Phase grid used for the fallback initializer and the global check.
  std::size_t scan_points = 128;
  double loglik_tolerance = 1e-10;
  double phase_tolerance = 1e-8;
};

struct MaxLikResult {
  PhaseEstimate estimate;
  OptimizerReport report;
};

MaxLikResult poisson_maxlik(const FringeSample& sample,
                            const MaxLikOptions& options = {});

}  // namespace fringefit

#endif  // FRINGEFIT_ESTIMATORS_HPP_
