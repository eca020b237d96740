#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fringefit/estimators.hpp"

namespace fringefit {

std::complex<double> fourier_coefficient(std::span<const double> diff,
                                         std::span<const double> shifts) {
  if (diff.size() != shifts.size())
    throw InvalidArgument("fourier_coefficient: length mismatch");
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < diff.size(); ++j) {
    re += diff[j] * std::cos(shifts[j]);
    im -= diff[j] * std::sin(shifts[j]);
  }
  return {re, im};
}

PhaseEstimate dft_estimate(std::span<const double> counts_o,
                           std::span<const double> counts_h,
                           const AuxShiftGrid& grid) {
  const std::size_t n = grid.count();
  if (counts_o.size() != n || counts_h.size() != n)
    throw InvalidArgument("dft_estimate: sample length does not match grid");

  std::vector<double> diff(n);
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    diff[j] = counts_o[j] - counts_h[j];
    scale += std::abs(diff[j]);
  }
  const std::complex<double> r = fourier_coefficient(diff, grid.shifts());
  const double modulus = std::abs(r);

  PhaseEstimate out;
  const double nd = static_cast<double>(n);
  out.mean_o = std::accumulate(counts_o.begin(), counts_o.end(), 0.0) / nd;
  out.mean_h = std::accumulate(counts_h.begin(), counts_h.end(), 0.0) / nd;
  // cancellation in the trigonometric sums leaves residues of order eps*scale
  // where the exact coefficient is zero
  if (!(modulus > 1e-12 * scale)) return out;

  out.phase = wrap_phase(std::arg(r));
  out.amplitude = std::min({modulus / nd, out.mean_o, out.mean_h});
  out.status = EstimateStatus::informative;
  return out;
}

PhaseEstimate dft_estimate(const FringeSample& sample) {
  const std::vector<double> o(sample.counts_o.begin(), sample.counts_o.end());
  const std::vector<double> h(sample.counts_h.begin(), sample.counts_h.end());
  return dft_estimate(o, h, sample.grid);
}

double poisson_fringe_loglik(const SetupParams& params,
                             const FringeSample& sample) {
  double value = 0.0;
  for (std::size_t j = 0; j < sample.positions(); ++j) {
    const double mod = params.amplitude * std::cos(params.phase + sample.grid[j]);
    const double means[2] = {std::max(0.0, params.mean_o + mod),
                             std::max(0.0, params.mean_h - mod)};
    const Count counts[2] = {sample.counts_o[j], sample.counts_h[j]};
    for (int b = 0; b < 2; ++b) {
      if (means[b] <= 0.0) {
        if (counts[b] > 0) return -std::numeric_limits<double>::infinity();
        continue;
      }
      value += counts[b] * std::log(means[b]) - means[b];
    }
  }
  return value;
}

LogLikGradient poisson_fringe_loglik_grad(const SetupParams& params,
                                          const FringeSample& sample) {
  LogLikGradient g;
  for (std::size_t j = 0; j < sample.positions(); ++j) {
    const double c = std::cos(params.phase + sample.grid[j]);
    const double s = std::sin(params.phase + sample.grid[j]);
    const double mean_o = params.mean_o + params.amplitude * c;
    const double mean_h = params.mean_h - params.amplitude * c;
    const Count n_o = sample.counts_o[j];
    const Count n_h = sample.counts_h[j];
    if ((n_o > 0 && !(mean_o > 0.0)) || (n_h > 0 && !(mean_h > 0.0)))
      throw UndefinedGradient(
          "log-likelihood gradient undefined: zero mean with positive count");
    const double w_o = (n_o > 0 ? n_o / mean_o : 0.0) - 1.0;
    const double w_h = (n_h > 0 ? n_h / mean_h : 0.0) - 1.0;
    g.d_mean_o += w_o;
    g.d_mean_h += w_h;
    g.d_amplitude += (w_o - w_h) * c;
    g.d_phase += (w_h - w_o) * params.amplitude * s;
  }
  return g;
}

}  // namespace fringefit
