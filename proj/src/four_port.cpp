#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "fringefit/estimators.hpp"

namespace fringefit {

namespace {

// n log x with the 0 log 0 = 0 convention.
double xlogy(double n, double x) {
  if (n == 0.0) return 0.0;
  return n * std::log(x);
}

void require_nonnegative(const FourPortSample& sample) {
  for (double v : sample.channels)
    if (!(v >= 0.0))
      throw InvalidArgument("four-port channels must be nonnegative");
}

// Log-likelihood of the counts on the visibility-1 circle, up to constants.
double boundary_loglik(const std::array<double, 4>& n, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return xlogy(n[0], 1.0 - c) + xlogy(n[1], 1.0 + c) + xlogy(n[2], 1.0 - s) +
         xlogy(n[3], 1.0 + s);
}

double boundary_maximizer(const std::array<double, 4>& n) {
  constexpr int kGrid = 720;
  constexpr double kStep = kTwoPi / kGrid;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGrid; ++k) {
    const double v = boundary_loglik(n, k * kStep);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double centre = best * kStep;
  auto negated = [&](double phi) { return -boundary_loglik(n, phi); };
  std::uintmax_t max_iter = 200;
  const auto [phi, value] = boost::math::tools::brent_find_minima(
      negated, centre - kStep, centre + kStep,
      std::numeric_limits<double>::digits / 2, max_iter);
  return -value >= best_value ? phi : centre;
}

}  // namespace

FourPortEstimate nfm_four_port(const FourPortSample& sample) {
  require_nonnegative(sample);
  const double total = sample.ch3() + sample.ch4() + sample.ch5() + sample.ch6();
  const double c = sample.ch4() - sample.ch3();
  const double s = sample.ch6() - sample.ch5();
  const double r = std::hypot(c, s);

  FourPortEstimate out;
  out.total_intensity = 0.5 * total;
  if (total == 0.0 || r == 0.0) return out;
  out.phase = wrap_phase(std::atan2(s, c));
  out.visibility = std::min(2.0 * r / total, 1.0);
  out.status = EstimateStatus::informative;
  return out;
}

FourPortEstimate poisson_four_port(const FourPortSample& sample) {
  require_nonnegative(sample);
  for (double v : sample.channels)
    if (v != std::floor(v))
      throw InvalidArgument("Poisson four-port estimator needs integer counts");
  const auto& n = sample.channels;

  FourPortEstimate out;
  out.total_intensity = 0.5 * (n[0] + n[1] + n[2] + n[3]);
  const double cos_den = n[1] + n[0];
  const double sin_den = n[3] + n[2];
  if (cos_den == 0.0 || sin_den == 0.0) return out;

  const double c = (n[1] - n[0]) / cos_den;
  const double s = (n[3] - n[2]) / sin_den;
  if (c == 0.0 && s == 0.0) return out;

  out.status = EstimateStatus::informative;
  const double r2 = c * c + s * s;
  if (r2 <= 1.0) {
    out.phase = wrap_phase(std::atan2(s, c));
    out.visibility = std::sqrt(r2);
  } else {
    // the likelihood is concave in (V cos, V sin) so the constrained maximum
    // lies on the unit circle
    out.phase = wrap_phase(boundary_maximizer(n));
    out.visibility = 1.0;
  }
  return out;
}

double gaussian_four_port_loglik(const FourPortParams& params,
                                 const FourPortSample& sample) {
  const auto means = mean_four_port(params);
  double ss = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double r = sample.channels[i] - means[i];
    ss += r * r;
  }
  const double sigma = params.noise_sigma;
  return -ss / (2.0 * sigma * sigma) - 4.0 * std::log(sigma) -
         std::log(4.0 * std::numbers::pi * std::numbers::pi);
}

double poisson_four_port_loglik(const FourPortParams& params,
                                const FourPortSample& sample) {
  const auto means = mean_four_port(params);
  double value = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double n = sample.channels[i];
    if (means[i] <= 0.0) {
      if (n > 0.0) return -std::numeric_limits<double>::infinity();
      continue;
    }
    value += xlogy(n, means[i]) - means[i];
  }
  return value;
}

}  // namespace fringefit
