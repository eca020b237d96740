// Poisson fringe maximum likelihood.
//
// At a fixed phase every mean is linear in (mean_o, mean_h, amplitude) and
// n log(mean) - mean is concave, so the nuisance problem is concave over the
// polyhedron {0 <= amplitude <= min(mean_o, mean_h)}. It separates into two
// one-dimensional level problems (one per beam) nested inside a monotone root
// search for the amplitude. The phase is then found by a bracketed root search
// on the profile slope, followed by a scan that guards against local maxima.

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

#include "fringefit/estimators.hpp"

namespace fringefit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct BeamFit {
  double level = 0.0;
  bool at_bound = false;
};

class ProfileSolver {
 public:
  explicit ProfileSolver(const FringeSample& sample)
      : sample_(sample),
        positions_(sample.positions()),
        n_o_(positions_),
        n_h_(positions_),
        mod_o_(positions_),
        mod_h_(positions_),
        sin_(positions_) {
    for (std::size_t j = 0; j < positions_; ++j) {
      n_o_[j] = sample.counts_o[j];
      n_h_[j] = sample.counts_h[j];
    }
    total_o_ = static_cast<double>(sample.total_o());
    total_h_ = static_cast<double>(sample.total_h());
  }

  ProfilePoint at(double phase) {
    double mod_sum = 0.0;
    for (std::size_t j = 0; j < positions_; ++j) {
      const double arg = phase + sample_.grid[j];
      mod_o_[j] = std::cos(arg);
      mod_h_[j] = -mod_o_[j];
      sin_[j] = std::sin(arg);
      mod_sum += mod_o_[j];
    }
    mod_sum_ = mod_sum;

    const double amplitude = solve_amplitude();
    const BeamFit o = fit_level(n_o_, mod_o_, total_o_, amplitude);
    const BeamFit h = fit_level(n_h_, mod_h_, total_h_, amplitude);

    ProfilePoint out;
    out.params = {o.level, h.level, amplitude, wrap_phase(phase)};
    out.loglik = beam_loglik(n_o_, mod_o_, o.level, amplitude) +
                 beam_loglik(n_h_, mod_h_, h.level, amplitude);
    double slope = 0.0;
    if (amplitude > 0.0) {
      for (std::size_t j = 0; j < positions_; ++j) {
        const double w_o = weight(n_o_[j], o.level + amplitude * mod_o_[j]);
        const double w_h = weight(n_h_[j], h.level + amplitude * mod_h_[j]);
        slope += (w_h - w_o) * amplitude * sin_[j];
      }
    }
    out.slope = slope;
    return out;
  }

 private:
  static double weight(double n, double mean) {
    return (n > 0.0 ? n / mean : 0.0) - 1.0;
  }

  double beam_loglik(const std::vector<double>& n,
                     const std::vector<double>& mod, double level,
                     double amplitude) const {
    double value = 0.0;
    for (std::size_t j = 0; j < positions_; ++j) {
      const double mean = level + amplitude * mod[j];
      if (n[j] > 0.0) {
        if (!(mean > 0.0)) return kNegInf;
        value += n[j] * std::log(mean);
      }
      value -= std::max(mean, 0.0);
    }
    return value;
  }

  // max over level >= amplitude of sum n_j log(level + amplitude mod_j) - N level.
  // The stationarity function is convex and decreasing, so safeguarded Newton
  // converges monotonically once left of the root.
  BeamFit fit_level(const std::vector<double>& n,
                    const std::vector<double>& mod, double total,
                    double amplitude) const {
    const double nd = static_cast<double>(positions_);
    if (total == 0.0) return {amplitude, true};
    if (amplitude == 0.0) return {total / nd, false};

    auto eval = [&](double x, double& f, double& df) {
      f = -nd;
      df = 0.0;
      for (std::size_t j = 0; j < positions_; ++j) {
        if (n[j] == 0.0) continue;
        const double mean = x + amplitude * mod[j];
        if (!(mean > 0.0)) return false;
        const double q = n[j] / mean;
        f += q;
        df -= q / mean;
      }
      return true;
    };

    double lo = amplitude;
    double hi = amplitude + total / nd;
    double f = 0.0;
    double df = 0.0;
    if (eval(lo, f, df) && f <= 0.0) return {amplitude, true};

    double x = std::clamp(total / nd, lo, hi);
    for (int it = 0; it < 200; ++it) {
      const bool finite = eval(x, f, df);
      if (finite && f == 0.0) break;
      if (!finite || f > 0.0)
        lo = x;
      else
        hi = x;
      double next = finite ? x - f / df : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - x) <= 4.0 * kEps * x;
      x = next;
      if (done || hi - lo <= 4.0 * kEps * hi) break;
    }
    return {x, false};
  }

  // Derivative of the nuisance-profiled log-likelihood w.r.t. the amplitude,
  // following the active level constraint when it binds.
  double amplitude_slope(double amplitude) const {
    return beam_amplitude_slope(n_o_, mod_o_, total_o_, amplitude) +
           beam_amplitude_slope(n_h_, mod_h_, total_h_, amplitude);
  }

  double beam_amplitude_slope(const std::vector<double>& n,
                              const std::vector<double>& mod, double total,
                              double amplitude) const {
    const BeamFit fit = fit_level(n, mod, total, amplitude);
    const double nd = static_cast<double>(positions_);
    const double sign_sum = (&mod == &mod_o_) ? mod_sum_ : -mod_sum_;
    double d = -sign_sum;
    for (std::size_t j = 0; j < positions_; ++j) {
      if (n[j] == 0.0) continue;
      const double mean = fit.level + amplitude * mod[j];
      d += fit.at_bound ? n[j] * (1.0 + mod[j]) / mean : n[j] * mod[j] / mean;
    }
    if (fit.at_bound) d -= nd;
    return d;
  }

  double solve_amplitude() const {
    const double total = total_o_ + total_h_;
    if (total == 0.0) return 0.0;
    const double f0 = amplitude_slope(0.0);
    // f0 sums O(N) terms of unit size; below this it is rounding noise and
    // the data carry no usable modulation at this phase
    const double noise = 64.0 * kEps * static_cast<double>(positions_);
    if (!(f0 > noise)) return 0.0;

    // sum of fitted means equals the total count at the optimum, which bounds
    // the amplitude by total / (2N)
    double hi = total / (2.0 * static_cast<double>(positions_));
    double fhi = amplitude_slope(hi);
    for (int k = 0; k < 60 && fhi > 0.0; ++k) {
      hi *= 2.0;
      fhi = amplitude_slope(hi);
    }
    if (fhi >= 0.0) return hi;

    std::uintmax_t max_iter = 200;
    auto tol = [](double a, double b) {
      return std::abs(b - a) <= 4.0 * kEps * std::max(std::abs(a), std::abs(b));
    };
    const auto bracket = boost::math::tools::toms748_solve(
        [this](double a) { return amplitude_slope(a); }, 0.0, hi, f0, fhi, tol,
        max_iter);
    return 0.5 * (bracket.first + bracket.second);
  }

  const FringeSample& sample_;
  std::size_t positions_;
  std::vector<double> n_o_, n_h_;
  std::vector<double> mod_o_, mod_h_, sin_;
  double total_o_ = 0.0;
  double total_h_ = 0.0;
  double mod_sum_ = 0.0;
};

struct Ascent {
  ProfilePoint best;
  double bracket_width = 0.0;
  double loglik_change = 0.0;
};

class PhaseSearch {
 public:
  PhaseSearch(const FringeSample& sample, const MaxLikOptions& options)
      : solver_(sample), options_(options) {}

  ProfilePoint eval(double phase) {
    ++evaluations_;
    return solver_.at(phase);
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

  // Climbs the profile from `start` to the nearest local maximum.
  Ascent ascend(double start) {
    const ProfilePoint p0 = eval(start);
    if (p0.slope == 0.0) return {p0, 0.0, 0.0};

    const double dir = p0.slope > 0.0 ? 1.0 : -1.0;
    const double step = kTwoPi / static_cast<double>(options_.scan_points);
    double a = start;
    ProfilePoint pa = p0;
    double b = start;
    ProfilePoint pb = p0;
    bool bracketed = false;
    for (std::size_t k = 1; k <= options_.scan_points; ++k) {
      b = start + dir * static_cast<double>(k) * step;
      pb = eval(b);
      if (pb.slope * dir <= 0.0) {
        bracketed = true;
        break;
      }
      a = b;
      pa = pb;
    }
    if (!bracketed) return {pa.loglik >= pb.loglik ? pa : pb, step, 0.0};

    double lo = std::min(a, b);
    double hi = std::max(a, b);
    double slope_lo = lo == a ? pa.slope : pb.slope;
    double slope_hi = lo == a ? pb.slope : pa.slope;
    std::uintmax_t max_iter = 200;
    auto tol = [](double x, double y) { return std::abs(y - x) <= 1e-12; };
    const auto root = boost::math::tools::toms748_solve(
        [this](double t) { return eval(t).slope; }, lo, hi, slope_lo, slope_hi,
        tol, max_iter);

    const ProfilePoint left = eval(root.first);
    const ProfilePoint right = eval(root.second);
    ProfilePoint best = eval(0.5 * (root.first + root.second));
    for (const ProfilePoint* p : {&left, &right, static_cast<const ProfilePoint*>(&pa),
                                  static_cast<const ProfilePoint*>(&pb)})
      if (p->loglik > best.loglik) best = *p;
    return {best, root.second - root.first,
            std::abs(left.loglik - right.loglik)};
  }

 private:
  ProfileSolver solver_;
  MaxLikOptions options_;
  std::size_t evaluations_ = 0;
};

}  // namespace

ProfilePoint profile_at(const FringeSample& sample, double phase) {
  return ProfileSolver(sample).at(phase);
}

LogLikCurve profile_phase_loglik(const FringeSample& sample,
                                 std::size_t grid_size) {
  if (grid_size < 4) throw InvalidArgument("profile grid needs >= 4 points");
  ProfileSolver solver(sample);
  LogLikCurve curve;
  curve.grid.resize(grid_size);
  curve.values.resize(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) {
    curve.grid[k] =
        kTwoPi * static_cast<double>(k) / static_cast<double>(grid_size);
    curve.values[k] = solver.at(curve.grid[k]).loglik;
  }
  return curve;
}

MaxLikResult poisson_maxlik(const FringeSample& sample,
                            const MaxLikOptions& options) {
  MaxLikResult result;
  if (sample.total_o() + sample.total_h() == 0) {
    result.report.converged = true;
    return result;
  }

  PhaseSearch search(sample, options);
  const std::size_t scan = std::max<std::size_t>(options.scan_points, 4);
  std::vector<ProfilePoint> grid(scan);
  std::size_t grid_best = 0;
  for (std::size_t k = 0; k < scan; ++k) {
    grid[k] = search.eval(kTwoPi * static_cast<double>(k) /
                          static_cast<double>(scan));
    if (grid[k].loglik > grid[grid_best].loglik) grid_best = k;
  }

  const PhaseEstimate dft = dft_estimate(sample);
  double start = 0.0;
  if (dft.informative()) {
    result.report.initializer = Initializer::dft;
    start = *dft.phase;
  } else {
    result.report.initializer = Initializer::grid_fallback;
    start = grid[grid_best].params.phase;
  }

  Ascent ascent = search.ascend(start);
  // a local ascent from the DFT phase can stop on a secondary mode
  const double margin = 1e-9 * (1.0 + std::abs(ascent.best.loglik));
  if (grid[grid_best].loglik > ascent.best.loglik + margin) {
    Ascent alt = search.ascend(grid[grid_best].params.phase);
    if (alt.best.loglik > ascent.best.loglik) ascent = alt;
  }

  const ProfilePoint& best = ascent.best;
  PhaseEstimate& est = result.estimate;
  est.mean_o = best.params.mean_o;
  est.mean_h = best.params.mean_h;
  est.amplitude = best.params.amplitude;
  if (est.amplitude > 0.0) {
    est.phase = best.params.phase;
    est.status = EstimateStatus::informative;
  }

  OptimizerReport& report = result.report;
  report.iterations = search.evaluations();
  report.final_loglik = best.loglik;

  // projected gradient of the full likelihood at the returned point
  double residual = 0.0;
  try {
    const LogLikGradient g = poisson_fringe_loglik_grad(best.params, sample);
    const bool o_bound = est.mean_o <= est.amplitude;
    const bool h_bound = est.mean_h <= est.amplitude;
    residual = std::abs(g.d_phase);
    residual = std::max(residual, o_bound ? std::max(0.0, g.d_mean_o)
                                          : std::abs(g.d_mean_o));
    residual = std::max(residual, h_bound ? std::max(0.0, g.d_mean_h)
                                          : std::abs(g.d_mean_h));
    const double along = g.d_amplitude + (o_bound ? g.d_mean_o : 0.0) +
                         (h_bound ? g.d_mean_h : 0.0);
    residual = std::max(residual, est.amplitude > 0.0 ? std::abs(along)
                                                      : std::max(0.0, along));
  } catch (const UndefinedGradient&) {
    residual = std::numeric_limits<double>::infinity();
  }
  report.stationarity = residual;

  const double total =
      static_cast<double>(sample.total_o() + sample.total_h());
  report.converged = report.iterations <= options.max_iterations &&
                     ascent.bracket_width < options.phase_tolerance &&
                     ascent.loglik_change < options.loglik_tolerance &&
                     residual <= 1e-6 * (1.0 + total);
  return result;
}

}  // namespace fringefit
