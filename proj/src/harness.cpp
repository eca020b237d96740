#include "fringefit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fringefit/kernels.hpp"

namespace fringefit {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

WindowGrid::WindowGrid(std::vector<double> widths) : widths_(std::move(widths)) {
  if (widths_.empty()) throw InvalidArgument("window grid is empty");
  for (std::size_t k = 0; k < widths_.size(); ++k) {
    if (!(widths_[k] > 0.0 && widths_[k] <= kTwoPi))
      throw InvalidArgument("window widths must lie in (0, 2pi]");
    if (k > 0 && !(widths_[k] > widths_[k - 1]))
      throw InvalidArgument("window widths must be strictly ascending");
  }
}

WindowGrid WindowGrid::equidistant(std::size_t count) {
  if (count < 1) throw InvalidArgument("window count must be >= 1");
  std::vector<double> w(count);
  for (std::size_t k = 0; k < count; ++k)
    w[k] = kTwoPi * static_cast<double>(k + 1) / static_cast<double>(count);
  w.back() = kTwoPi;
  return WindowGrid(std::move(w));
}

WindowGrid WindowGrid::with_width(double width) const {
  std::vector<double> w = widths_;
  auto it = std::lower_bound(w.begin(), w.end(), width);
  if (it == w.end() || *it != width) w.insert(it, width);
  return WindowGrid(std::move(w));
}

double circular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

std::size_t window_hits(std::span<const PhaseEstimate> estimates, double truth,
                        double width) {
  std::size_t hits = 0;
  for (const PhaseEstimate& e : estimates)
    if (e.phase && circular_distance(*e.phase, truth) <= 0.5 * width) ++hits;
  return hits;
}

double hit_frequency(std::span<const PhaseEstimate> estimates, double truth,
                     double width) {
  if (estimates.empty()) throw InvalidArgument("hit_frequency: no estimates");
  std::size_t uninformative = 0;
  for (const PhaseEstimate& e : estimates)
    if (!e.phase) ++uninformative;
  const double credit = static_cast<double>(uninformative) * width / kTwoPi;
  return (static_cast<double>(window_hits(estimates, truth, width)) + credit) /
         static_cast<double>(estimates.size());
}

namespace {

std::size_t count_uninformative(std::span<const PhaseEstimate> estimates) {
  return static_cast<std::size_t>(std::count_if(
      estimates.begin(), estimates.end(),
      [](const PhaseEstimate& e) { return !e.phase; }));
}

std::vector<PhaseEstimate> strip(const std::vector<EstimateRecord>& records) {
  std::vector<PhaseEstimate> out;
  out.reserve(records.size());
  for (const EstimateRecord& r : records) out.push_back(r.estimate);
  return out;
}

}  // namespace

DeltaECurve compare_estimates(std::span<const PhaseEstimate> gauss,
                              std::span<const PhaseEstimate> poisson,
                              double truth, const WindowGrid& windows) {
  if (gauss.size() != poisson.size())
    throw InvalidArgument("estimate lists differ in length");
  if (gauss.empty()) throw InvalidArgument("no estimates to compare");
  DeltaECurve curve;
  curve.windows = windows;
  curve.samples = gauss.size();
  curve.uninformative_gauss = count_uninformative(gauss);
  curve.uninformative_poisson = count_uninformative(poisson);
  for (double w : windows.widths()) {
    const double fg = hit_frequency(gauss, truth, w);
    const double fp = hit_frequency(poisson, truth, w);
    curve.f_gauss.push_back(fg);
    curve.f_poisson.push_back(fp);
    curve.delta_e.push_back(fp - fg);
  }
  return curve;
}

DeltaECurve delta_e_curve(std::span<const FringeSample> samples, double truth,
                          const WindowGrid& windows) {
  if (samples.empty()) throw InvalidArgument("delta_e_curve: no samples");
  const auto gauss = estimate_batch(samples, Method::gauss_dft);
  const auto poisson = estimate_batch(samples, Method::poisson_ml);
  DeltaECurve curve =
      compare_estimates(strip(gauss), strip(poisson), truth, windows);
  curve.nonconverged = static_cast<std::size_t>(
      std::count_if(poisson.begin(), poisson.end(),
                    [](const EstimateRecord& r) { return !r.converged; }));
  return curve;
}

std::int64_t score_difference(std::span<const PhaseEstimate> gauss,
                              std::span<const PhaseEstimate> poisson,
                              double truth, double width) {
  return static_cast<std::int64_t>(window_hits(poisson, truth, width)) -
         static_cast<std::int64_t>(window_hits(gauss, truth, width));
}

std::int64_t score_difference(std::span<const FringeSample> samples,
                              double truth, double width) {
  if (samples.empty()) throw InvalidArgument("score_difference: no samples");
  const auto gauss = strip(estimate_batch(samples, Method::gauss_dft));
  const auto poisson = strip(estimate_batch(samples, Method::poisson_ml));
  return score_difference(gauss, poisson, truth, width);
}

DeltaECurve ensemble_stats(std::span<const DeltaECurve> curves) {
  if (curves.size() < 2) throw InvalidArgument("ensemble needs >= 2 curves");
  const WindowGrid& windows = curves.front().windows;
  for (const DeltaECurve& c : curves)
    if (!(c.windows == windows))
      throw InvalidArgument("ensemble curves use different window grids");

  const std::size_t k_count = windows.size();
  const double n = static_cast<double>(curves.size());
  DeltaECurve out;
  out.windows = windows;
  out.f_gauss.resize(k_count);
  out.f_poisson.resize(k_count);
  out.delta_e.resize(k_count);
  out.errbar.emplace(k_count);
  // accumulate offsets from the first curve so that identical curves
  // reproduce their values exactly
  const DeltaECurve& first = curves.front();
  for (std::size_t k = 0; k < k_count; ++k) {
    CompensatedSum fg, fp;
    for (const DeltaECurve& c : curves) {
      fg.add(c.f_gauss[k] - first.f_gauss[k]);
      fp.add(c.f_poisson[k] - first.f_poisson[k]);
    }
    out.f_gauss[k] = first.f_gauss[k] + fg.value() / n;
    out.f_poisson[k] = first.f_poisson[k] + fp.value() / n;
    out.delta_e[k] = out.f_poisson[k] - out.f_gauss[k];
    CompensatedSum sq;
    for (const DeltaECurve& c : curves) {
      const double r = c.delta_e[k] - out.delta_e[k];
      sq.add(r * r);
    }
    (*out.errbar)[k] = std::sqrt(sq.value() / (n - 1.0));
  }
  for (const DeltaECurve& c : curves) {
    out.samples += c.samples;
    out.nonconverged += c.nonconverged;
    out.uninformative_gauss += c.uninformative_gauss;
    out.uninformative_poisson += c.uninformative_poisson;
  }
  return out;
}

VisibilityHistogram visibility_histogram(std::span<const PhaseEstimate> estimates,
                                         double true_norm_vis,
                                         std::size_t bins) {
  if (estimates.empty())
    throw InvalidArgument("visibility_histogram: no estimates");
  if (bins < 1) throw InvalidArgument("visibility_histogram: bins must be >= 1");

  std::vector<double> values;
  for (const PhaseEstimate& e : estimates) {
    if (!e.informative()) continue;
    if (auto v = e.normalized_visibility()) values.push_back(*v);
  }

  VisibilityHistogram hist;
  hist.true_value = true_norm_vis;
  hist.counts.assign(bins, 0);
  double upper = 0.0;
  CompensatedSum sum;
  for (double v : values) {
    upper = std::max(upper, v);
    sum.add(v);
  }
  if (!(upper > 0.0)) upper = 1.0;
  hist.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    hist.bin_edges[b] = upper * static_cast<double>(b) / static_cast<double>(bins);
  hist.bin_edges.back() = upper;

  for (double v : values) {
    auto b = static_cast<std::size_t>(v / upper * static_cast<double>(bins));
    hist.counts[std::min(b, bins - 1)]++;
  }
  hist.mean = values.empty() ? std::numeric_limits<double>::quiet_NaN()
                             : sum.value() / static_cast<double>(values.size());
  return hist;
}

}  // namespace fringefit
