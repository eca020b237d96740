#include "fringefit/kernels.hpp"

namespace fringefit {

std::string to_string(Method method) {
  return method == Method::gauss_dft ? "gauss-dft" : "poisson-ml";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "gauss-dft") return Method::gauss_dft;
  if (text == "poisson-ml") return Method::poisson_ml;
  return std::nullopt;
}

EstimateRecord estimate_one(const FringeSample& sample, Method method) {
  if (method == Method::gauss_dft) return {dft_estimate(sample), true, 0};
  const MaxLikResult ml = poisson_maxlik(sample);
  return {ml.estimate, ml.report.converged, ml.report.iterations};
}

std::vector<EstimateRecord> estimate_batch_serial(
    std::span<const FringeSample> samples, Method method) {
  std::vector<EstimateRecord> out;
  out.reserve(samples.size());
  for (const FringeSample& s : samples) out.push_back(estimate_one(s, method));
  return out;
}

}  // namespace fringefit
