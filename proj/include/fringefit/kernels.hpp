// Batch kernels. Each has an OpenMP variant and a serial reference; both
// compute every element from its own inputs only, so their outputs match
// exactly for any thread count.

#ifndef FRINGEFIT_KERNELS_HPP_
#define FRINGEFIT_KERNELS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fringefit/estimators.hpp"
#include "fringefit/model.hpp"

namespace fringefit {

enum class Method { gauss_dft, poisson_ml };

std::string to_string(Method method);
std::optional<Method> parse_method(std::string_view text);

struct EstimateRecord {
  PhaseEstimate estimate;
  bool converged = true;
  std::size_t iterations = 0;
};

EstimateRecord estimate_one(const FringeSample& sample, Method method);

std::vector<EstimateRecord> estimate_batch(std::span<const FringeSample> samples,
                                           Method method);
std::vector<EstimateRecord> estimate_batch_serial(
    std::span<const FringeSample> samples, Method method);

/// Caps the OpenMP team size; values < 1 restore the runtime default.
void set_thread_limit(int threads);
int thread_limit();

}  // namespace fringefit

#endif  // FRINGEFIT_KERNELS_HPP_
