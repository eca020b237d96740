#include <omp.h>

#include <cstdint>
#include <optional>

#include "fringefit/kernels.hpp"
#include "fringefit/simulator.hpp"

namespace fringefit {

namespace {
int g_thread_limit = 0;

int team_size() {
  return g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads();
}
}  // namespace

void set_thread_limit(int threads) { g_thread_limit = threads > 0 ? threads : 0; }

int thread_limit() { return team_size(); }

std::vector<EstimateRecord> estimate_batch(std::span<const FringeSample> samples,
                                           Method method) {
  std::vector<EstimateRecord> out(samples.size());
  const auto count = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(team_size())
  for (std::int64_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        estimate_one(samples[static_cast<std::size_t>(i)], method);
  return out;
}

std::vector<FringeSample> run_batch(const BatchSpec& spec) {
  spec.validate();
  std::vector<std::optional<FringeSample>> slots(spec.sample_count);
  const auto count = static_cast<std::int64_t>(spec.sample_count);
#pragma omp parallel for schedule(static) num_threads(team_size())
  for (std::int64_t i = 0; i < count; ++i) {
    RandomStream stream =
        RandomStream::for_sample(spec.master_seed, static_cast<std::uint64_t>(i));
    slots[static_cast<std::size_t>(i)] =
        sample_poisson_fringe(spec.params, spec.grid, stream);
  }
  std::vector<FringeSample> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace fringefit
