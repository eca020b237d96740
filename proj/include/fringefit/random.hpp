// Seed-deterministic random streams.
//
// Every sample of a batch owns a stream derived from (master_seed, index), so
// batch content does not depend on how work is split across threads.

#ifndef FRINGEFIT_RANDOM_HPP_
#define FRINGEFIT_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace fringefit {

/// SplitMix64 finaliser; used to decorrelate nearby seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for child `index` of `master` (e.g. run r of an ensemble).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Stream for sample `index` of a batch seeded with `master_seed`.
  static RandomStream for_sample(std::uint64_t master_seed,
                                 std::uint64_t index);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, one variate per call).
  double normal();
  /// Exact Poisson variate. Inversion below 10, PTRS transformed rejection
  /// (Hoermann 1993) above. lambda == 0 returns 0.
  std::uint32_t poisson(double lambda);

  std::uint64_t next_u64() { return engine_(); }

  friend bool operator==(const RandomStream& a, const RandomStream& b) {
    return a.engine_ == b.engine_;
  }

 private:
  std::uint32_t poisson_inversion(double lambda);
  std::uint32_t poisson_ptrs(double lambda);

  std::mt19937_64 engine_;
};

}  // namespace fringefit

#endif  // FRINGEFIT_RANDOM_HPP_
