#ifndef FRINGEFIT_SIMULATOR_HPP_
#define FRINGEFIT_SIMULATOR_HPP_

#include <cstdint>
#include <vector>

#include "fringefit/model.hpp"
#include "fringefit/random.hpp"

namespace fringefit {

struct BatchSpec {
  SetupParams params;
  AuxShiftGrid grid{8};
  std::size_t sample_count = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// Independent Poisson counts at every (beam, position); zero means give 0.
FringeSample sample_poisson_fringe(const SetupParams& params,
                                   const AuxShiftGrid& grid,
                                   RandomStream& stream);

/// Normal channels around mean_four_port with standard deviation sigma.
FourPortSample sample_gaussian_four_port(const FourPortParams& params,
                                         RandomStream& stream);

/// Poisson counts around mean_four_port.
FourPortSample sample_poisson_four_port(const FourPortParams& params,
                                        RandomStream& stream);

/// Sample i of the batch uses RandomStream::for_sample(master_seed, i).
/// The OpenMP and serial variants produce identical output.
std::vector<FringeSample> run_batch(const BatchSpec& spec);
std::vector<FringeSample> run_batch_serial(const BatchSpec& spec);

}  // namespace fringefit

#endif  // FRINGEFIT_SIMULATOR_HPP_
