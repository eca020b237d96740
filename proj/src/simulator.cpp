#include "fringefit/simulator.hpp"

namespace fringefit {

void BatchSpec::validate() const {
  params.validate();
  if (sample_count < 1) throw InvalidArgument("sample_count must be >= 1");
}

FringeSample sample_poisson_fringe(const SetupParams& params,
                                   const AuxShiftGrid& grid,
                                   RandomStream& stream) {
  const TwoPortMeans means = mean_two_port(params, grid);
  std::vector<Count> o(grid.count());
  std::vector<Count> h(grid.count());
  for (std::size_t j = 0; j < grid.count(); ++j) {
    o[j] = stream.poisson(means.mean_o[j]);
    h[j] = stream.poisson(means.mean_h[j]);
  }
  return FringeSample(std::move(o), std::move(h), grid);
}

FourPortSample sample_gaussian_four_port(const FourPortParams& params,
                                         RandomStream& stream) {
  const auto means = mean_four_port(params);
  FourPortSample out;
  out.kind = SampleKind::continuous;
  for (std::size_t i = 0; i < 4; ++i)
    out.channels[i] = means[i] + params.noise_sigma * stream.normal();
  return out;
}

FourPortSample sample_poisson_four_port(const FourPortParams& params,
                                        RandomStream& stream) {
  const auto means = mean_four_port(params);
  FourPortSample out;
  out.kind = SampleKind::discrete;
  for (std::size_t i = 0; i < 4; ++i)
    out.channels[i] = static_cast<double>(stream.poisson(means[i]));
  return out;
}

std::vector<FringeSample> run_batch_serial(const BatchSpec& spec) {
  spec.validate();
  std::vector<FringeSample> out;
  out.reserve(spec.sample_count);
  for (std::size_t i = 0; i < spec.sample_count; ++i) {
    RandomStream stream = RandomStream::for_sample(spec.master_seed, i);
    out.push_back(sample_poisson_fringe(spec.params, spec.grid, stream));
  }
  return out;
}

}  // namespace fringefit
