#include "fringefit/commands.hpp"

#include <fstream>
#include <ostream>

#include "fringefit/csv_io.hpp"
#include "fringefit/harness.hpp"
#include "fringefit/simulator.hpp"

namespace fringefit::cli {

namespace {

void emit(const std::filesystem::path& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    fallback.flush();
  } else {
    write_file_atomic(path, writer);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  return in;
}

std::vector<PhaseEstimate> estimates_of(const std::vector<EstimateRecord>& r) {
  std::vector<PhaseEstimate> out;
  out.reserve(r.size());
  for (const EstimateRecord& e : r) out.push_back(e.estimate);
  return out;
}

// Splits estimate rows by method and checks both sides cover ids 0..M-1.
std::pair<std::vector<PhaseEstimate>, std::vector<PhaseEstimate>> split_rows(
    const std::vector<EstimateRow>& rows, std::size_t& nonconverged) {
  std::vector<EstimateRow> gauss, poisson;
  for (const EstimateRow& r : rows)
    (r.method == Method::gauss_dft ? gauss : poisson).push_back(r);
  if (gauss.empty() || poisson.empty())
    throw DataError("compare needs both gauss-dft and poisson-ml estimates");
  if (gauss.size() != poisson.size())
    throw DataError("gauss-dft and poisson-ml sample ids do not match");
  std::vector<PhaseEstimate> g, p;
  nonconverged = 0;
  for (std::size_t i = 0; i < gauss.size(); ++i) {
    if (gauss[i].sample_id != poisson[i].sample_id)
      throw DataError("sample id mismatch: " +
                      std::to_string(gauss[i].sample_id) + " vs " +
                      std::to_string(poisson[i].sample_id));
    g.push_back(gauss[i].record.estimate);
    p.push_back(poisson[i].record.estimate);
    if (!poisson[i].record.converged) ++nonconverged;
  }
  return {std::move(g), std::move(p)};
}

}  // namespace

int simulate(const ScenarioConfig& config, std::ostream& out, std::ostream& log) {
  config.validate();
  const auto samples = run_batch(config.batch(config.seed));
  emit(config.output_path, out,
       [&](std::ostream& os) { write_samples(os, samples); });
  log << "simulated M=" << samples.size() << " N=" << config.positions
      << " seed=" << config.seed << '\n';
  return kSuccess;
}

int estimate(const EstimateArgs& args, std::ostream& out, std::ostream& log) {
  if (args.methods.empty()) throw ConfigError("no estimation method selected");
  std::ifstream in = open_input(args.input);
  const auto samples = read_samples(in);

  std::vector<EstimateRow> rows;
  std::size_t nonconverged = 0;
  for (Method m : args.methods) {
    const auto records = estimate_batch(samples, m);
    for (std::size_t i = 0; i < records.size(); ++i) {
      rows.push_back({i, m, records[i]});
      if (!records[i].converged) ++nonconverged;
    }
  }
  emit(args.output, out, [&](std::ostream& os) { write_estimates(os, rows); });
  log << "estimated " << samples.size() << " samples x " << args.methods.size()
      << " methods";
  if (nonconverged > 0) log << ", " << nonconverged << " not converged";
  log << '\n';
  return nonconverged > 0 ? kNonConvergence : kSuccess;
}

int compare(const CompareArgs& args, std::ostream& out, std::ostream& log) {
  WindowGrid windows = WindowGrid::equidistant(args.window_count);
  if (args.reference_window) windows = windows.with_width(kReferenceWindow);

  DeltaECurve curve;
  if (!args.samples.empty()) {
    if (!args.estimates.empty())
      throw ConfigError("give either a sample file or estimate files");
    std::ifstream in = open_input(args.samples);
    const auto samples = read_samples(in);
    curve = delta_e_curve(samples, args.truth, windows);
  } else {
    if (args.estimates.empty() || args.estimates.size() > 2)
      throw ConfigError("compare needs a sample file or 1-2 estimate files");
    std::vector<EstimateRow> rows;
    for (const auto& path : args.estimates) {
      std::ifstream in = open_input(path);
      auto part = read_estimates(in);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    std::size_t nonconverged = 0;
    auto [g, p] = split_rows(rows, nonconverged);
    curve = compare_estimates(g, p, args.truth, windows);
    curve.nonconverged = nonconverged;
  }
  emit(args.output, out, [&](std::ostream& os) { write_delta_e(os, curve); });
  log << "compared " << curve.samples << " samples over " << windows.size()
      << " windows (uninformative: gauss " << curve.uninformative_gauss
      << ", poisson " << curve.uninformative_poisson << ")\n";
  return curve.nonconverged > 0 ? kNonConvergence : kSuccess;
}

int ensemble(const ScenarioConfig& config, std::ostream& out, std::ostream& log) {
  config.validate();
  if (config.runs < 2) throw ConfigError("ensemble needs runs >= 2");
  const WindowGrid windows = config.windows();
  std::vector<DeltaECurve> curves;
  curves.reserve(config.runs);
  for (std::size_t r = 0; r < config.runs; ++r) {
    const auto samples = run_batch(config.batch(derive_seed(config.seed, r)));
    curves.push_back(delta_e_curve(samples, config.params.phase, windows));
  }
  const DeltaECurve stats = ensemble_stats(curves);
  emit(config.output_path, out,
       [&](std::ostream& os) { write_delta_e(os, stats); });
  log << "ensemble of " << config.runs << " runs x " << config.samples
      << " samples";
  if (stats.nonconverged > 0) log << ", " << stats.nonconverged << " not converged";
  log << '\n';
  return stats.nonconverged > 0 ? kNonConvergence : kSuccess;
}

int visibility(const ScenarioConfig& config, Method method, std::ostream& out,
               std::ostream& log) {
  config.validate();
  const auto samples = run_batch(config.batch(config.seed));
  const auto records = estimate_batch(samples, method);
  const auto estimates = estimates_of(records);
  const double truth = config.params.mean_o > 0.0
                           ? config.params.amplitude / config.params.mean_o
                           : 0.0;
  const VisibilityHistogram hist = visibility_histogram(estimates, truth);
  std::size_t informative = 0;
  std::size_t nonconverged = 0;
  for (const EstimateRecord& r : records) {
    if (r.estimate.informative() && r.estimate.normalized_visibility())
      ++informative;
    if (!r.converged) ++nonconverged;
  }
  emit(config.output_path, out, [&](std::ostream& os) {
    write_histogram(os, hist, informative, samples.size());
  });
  log << "visibility mean=" << format_real(hist.mean)
      << " true=" << format_real(truth) << " (" << informative << "/"
      << samples.size() << " informative)\n";
  return nonconverged > 0 ? kNonConvergence : kSuccess;
}

int scenario(const std::string& name, const ScenarioConfig& config,
             std::ostream& out, std::ostream& log) {
  if (name == "fig4") return visibility(config, Method::poisson_ml, out, log);
  if (name == "fig2" || name == "fig3a" || name == "fig3c")
    return ensemble(config, out, log);
  throw ConfigError("unknown scenario '" + name + "'");
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace fringefit::cli
