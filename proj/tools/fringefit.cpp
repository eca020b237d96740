// fringefit: simulate fringe-scan batches, run the Gaussian (DFT) and Poisson
// maximum-likelihood phase estimators, and compare their window hit rates.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fringefit/commands.hpp"
#include "fringefit/config.hpp"
#include "fringefit/kernels.hpp"

namespace {

using fringefit::ScenarioConfig;

struct ConfigFlags {
  std::string config_path;
  std::optional<double> i_o, i_h, i_v, theta;
  std::optional<std::size_t> positions, samples, runs, windows;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_config_flags(CLI::App* app, ConfigFlags& f) {
  app->add_option("--config", f.config_path, "key = value config file");
  app->add_option("--i-o", f.i_o, "mean o-beam counts per position");
  app->add_option("--i-h", f.i_h, "mean h-beam counts per position");
  app->add_option("--i-v", f.i_v, "fringe amplitude (unnormalized visibility)");
  app->add_option("--theta", f.theta, "true phase [rad]");
  app->add_option("--positions", f.positions, "phase shifter positions");
  app->add_option("--samples", f.samples, "samples per run");
  app->add_option("--runs", f.runs, "independent runs");
  app->add_option("--seed", f.seed, "master seed");
  app->add_option("--windows", f.windows, "number of window widths");
  app->add_option("--out", f.out, "output path (stdout when omitted)");
}

ScenarioConfig resolve(const ConfigFlags& f, ScenarioConfig base) {
  ScenarioConfig c = f.config_path.empty()
                         ? std::move(base)
                         : fringefit::load_config(f.config_path, std::move(base));
  if (f.i_o) c.params.mean_o = *f.i_o;
  if (f.i_h) c.params.mean_h = *f.i_h;
  if (f.i_v) c.params.amplitude = *f.i_v;
  if (f.theta) c.params.phase = fringefit::wrap_phase(*f.theta);
  if (f.positions) c.positions = *f.positions;
  if (f.samples) c.samples = *f.samples;
  if (f.runs) c.runs = *f.runs;
  if (f.seed) c.seed = *f.seed;
  if (f.windows) c.window_count = *f.windows;
  if (f.out) c.output_path = *f.out;
  return c;
}

fringefit::Method method_or_throw(const std::string& name) {
  auto m = fringefit::parse_method(name);
  if (!m) throw fringefit::ConfigError("unknown method '" + name + "'");
  return *m;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = fringefit::cli;

  if (const char* env = std::getenv("FRINGEFIT_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) fringefit::set_thread_limit(threads);
  }

  CLI::App app{"Gaussian vs Poisson maximum-likelihood phase estimation"};
  app.require_subcommand(1);

  ConfigFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "simulate a batch of fringe scans");
  add_config_flags(sim, sim_flags);

  std::string est_input;
  std::vector<std::string> est_methods;
  std::string est_out;
  auto* est = app.add_subcommand("estimate", "estimate phases for a sample file");
  est->add_option("input", est_input, "sample CSV")->required();
  est->add_option("--method", est_methods,
                  "gauss-dft and/or poisson-ml (default: both)");
  est->add_option("--out", est_out, "estimates CSV (stdout when omitted)");

  cli::CompareArgs cmp_args;
  std::string cmp_samples;
  std::vector<std::string> cmp_estimates;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "Delta E curve from samples or estimates");
  cmp->add_option("--samples", cmp_samples, "sample CSV (runs both estimators)");
  cmp->add_option("--estimates", cmp_estimates, "estimate CSV file(s)");
  cmp->add_option("--theta", cmp_args.truth, "true phase [rad]")->required();
  cmp->add_option("--windows", cmp_args.window_count, "number of window widths");
  cmp->add_flag("--reference-window", cmp_args.reference_window,
                "add the 1.256 rad window");
  cmp->add_option("--out", cmp_out, "Delta E CSV (stdout when omitted)");

  ConfigFlags ens_flags;
  auto* ens = app.add_subcommand("ensemble", "Delta E mean and error bars over runs");
  add_config_flags(ens, ens_flags);

  ConfigFlags vis_flags;
  std::string vis_method = "poisson-ml";
  auto* vis = app.add_subcommand("visibility", "normalized visibility histogram");
  add_config_flags(vis, vis_flags);
  vis->add_option("--method", vis_method, "gauss-dft or poisson-ml");

  ConfigFlags scn_flags;
  std::string scn_name;
  bool scn_print = false;
  auto* scn = app.add_subcommand("scenario", "run a preset: fig2, fig3a, fig3c, fig4");
  scn->add_option("name", scn_name, "preset name")->required();
  scn->add_flag("--print-config", scn_print, "print the resolved config and exit");
  add_config_flags(scn, scn_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsageError;
  }

  return cli::guarded(
      [&]() -> int {
        if (*sim) return cli::simulate(resolve(sim_flags, {}), std::cout, std::cerr);
        if (*est) {
          cli::EstimateArgs args;
          args.input = est_input;
          args.output = est_out;
          if (!est_methods.empty()) {
            args.methods.clear();
            for (const auto& m : est_methods) args.methods.push_back(method_or_throw(m));
          }
          return cli::estimate(args, std::cout, std::cerr);
        }
        if (*cmp) {
          cmp_args.samples = cmp_samples;
          for (const auto& p : cmp_estimates) cmp_args.estimates.emplace_back(p);
          cmp_args.output = cmp_out;
          return cli::compare(cmp_args, std::cout, std::cerr);
        }
        if (*ens) return cli::ensemble(resolve(ens_flags, {}), std::cout, std::cerr);
        if (*vis)
          return cli::visibility(resolve(vis_flags, {}), method_or_throw(vis_method),
                                 std::cout, std::cerr);
        auto preset = fringefit::scenario_preset(scn_name);
        if (!preset) throw fringefit::ConfigError("unknown scenario '" + scn_name + "'");
        const ScenarioConfig config = resolve(scn_flags, *preset);
        if (scn_print) {
          fringefit::write_config(std::cout, config);
          return cli::kSuccess;
        }
        return cli::scenario(scn_name, config, std::cout, std::cerr);
      },
      std::cerr);
}
