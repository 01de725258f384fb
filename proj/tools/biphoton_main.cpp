#include "biphoton/amplitudes.hpp"
#include "biphoton/bbo.hpp"
#include "biphoton/config.hpp"
#include "biphoton/engine.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/monte_carlo.hpp"
#include "biphoton/plot.hpp"
#include "biphoton/scan.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace biphoton;

namespace {

struct Cli {
  std::string config_path;
  std::string out_dir = ".";
  std::string svg_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double t = 0.0;
  double t_prime = 0.0;
};

RunConfig load_config(const Cli &cli) {
  RunConfig cfg = cli.config_path.empty() ? RunConfig{} : RunConfig::from_file(cli.config_path);
  if (cli.seed_given)
    cfg.mc_seed = cli.seed;
  return cfg;
}

fs::path prepare_out_dir(const Cli &cli, const RunConfig &cfg) {
  fs::path dir(cli.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  cfg.write_resolved(dir / "resolved-config.txt");
  return dir;
}

// Channel projection factor relating the closed-form rate to the
// analyzer-projected coincidence rate; exact whenever the birefringent
// delays exceed the crystal walk-off so the channel cross terms vanish.
double analyzer_factor(const AnalyzerConfig &a) {
  if (!a.present())
    return 1.0;
  const double w_hv = a.h_amp_at_d3() * a.v_amp_at_d4();
  const double w_vh = a.v_amp_at_d3() * a.h_amp_at_d4();
  return 0.5 * (w_hv * w_hv + w_vh * w_vh);
}

int cmd_rate(const Cli &cli) {
  const RunConfig cfg = load_config(cli);
  prepare_out_dir(cli, cfg);
  const SourceParams p = cfg.source();
  const DelayConfig d = cfg.delays();
  const AnalyzerConfig a = cfg.analyzer();

  const double analytic = coincidence_rate_analytic(p, d).rate_norm * analyzer_factor(a);
  const RateResult numeric = coincidence_rate_numeric(p, d, a, cfg.quadrature());
  std::printf("analytic=%.9f numeric=%.9f delta=%.9e\n", analytic, numeric.rate_norm,
              numeric.rate_norm - analytic);
  return 0;
}

int cmd_scan(const Cli &cli) {
  const RunConfig cfg = load_config(cli);
  const fs::path dir = prepare_out_dir(cli, cfg);
  const ScanSpec spec = cfg.scan_spec();
  const ScanCurve curve = run_scan(spec, cfg.source(), cfg.delays());

  emit_scan_csv(curve, dir / "scan.csv");
  if (!cli.svg_path.empty()) {
    std::vector<double> xs, ys;
    for (const ScanPoint &pt : curve.points) {
      xs.push_back(pt.tau_fs);
      ys.push_back(pt.rate_norm);
    }
    write_xy_svg(xs, ys, "delay (fs)", "normalized coincidence rate", cli.svg_path);
  }
  std::printf("visibility=%.9f baseline=%.9f extremum_tau_fs=%.9g extremum_rate=%.9f\n",
              curve.visibility, curve.baseline, curve.extremum.tau_fs, curve.extremum.rate_norm);
  return 0;
}

int cmd_mc(const Cli &cli) {
  const RunConfig cfg = load_config(cli);
  const fs::path dir = prepare_out_dir(cli, cfg);
  const ScanSpec spec = cfg.scan_spec();
  const SourceParams p = cfg.source();
  const DelayConfig d = cfg.delays();

  const auto records = mc_scan(spec, p, d, cfg.mc_config());
  emit_counts_csv(records, dir / "counts.csv");
  if (!cli.svg_path.empty()) {
    std::vector<double> xs, ys;
    for (const auto &[tau, rec] : records) {
      xs.push_back(tau);
      ys.push_back(static_cast<double>(rec.coincidences));
    }
    write_xy_svg(xs, ys, "delay (fs)", "coincidence counts", cli.svg_path);
  }
  const McScanSummary s = summarize_mc_scan(records, spec, p, d);
  std::printf("visibility=%.4f +- %.4f baseline_counts=%.1f extremum_tau_fs=%g\n", s.visibility,
              s.sigma, s.baseline_counts, s.extremum_tau_fs);
  return 0;
}

const char *emission_name(Pathway::Emission e) { return e == Pathway::Emission::HV ? "HV" : "VH"; }
const char *outcome_name(Pathway::Outcome o) {
  return o == Pathway::Outcome::ReflectReflect ? "r-r" : "t-t";
}
const char *channel_name(DetectionChannel c) {
  switch (c) {
  case DetectionChannel::HAtD3VAtD4:
    return "H@D3,V@D4";
  case DetectionChannel::VAtD3HAtD4:
    return "V@D3,H@D4";
  case DetectionChannel::BothAtD3:
    return "both@D3";
  case DetectionChannel::BothAtD4:
    return "both@D4";
  }
  return "?";
}

int cmd_pathways(const Cli &cli) {
  const RunConfig cfg = load_config(cli);
  prepare_out_dir(cli, cfg);
  const SourceParams p = cfg.source();
  const DelayConfig d = cfg.delays();

  const PathwaySet set = pathway_decomposition(cli.t, cli.t_prime, p, d);
  for (const Pathway &path : set.paths) {
    std::printf("%s %s %s %s %.9e %.9e\n", path.label.c_str(), emission_name(path.emission),
                outcome_name(path.outcome), channel_name(path.channel), path.amplitude.real(),
                path.amplitude.imag());
  }
  const double p_hv = two_time_probability(cli.t, cli.t_prime, DetectionChannel::HAtD3VAtD4, p, d,
                                           AnalyzerConfig::none());
  const double p_vh = two_time_probability(cli.t, cli.t_prime, DetectionChannel::VAtD3HAtD4, p, d,
                                           AnalyzerConfig::none());
  std::printf("|Psi1+Psi4|=%.9e P_HV=%.9e\n", std::abs(set.sum_hv_channel()), p_hv);
  std::printf("|Psi2+Psi3|=%.9e P_VH=%.9e\n", std::abs(set.sum_vh_channel()), p_vh);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Two-photon interference simulator for a pulse-pumped type-II "
               "down-conversion interferometer"};
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--config", cli.config_path, "flat key = value configuration file");
  app.add_option("--out", cli.out_dir, "output directory (default .)");

  CLI::App *rate = app.add_subcommand("rate", "closed-form vs quadrature coincidence rate");
  CLI::App *scan = app.add_subcommand("scan", "delay scan -> CSV (and optional SVG)");
  scan->add_option("--svg", cli.svg_path, "also write an SVG plot");
  CLI::App *mc = app.add_subcommand("mc", "Monte Carlo counting scan -> CSV");
  mc->add_option("--svg", cli.svg_path, "also write an SVG plot");
  mc->add_option("--seed", cli.seed, "override mc_seed")->each([&](const std::string &) {
    cli.seed_given = true;
  });
  CLI::App *pathways = app.add_subcommand("pathways", "two-photon detection alternatives at (t, t')");
  pathways->add_option("--t", cli.t, "detection time t at D3 (fs)")->required();
  pathways->add_option("--tprime", cli.t_prime, "detection time t' at D4 (fs)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rate->parsed())
      return cmd_rate(cli);
    if (scan->parsed())
      return cmd_scan(cli);
    if (mc->parsed())
      return cmd_mc(cli);
    if (pathways->parsed())
      return cmd_pathways(cli);
    return 2;
  } catch (const QuadratureError &e) {
    std::fprintf(stderr, "error: %s (achieved estimate %.9g, discrepancy %.3g)\n", e.what(),
                 e.achieved_estimate, e.discrepancy);
    return 3;
  } catch (const IoError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const ConfigError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
