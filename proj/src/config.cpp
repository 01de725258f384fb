#include "biphoton/config.hpp"

#include "biphoton/bbo.hpp"
#include "biphoton/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace biphoton {

namespace {

std::string trim(const std::string &s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

long long parse_int(const std::string &key, const std::string &value) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  return v;
}

std::uint64_t parse_u64(const std::string &key, const std::string &value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("config key '" + key + "': cannot parse '" + value +
                      "' as an unsigned integer");
  return v;
}

} // namespace

RunConfig::RunConfig() {
  const bbo::GroupDelays gd = bbo::group_delays_390_780();
  const SourceParams defaults = bbo::default_source_params();
  crystal_length_mm = defaults.crystal_length_mm;
  kp_prime_fs_per_mm = gd.kp_prime_fs_per_mm;
  ko_prime_fs_per_mm = gd.ko_prime_fs_per_mm;
  ke_prime_fs_per_mm = gd.ke_prime_fs_per_mm;
  mean_frequency_rad_per_fs = defaults.mean_frequency_rad_per_fs;
  pump_bandwidth_rad_per_fs = defaults.pump_bandwidth_rad_per_fs;
}

SourceParams RunConfig::source() const {
  return SourceParams(crystal_length_mm, kp_prime_fs_per_mm, ko_prime_fs_per_mm,
                      ke_prime_fs_per_mm, mean_frequency_rad_per_fs, pump_bandwidth_rad_per_fs,
                      pump_phase_rad);
}

DelayConfig RunConfig::delays() const { return DelayConfig{tau_fs, tau1_fs, tau2_fs}; }

AnalyzerConfig RunConfig::analyzer() const {
  return analyzers_present ? AnalyzerConfig::angles(analyzer_theta3_rad, analyzer_theta4_rad)
                           : AnalyzerConfig::none();
}

QuadratureSpec RunConfig::quadrature() const {
  return QuadratureSpec{quad_panels_per_axis, quad_nodes_per_panel, quad_box_padding};
}

ScanSpec RunConfig::scan_spec() const {
  ScanSpec spec;
  spec.tau_min_fs = scan_tau_min_fs;
  spec.tau_max_fs = scan_tau_max_fs;
  spec.steps = scan_steps;
  spec.engine = scan_engine;
  spec.analyzers = analyzer();
  spec.delta_tau2_fs = scan_delta_tau2_fs;
  spec.delta_tau_fs = scan_delta_tau_fs;
  spec.quadrature = quadrature();
  return spec;
}

MCConfig RunConfig::mc_config() const {
  MCConfig mc;
  mc.pulses = mc_pulses;
  mc.pair_prob_per_pulse = mc_pair_prob;
  mc.eff3 = mc_eff3;
  mc.eff4 = mc_eff4;
  mc.dark_prob_per_window = mc_dark_prob_per_window;
  mc.coincidence_window_ns = mc_coincidence_window_ns;
  mc.rep_period_ns = mc_rep_period_ns;
  mc.seed = mc_seed;
  return mc;
}

RunConfig RunConfig::from_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file " + path.string());
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void RunConfig::apply(const std::string &key, const std::string &value) {
  if (key == "crystal_length_mm")
    crystal_length_mm = parse_double(key, value);
  else if (key == "kp_prime_fs_per_mm")
    kp_prime_fs_per_mm = parse_double(key, value);
  else if (key == "ko_prime_fs_per_mm")
    ko_prime_fs_per_mm = parse_double(key, value);
  else if (key == "ke_prime_fs_per_mm")
    ke_prime_fs_per_mm = parse_double(key, value);
  else if (key == "dgd_fs") {
    // direct total differential group delay; repositions the o-ray value
    const double dgd = parse_double(key, value);
    if (!(dgd > 0.0))
      throw ConfigError("config key 'dgd_fs': must be > 0");
    ko_prime_fs_per_mm = ke_prime_fs_per_mm + dgd / crystal_length_mm;
  } else if (key == "mean_frequency_rad_per_fs")
    mean_frequency_rad_per_fs = parse_double(key, value);
  else if (key == "pump_bandwidth_rad_per_fs")
    pump_bandwidth_rad_per_fs = parse_double(key, value);
  else if (key == "pump_phase_rad")
    pump_phase_rad = parse_double(key, value);
  else if (key == "tau_fs")
    tau_fs = parse_double(key, value);
  else if (key == "tau1_fs")
    tau1_fs = parse_double(key, value);
  else if (key == "tau2_fs")
    tau2_fs = parse_double(key, value);
  else if (key == "analyzers") {
    if (value == "none")
      analyzers_present = false;
    else if (value == "angles")
      analyzers_present = true;
    else
      throw ConfigError("config key 'analyzers': expected 'none' or 'angles', got '" + value +
                        "'");
  } else if (key == "analyzer_theta3_rad")
    analyzer_theta3_rad = parse_double(key, value);
  else if (key == "analyzer_theta4_rad")
    analyzer_theta4_rad = parse_double(key, value);
  else if (key == "quad_panels_per_axis")
    quad_panels_per_axis = static_cast<int>(parse_int(key, value));
  else if (key == "quad_nodes_per_panel")
    quad_nodes_per_panel = static_cast<int>(parse_int(key, value));
  else if (key == "quad_box_padding")
    quad_box_padding = parse_double(key, value);
  else if (key == "scan_tau_min_fs")
    scan_tau_min_fs = parse_double(key, value);
  else if (key == "scan_tau_max_fs")
    scan_tau_max_fs = parse_double(key, value);
  else if (key == "scan_steps")
    scan_steps = static_cast<int>(parse_int(key, value));
  else if (key == "scan_engine") {
    if (value == "analytic")
      scan_engine = EngineKind::Analytic;
    else if (value == "numeric")
      scan_engine = EngineKind::Numeric;
    else
      throw ConfigError("config key 'scan_engine': expected 'analytic' or 'numeric', got '" +
                        value + "'");
  } else if (key == "scan_delta_tau2_fs")
    scan_delta_tau2_fs = parse_double(key, value);
  else if (key == "scan_delta_tau_fs")
    scan_delta_tau_fs = parse_double(key, value);
  else if (key == "mc_pulses")
    mc_pulses = parse_u64(key, value);
  else if (key == "mc_pair_prob")
    mc_pair_prob = parse_double(key, value);
  else if (key == "mc_eff3")
    mc_eff3 = parse_double(key, value);
  else if (key == "mc_eff4")
    mc_eff4 = parse_double(key, value);
  else if (key == "mc_dark_prob_per_window")
    mc_dark_prob_per_window = parse_double(key, value);
  else if (key == "mc_coincidence_window_ns")
    mc_coincidence_window_ns = parse_double(key, value);
  else if (key == "mc_rep_period_ns")
    mc_rep_period_ns = parse_double(key, value);
  else if (key == "mc_seed")
    mc_seed = parse_u64(key, value);
  else
    throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::write_resolved(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out)
    throw IoError("write_resolved: cannot open " + path.string());
  char buf[96];
  auto emit = [&](const char *key, double v) {
    std::snprintf(buf, sizeof(buf), "%s = %.17g\n", key, v);
    out << buf;
  };
  auto emit_i = [&](const char *key, long long v) { out << key << " = " << v << "\n"; };
  auto emit_u = [&](const char *key, unsigned long long v) { out << key << " = " << v << "\n"; };

  out << "# resolved configuration; reusable via --config\n";
  emit("crystal_length_mm", crystal_length_mm);
  emit("kp_prime_fs_per_mm", kp_prime_fs_per_mm);
  emit("ko_prime_fs_per_mm", ko_prime_fs_per_mm);
  emit("ke_prime_fs_per_mm", ke_prime_fs_per_mm);
  emit("mean_frequency_rad_per_fs", mean_frequency_rad_per_fs);
  emit("pump_bandwidth_rad_per_fs", pump_bandwidth_rad_per_fs);
  emit("pump_phase_rad", pump_phase_rad);
  emit("tau_fs", tau_fs);
  emit("tau1_fs", tau1_fs);
  emit("tau2_fs", tau2_fs);
  out << "analyzers = " << (analyzers_present ? "angles" : "none") << "\n";
  emit("analyzer_theta3_rad", analyzer_theta3_rad);
  emit("analyzer_theta4_rad", analyzer_theta4_rad);
  emit_i("quad_panels_per_axis", quad_panels_per_axis);
  emit_i("quad_nodes_per_panel", quad_nodes_per_panel);
  emit("quad_box_padding", quad_box_padding);
  emit("scan_tau_min_fs", scan_tau_min_fs);
  emit("scan_tau_max_fs", scan_tau_max_fs);
  emit_i("scan_steps", scan_steps);
  out << "scan_engine = " << (scan_engine == EngineKind::Analytic ? "analytic" : "numeric")
      << "\n";
  emit("scan_delta_tau2_fs", scan_delta_tau2_fs);
  emit("scan_delta_tau_fs", scan_delta_tau_fs);
  emit_u("mc_pulses", mc_pulses);
  emit("mc_pair_prob", mc_pair_prob);
  emit("mc_eff3", mc_eff3);
  emit("mc_eff4", mc_eff4);
  emit("mc_dark_prob_per_window", mc_dark_prob_per_window);
  emit("mc_coincidence_window_ns", mc_coincidence_window_ns);
  emit("mc_rep_period_ns", mc_rep_period_ns);
  emit_u("mc_seed", mc_seed);
  out.flush();
  if (!out)
    throw IoError("write_resolved: write failed for " + path.string());
}

} // namespace biphoton
