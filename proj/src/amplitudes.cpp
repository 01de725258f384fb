#include "biphoton/amplitudes.hpp"

#include "biphoton/errors.hpp"

#include <cmath>

namespace biphoton {

double rect(double t, double t1, double t2) {
  if (t1 > t2)
    throw ConfigError("rect: invalid interval, t1 > t2");
  return (t >= t1 && t < t2) ? 1.0 : 0.0;
}

double pump_envelope(double t_o, double t_e, const SourceParams &p) {
  const double arg = p.envelope_slope_o() * t_o - p.envelope_slope_e() * t_e;
  const double s = p.pump_bandwidth_rad_per_fs;
  return std::exp(-0.25 * s * s * arg * arg);
}

namespace {

// Unshifted crystal-exit amplitude G(t_o, t_e).
ComplexAmp crystal_amplitude(double t_o, double t_e, const SourceParams &p) {
  const double diff = t_e - t_o;
  if (diff < 0.0 || diff >= p.dgd_fs())
    return {0.0, 0.0};
  const double mag = p.norm_constant() * pump_envelope(t_o, t_e, p);
  const double phase = -p.mean_frequency_rad_per_fs * (t_o + t_e);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

ComplexAmp emission_phase(const SourceParams &p) {
  return {std::cos(p.pump_phase_rad), std::sin(p.pump_phase_rad)};
}

} // namespace

ComplexAmp amplitude_hv(double t_o, double t_e, const SourceParams &p, const DelayConfig &d) {
  return crystal_amplitude(t_o, t_e - d.tau2_fs - d.tau_fs, p);
}

ComplexAmp amplitude_vh(double t_o, double t_e, const SourceParams &p, const DelayConfig &d) {
  return crystal_amplitude(t_o - d.tau_fs, t_e - d.tau1_fs, p);
}

ComplexAmp channel_amplitude(double t, double t_prime, DetectionChannel ch, const SourceParams &p,
                             const DelayConfig &d) {
  const ComplexAmp phase = emission_phase(p);
  switch (ch) {
  case DetectionChannel::HAtD3VAtD4:
    return 0.5 * (-amplitude_hv(t, t_prime, p, d) + phase * amplitude_vh(t, t_prime, p, d));
  case DetectionChannel::VAtD3HAtD4:
    return 0.5 * (amplitude_hv(t_prime, t, p, d) - phase * amplitude_vh(t_prime, t, p, d));
  case DetectionChannel::BothAtD3:
  case DetectionChannel::BothAtD4:
    return ComplexAmp{0.0, 0.5} *
           (amplitude_hv(t, t_prime, p, d) + phase * amplitude_vh(t, t_prime, p, d));
  }
  return {0.0, 0.0};
}

double two_time_probability(double t, double t_prime, DetectionChannel ch, const SourceParams &p,
                            const DelayConfig &d, const AnalyzerConfig &a) {
  double weight = 1.0;
  switch (ch) {
  case DetectionChannel::HAtD3VAtD4:
    weight = a.h_amp_at_d3() * a.v_amp_at_d4();
    break;
  case DetectionChannel::VAtD3HAtD4:
    weight = a.v_amp_at_d3() * a.h_amp_at_d4();
    break;
  case DetectionChannel::BothAtD3:
    weight = a.h_amp_at_d3() * a.v_amp_at_d3();
    break;
  case DetectionChannel::BothAtD4:
    weight = a.h_amp_at_d4() * a.v_amp_at_d4();
    break;
  }
  const ComplexAmp amp = channel_amplitude(t, t_prime, ch, p, d);
  return weight * weight * std::norm(amp);
}

SupportBreakpoints support_breakpoints(const SourceParams &p, const DelayConfig &d) {
  const double T = p.dgd_fs();
  return SupportBreakpoints{
      d.tau2_fs + d.tau_fs, d.tau2_fs + d.tau_fs + T,
      d.tau1_fs - d.tau_fs, d.tau1_fs - d.tau_fs + T,
  };
}

} // namespace biphoton
