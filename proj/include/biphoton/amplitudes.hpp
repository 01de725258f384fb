#pragma once

#include "biphoton/params.hpp"

namespace biphoton {

/// Rectangle window: 1 for t1 <= t < t2, else 0 (half-open so that panel
/// edges and unit tests are deterministic; the boundary carries no measure).
/// Throws ConfigError for t1 > t2.
double rect(double t, double t1, double t2);

/// Pump-envelope factor exp{-(sigma^2/4) [A t_o - B t_e]^2} with
/// A = (k'_p - k'_e)/(k'_o - k'_e) and B = (k'_p - k'_o)/(k'_o - k'_e).
/// Always in (0, 1].
double pump_envelope(double t_o, double t_e, const SourceParams &p);

/// Two-photon amplitude of the crystal as seen at the beamsplitter for the
/// H-in-path-1 / V-in-path-2 emission: G(t_o, t_e - tau2 - tau), where
/// G(t_o,t_e) = N exp[-i w (t_o+t_e)] xi(t_o,t_e) rect(t_e-t_o; 0, dgd).
/// Unit L2 norm for any delays.
ComplexAmp amplitude_hv(double t_o, double t_e, const SourceParams &p, const DelayConfig &d);

/// Same for the V-in-path-1 / H-in-path-2 emission: G(t_o - tau, t_e - tau1).
ComplexAmp amplitude_vh(double t_o, double t_e, const SourceParams &p, const DelayConfig &d);

/// Detection amplitudes per channel, derived from the 50/50 beamsplitter
/// relations a_i3 = (a_i2 + i a_i1)/sqrt(2), a_i4 = (a_i1 + i a_i2)/sqrt(2)
/// applied to the superposition emission state. Scaled so that the
/// no-interference coincidence background integrates to exactly 1:
///
///   coincidence H@D3(t), V@D4(t'):  (1/2) [ -G_HV(t,t') + e^{i phi} G_VH(t,t') ]
///   coincidence V@D3(t), H@D4(t'):  (1/2) [  G_HV(t',t) - e^{i phi} G_VH(t',t) ]
///   both at D3, H(t) V(t'):        (i/2) [  G_HV(t,t') + e^{i phi} G_VH(t,t') ]
///   both at D4, H(t) V(t'):        (i/2) [  G_HV(t,t') + e^{i phi} G_VH(t,t') ]
///
/// Probabilities sum to 2 over the four channels; physical per-pulse
/// outcome probabilities are these integrals divided by 2.
ComplexAmp channel_amplitude(double t, double t_prime, DetectionChannel ch, const SourceParams &p,
                             const DelayConfig &d);

/// Squared channel amplitude with optional analyzer projection applied to
/// each photon (a_theta = cos(theta) a_V + sin(theta) a_H at its detector).
/// For coincidence channels this is the per-channel term of the projected
/// integrand; the full analyzer integrand adds a cross term between the two
/// coincidence channels (see coincidence-engine).
double two_time_probability(double t, double t_prime, DetectionChannel ch, const SourceParams &p,
                            const DelayConfig &d, const AnalyzerConfig &a);

/// Time difference intervals (in t' - t) on which each emission amplitude is
/// nonzero, used by the quadrature to align panels with the rect edges.
struct SupportBreakpoints {
  // HV and VH emission supports for the forward channels (t' - t), and the
  // mirrored supports entering the swapped-argument channel (t - t').
  double hv_lo, hv_hi;
  double vh_lo, vh_hi;
};

SupportBreakpoints support_breakpoints(const SourceParams &p, const DelayConfig &d);

} // namespace biphoton
