#pragma once

#include "biphoton/params.hpp"

#include <array>
#include <string>

namespace biphoton {

/// Controls the breakpoint-aligned composite Gauss-Legendre quadrature used
/// for the brute-force rates. panels_per_axis is a lower bound; panels are
/// additionally kept no wider than a few pump coherence times so wide delay
/// configurations stay resolved. The integration box along the smooth axis
/// extends box_padding/sigma beyond the outermost envelope ridge.
struct QuadratureSpec {
  int panels_per_axis = 6;
  int nodes_per_panel = 20;
  double box_padding = 8.0;

  void validate() const;
};

/// Normalized coincidence rate. rate_norm is R/R0 with R0 the no-analyzer,
/// no-interference background; interference_term is the signed modulation
/// relative to this configuration's own background, so that
/// rate_norm = (background/R0) * (1 - interference_term).
struct RateResult {
  double rate_norm;
  double interference_term;
  bool in_triangle;
};

/// Closed-form rate for the analyzer-free interferometer:
/// R/R0 = 1 - cos[phi - w (tau2-tau1)] * (1 - |2 tau + tau2 - tau1|/T)
///        * exp[-(sigma^2/8) (((2k'p-k'o-k'e)/(k'o-k'e)) tau
///                            + ((k'p-k'o)/(k'o-k'e)) (tau2-tau1))^2]
///        * rect(2 tau + tau2 - tau1; -T, T),  T = L (k'o - k'e).
RateResult coincidence_rate_analytic(const SourceParams &p, const DelayConfig &d);

/// Brute-force rate: 2-D quadrature of the two-time detection probabilities,
/// with analyzer projection (including the channel cross term) when
/// analyzers are present. Runs two refinement levels (panels doubled) and
/// throws QuadratureError when they disagree by more than 1e-6.
RateResult coincidence_rate_numeric(const SourceParams &p, const DelayConfig &d,
                                    const AnalyzerConfig &a, const QuadratureSpec &q);

/// Small-offset limit 1 - cos[phi - w (tau2 - tau1)]; valid for tau = 0 and
/// nearly equal birefringent delays. The caller owns regime validity.
double coincidence_rate_simplified(const SourceParams &p, const DelayConfig &d);

/// Marginal detection rate at one detector: the mean number of photons
/// reaching it per emitted pair, thinned by an analyzer when present.
/// 1.0 for either detector with no analyzers, independent of delay.
double singles_rate_numeric(Detector det, const SourceParams &p, const DelayConfig &d,
                            const AnalyzerConfig &a, const QuadratureSpec &q);

/// One of the four two-photon detection alternatives at a time pair.
struct Pathway {
  enum class Emission { HV, VH };
  enum class Outcome { ReflectReflect, TransmitTransmit };

  std::string label; ///< "Psi1".."Psi4"
  Emission emission;
  Outcome outcome;
  DetectionChannel channel;
  ComplexAmp amplitude;
};

/// The four alternatives at (t, t'): emission HV or VH crossed with both
/// photons reflected or both transmitted. Psi1/Psi4 feed the H@D3/V@D4
/// channel, Psi2/Psi3 the V@D3/H@D4 channel; |Psi1+Psi4|^2 + |Psi2+Psi3|^2
/// reproduces the coincidence integrand.
struct PathwaySet {
  std::array<Pathway, 4> paths;

  ComplexAmp sum_hv_channel() const { return paths[0].amplitude + paths[3].amplitude; }
  ComplexAmp sum_vh_channel() const { return paths[1].amplitude + paths[2].amplitude; }
};

PathwaySet pathway_decomposition(double t, double t_prime, const SourceParams &p,
                                 const DelayConfig &d);

} // namespace biphoton
