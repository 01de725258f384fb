#include "biphoton/engine.hpp"

#include "biphoton/amplitudes.hpp"
#include "biphoton/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace biphoton {

namespace {

constexpr double kConvergenceTol = 1e-6;

struct Grid1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre_reference(int n, std::vector<double> &x, std::vector<double> &w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15)
        break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

// Composite panels over the given segments; each segment is subdivided so no
// panel exceeds max_width, with at least min_panels across the total length.
Grid1D composite_grid(const std::vector<std::pair<double, double>> &segments, int min_panels,
                      double max_width, int nodes) {
  std::vector<double> xr, wr;
  gauss_legendre_reference(nodes, xr, wr);

  double total = 0.0;
  for (const auto &[a, b] : segments)
    total += b - a;

  const double width_cap = std::min(max_width, total / min_panels);
  Grid1D g;
  for (const auto &[a, b] : segments) {
    const double len = b - a;
    if (len <= 0.0)
      continue;
    const int sub = std::max(1, static_cast<int>(std::ceil(len / width_cap)));
    for (int k = 0; k < sub; ++k) {
      const double p0 = a + len * k / sub;
      const double p1 = a + len * (k + 1) / sub;
      const double half = 0.5 * (p1 - p0);
      const double mid = 0.5 * (p0 + p1);
      for (int j = 0; j < nodes; ++j) {
        g.nodes.push_back(mid + half * xr[j]);
        g.weights.push_back(half * wr[j]);
      }
    }
  }
  return g;
}

struct Interval {
  double lo, hi;
};

// Integrand components at one (t, s) point, t' = t + s. Channel projection
// weights are constants, so they are applied after integration.
struct Components {
  double p_hv = 0.0;    // |A_HV(t,t')|^2
  double p_vh = 0.0;    // |A_VH(t,t')|^2
  double p_bunch = 0.0; // |A_33(t,t')|^2 = |A_44(t,t')|^2
  double cross = 0.0;   // Re[A_HV conj(A_VH)], analyzer channel mixing
  double bg_hv = 0.0;   // (1/4)(|g1|^2 + |g2|^2), interference dropped
  double bg_vh = 0.0;   // (1/4)(|g1s|^2 + |g2s|^2)

  Components &operator+=(const Components &o) {
    p_hv += o.p_hv;
    p_vh += o.p_vh;
    p_bunch += o.p_bunch;
    cross += o.cross;
    bg_hv += o.bg_hv;
    bg_vh += o.bg_vh;
    return *this;
  }
  Components scaled(double f) const {
    return Components{p_hv * f, p_vh * f, p_bunch * f, cross * f, bg_hv * f, bg_vh * f};
  }
};

Components evaluate_point(double t, double s, const SourceParams &p, const DelayConfig &d) {
  const double tp = t + s;
  const ComplexAmp g1 = amplitude_hv(t, tp, p, d);
  const ComplexAmp g2 = amplitude_vh(t, tp, p, d);
  const ComplexAmp g1s = amplitude_hv(tp, t, p, d);
  const ComplexAmp g2s = amplitude_vh(tp, t, p, d);
  const ComplexAmp phase{std::cos(p.pump_phase_rad), std::sin(p.pump_phase_rad)};

  const ComplexAmp a_hv = 0.5 * (-g1 + phase * g2);
  const ComplexAmp a_vh = 0.5 * (g1s - phase * g2s);
  const ComplexAmp a_bunch = ComplexAmp{0.0, 0.5} * (g1 + phase * g2);

  Components c;
  c.p_hv = std::norm(a_hv);
  c.p_vh = std::norm(a_vh);
  c.p_bunch = std::norm(a_bunch);
  c.cross = (a_hv * std::conj(a_vh)).real();
  c.bg_hv = 0.25 * (std::norm(g1) + std::norm(g2));
  c.bg_vh = 0.25 * (std::norm(g1s) + std::norm(g2s));
  return c;
}

// One full 2-D pass at a given refinement level.
Components integrate_level(const SourceParams &p, const DelayConfig &d, const QuadratureSpec &q,
                           int level) {
  const SupportBreakpoints bp = support_breakpoints(p, d);
  const std::array<Interval, 4> supports{{
      {bp.hv_lo, bp.hv_hi},   // g1 as a function of s = t' - t
      {bp.vh_lo, bp.vh_hi},   // g2
      {-bp.hv_hi, -bp.hv_lo}, // g1s (swapped arguments)
      {-bp.vh_hi, -bp.vh_lo}, // g2s
  }};

  // Split the s axis at every support edge and drop segments where every
  // amplitude vanishes.
  std::vector<double> edges;
  for (const auto &iv : supports) {
    edges.push_back(iv.lo);
    edges.push_back(iv.hi);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<std::pair<double, double>> s_segments;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    const bool live = std::any_of(supports.begin(), supports.end(),
                                  [mid](const Interval &iv) { return mid > iv.lo && mid < iv.hi; });
    if (live)
      s_segments.emplace_back(edges[i], edges[i + 1]);
  }
  if (s_segments.empty())
    return {};

  // The t box must cover the pump-envelope ridge of every live amplitude.
  // Each ridge centre is affine in s; evaluate it at the ends of the piece's
  // own support and take the hull, padded by box_padding/sigma.
  const double A = p.envelope_slope_o();
  const double B = p.envelope_slope_e();
  const std::array<std::pair<double, double>, 4> centres{{
      {B, -B * (d.tau2_fs + d.tau_fs)},                    // g1: B (s - tau2 - tau)
      {B, A * d.tau_fs - B * d.tau1_fs},                   // g2: A tau + B (s - tau1)
      {-A, -B * (d.tau2_fs + d.tau_fs)},                   // g1s: -A s - B (tau2 + tau)
      {-A, A * d.tau_fs - B * d.tau1_fs},                  // g2s: -A (s - tau) - B tau1
  }};
  double t_lo = 0.0, t_hi = 0.0;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    for (const double sv : {supports[i].lo, supports[i].hi}) {
      const double c = centres[i].first * sv + centres[i].second;
      t_lo = first ? c : std::min(t_lo, c);
      t_hi = first ? c : std::max(t_hi, c);
      first = false;
    }
  }
  const double pad = q.box_padding / p.pump_bandwidth_rad_per_fs;
  t_lo -= pad;
  t_hi += pad;

  const int min_panels = q.panels_per_axis * level;
  const double max_width = 4.0 / p.pump_bandwidth_rad_per_fs / level;
  const Grid1D sg = composite_grid(s_segments, min_panels, max_width, q.nodes_per_panel);
  const Grid1D tg = composite_grid({{t_lo, t_hi}}, min_panels, max_width, q.nodes_per_panel);

  Components total;
  for (std::size_t i = 0; i < sg.nodes.size(); ++i) {
    Components row;
    for (std::size_t j = 0; j < tg.nodes.size(); ++j)
      row += evaluate_point(tg.nodes[j], sg.nodes[i], p, d).scaled(tg.weights[j]);
    total += row.scaled(sg.weights[i]);
  }
  return total;
}

struct ProjectionWeights {
  double w_hv, w_vh;   // coincidence-channel amplitude weights
  double cross_weight; // channel mixing; nonzero only behind analyzers
};

// Without analyzers the two coincidence channels are orthogonal outcomes and
// add incoherently; an analyzer erases the polarization record, so the
// projected click amplitudes of the two channels superpose.
ProjectionWeights projection(const AnalyzerConfig &a) {
  const double w_hv = a.h_amp_at_d3() * a.v_amp_at_d4();
  const double w_vh = a.v_amp_at_d3() * a.h_amp_at_d4();
  return {w_hv, w_vh, a.present() ? 2.0 * w_hv * w_vh : 0.0};
}

double coincidence_value(const Components &c, const ProjectionWeights &w) {
  const double raw =
      w.w_hv * w.w_hv * c.p_hv + w.w_vh * w.w_vh * c.p_vh + w.cross_weight * c.cross;
  const double background_none = c.bg_hv + c.bg_vh;
  return raw / background_none;
}

} // namespace

void QuadratureSpec::validate() const {
  if (panels_per_axis < 4)
    throw ConfigError("QuadratureSpec: panels_per_axis must be >= 4");
  if (nodes_per_panel < 2)
    throw ConfigError("QuadratureSpec: nodes_per_panel must be >= 2");
  if (!(box_padding >= 4.0))
    throw ConfigError("QuadratureSpec: box_padding must be >= 4");
}

RateResult coincidence_rate_analytic(const SourceParams &p, const DelayConfig &d) {
  d.validate();
  const double T = p.dgd_fs();
  const double delta = 2.0 * d.tau_fs + d.tau2_fs - d.tau1_fs;
  const double d21 = d.tau2_fs - d.tau1_fs;
  const bool inside = rect(delta, -T, T) > 0.0;

  double interference = 0.0;
  if (inside) {
    const double triangle = 1.0 - std::abs(delta) / T;
    const double slope_sum = p.envelope_slope_o() + p.envelope_slope_e();
    const double arg = slope_sum * d.tau_fs + p.envelope_slope_e() * d21;
    const double s = p.pump_bandwidth_rad_per_fs;
    const double gauss = std::exp(-s * s * arg * arg / 8.0);
    interference = std::cos(p.pump_phase_rad - p.mean_frequency_rad_per_fs * d21) * triangle * gauss;
  }
  return RateResult{1.0 - interference, interference, std::abs(delta) < T};
}

RateResult coincidence_rate_numeric(const SourceParams &p, const DelayConfig &d,
                                    const AnalyzerConfig &a, const QuadratureSpec &q) {
  d.validate();
  q.validate();
  const ProjectionWeights w = projection(a);

  const Components c1 = integrate_level(p, d, q, 1);
  const Components c2 = integrate_level(p, d, q, 2);
  const double v1 = coincidence_value(c1, w);
  const double v2 = coincidence_value(c2, w);
  if (std::abs(v2 - v1) > kConvergenceTol) {
    throw QuadratureError("coincidence_rate_numeric: refinement levels disagree", v2,
                          std::abs(v2 - v1));
  }

  const double background = w.w_hv * w.w_hv * c2.bg_hv + w.w_vh * w.w_vh * c2.bg_vh;
  const double raw = v2 * (c2.bg_hv + c2.bg_vh);
  const double interference = background > 0.0 ? 1.0 - raw / background : 0.0;
  const double delta = 2.0 * d.tau_fs + d.tau2_fs - d.tau1_fs;
  return RateResult{v2, interference, std::abs(delta) < p.dgd_fs()};
}

double coincidence_rate_simplified(const SourceParams &p, const DelayConfig &d) {
  d.validate();
  const double d21 = d.tau2_fs - d.tau1_fs;
  return 1.0 - std::cos(p.pump_phase_rad - p.mean_frequency_rad_per_fs * d21);
}

double singles_rate_numeric(Detector det, const SourceParams &p, const DelayConfig &d,
                            const AnalyzerConfig &a, const QuadratureSpec &q) {
  d.validate();
  q.validate();

  auto value = [&](const Components &c) {
    // Mean photon number per pair at the detector: each channel integral is
    // twice the per-pulse probability, and the bunched channel delivers one
    // photon of each polarization.
    const double h_flux =
        det == Detector::D3 ? 0.5 * (c.p_hv + c.p_bunch) : 0.5 * (c.p_vh + c.p_bunch);
    const double v_flux =
        det == Detector::D3 ? 0.5 * (c.p_vh + c.p_bunch) : 0.5 * (c.p_hv + c.p_bunch);
    const double h_amp = det == Detector::D3 ? a.h_amp_at_d3() : a.h_amp_at_d4();
    const double v_amp = det == Detector::D3 ? a.v_amp_at_d3() : a.v_amp_at_d4();
    const double norm = c.bg_hv + c.bg_vh; // exact background, cancels grid error
    return (h_amp * h_amp * h_flux + v_amp * v_amp * v_flux) / norm;
  };

  const double v1 = value(integrate_level(p, d, q, 1));
  const double v2 = value(integrate_level(p, d, q, 2));
  if (std::abs(v2 - v1) > kConvergenceTol)
    throw QuadratureError("singles_rate_numeric: refinement levels disagree", v2,
                          std::abs(v2 - v1));
  return v2;
}

PathwaySet pathway_decomposition(double t, double t_prime, const SourceParams &p,
                                 const DelayConfig &d) {
  const ComplexAmp phase{std::cos(p.pump_phase_rad), std::sin(p.pump_phase_rad)};
  const ComplexAmp g_hv = amplitude_hv(t, t_prime, p, d);
  const ComplexAmp g_vh = amplitude_vh(t, t_prime, p, d);
  const ComplexAmp g_hv_sw = amplitude_hv(t_prime, t, p, d);
  const ComplexAmp g_vh_sw = amplitude_vh(t_prime, t, p, d);

  // Per-photon beamsplitter factors: i/sqrt(2) per reflection, 1/sqrt(2) per
  // transmission; the VH emission term carries exp(i phi).
  const ComplexAmp rr{-0.5, 0.0}; // (i/sqrt(2))^2
  const ComplexAmp tt{0.5, 0.0};  // (1/sqrt(2))^2

  using E = Pathway::Emission;
  using O = Pathway::Outcome;
  PathwaySet set;
  set.paths[0] = {"Psi1", E::HV, O::ReflectReflect, DetectionChannel::HAtD3VAtD4, rr * g_hv};
  set.paths[1] = {"Psi2", E::HV, O::TransmitTransmit, DetectionChannel::VAtD3HAtD4, tt * g_hv_sw};
  set.paths[2] = {"Psi3", E::VH, O::ReflectReflect, DetectionChannel::VAtD3HAtD4,
                  rr * phase * g_vh_sw};
  set.paths[3] = {"Psi4", E::VH, O::TransmitTransmit, DetectionChannel::HAtD3VAtD4,
                  tt * phase * g_vh};
  return set;
}

} // namespace biphoton
