#include "mazer/selection.hpp"

#include <algorithm>
#include <cmath>

#include "mazer/scattering.hpp"
#include "mazer/ultracold.hpp"

namespace mazer {

namespace {

SystemParams with_photons(SystemParams p, int n) {
  p.photon_number = n;
  return p;
}

void add_refinement(std::vector<double>& pts, const std::vector<ResonancePeak>& peaks,
                    double shift, int per_width, double lo, double hi) {
  for (const auto& p : peaks) {
    if (!std::isfinite(p.width) || !(p.width > 0.0)) continue;
    const double step = p.width / per_width;
    for (int j = -2 * per_width; j <= 2 * per_width; ++j) {
      const double kp = p.position + j * step;
      if (!(kp > 0.0)) continue;
      // Resonances of the |b> term live at k' and show up at k = sqrt(k'^2 - delta).
      const double k2 = kp * kp - shift;
      if (!(k2 > 0.0)) continue;
      const double k = shift == 0.0 ? kp : std::sqrt(k2);
      if (k >= lo && k <= hi) pts.push_back(k);
    }
  }
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) throw DomainError("uniform grid needs count >= 2 and hi > lo");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  g.back() = hi;
  return g;
}

VelocityDistribution maxwell_boltzmann_initial(double k0, std::vector<double> grid) {
  if (!(k0 > 0.0) || !std::isfinite(k0)) throw DomainError("k0 must be finite and > 0");
  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i] / k0;
    density[i] = x * x * std::exp(-x * x);
  }
  VelocityDistribution raw(grid, density);
  const double norm = raw.integral();
  if (!(norm > 0.0)) throw DomainError("Maxwell-Boltzmann density vanishes on the grid");
  for (double& d : density) d /= norm;
  return VelocityDistribution(std::move(grid), std::move(density));
}

BeamTransmission beam_transmissions(const PhotonDistribution& dist, double k,
                                    const SystemParams& params_base) {
  BeamTransmission t;
  for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
    const double w = dist.probabilities[n];
    if (w == 0.0) continue;
    const auto r = scatter(k, with_photons(params_base, static_cast<int>(n)));
    t.T_a += w * r.T_a;
    t.T_b += w * r.T_b;
  }
  return t;
}

double final_density(double k, const VelocityDistribution& initial,
                     const PhotonDistribution& dist, const SystemParams& params_base,
                     bool jacobian) {
  if (!(k > 0.0)) return 0.0;
  const double delta = params_base.detuning_ratio;
  double value = 0.0;
  const double p_k = initial(k);
  if (delta == 0.0) {
    if (p_k > 0.0) {
      const auto t = beam_transmissions(dist, k, params_base);
      value = p_k * (t.T_a + t.T_b);
    }
    return value;
  }
  if (p_k > 0.0) value += p_k * beam_transmissions(dist, k, params_base).T_a;
  if (k * k > -delta) {
    const double k_prime = std::sqrt(k * k + delta);
    const double p_prime = initial(k_prime);
    if (p_prime > 0.0) {
      const double weight = jacobian ? k / k_prime : 1.0;
      value += weight * p_prime * beam_transmissions(dist, k_prime, params_base).T_b;
    }
  }
  return value;
}

std::vector<double> selection_grid(const VelocityDistribution& initial,
                                   const PhotonDistribution& dist,
                                   const SystemParams& params_base,
                                   const SelectionOptions& options) {
  if (options.points_per_width < 1) throw DomainError("points per width must be >= 1");
  const double delta = params_base.detuning_ratio;
  std::vector<double> pts = initial.grid();
  const double lo = pts.front();
  double hi = pts.back();
  if (delta < 0.0) {
    // Accelerated |b> atoms land above the initial support.
    const double top = std::sqrt(hi * hi - delta);
    const double step = pts[pts.size() - 1] - pts[pts.size() - 2];
    for (double k = hi + step; k < top; k += step) pts.push_back(k);
    pts.push_back(top);
    hi = top;
  }
  for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
    if (dist.probabilities[n] < options.populated_threshold) continue;
    const auto params = with_photons(params_base, static_cast<int>(n));
    const auto range = resonance_indices(params, initial.grid().front(), initial.grid().back());
    const auto peaks = resonance_positions(params, range);
    add_refinement(pts, peaks, 0.0, options.points_per_width, lo, hi);
    if (delta != 0.0) add_refinement(pts, peaks, delta, options.points_per_width, lo, hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

VelocityDistribution final_distribution(const VelocityDistribution& initial,
                                        const PhotonDistribution& dist,
                                        const SystemParams& params_base,
                                        const SelectionOptions& options) {
  params_base.validate();
  auto grid = selection_grid(initial, dist, params_base, options);
  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    density[i] = final_density(grid[i], initial, dist, params_base, options.jacobian);
  }
  return VelocityDistribution(std::move(grid), std::move(density));
}

PeakSummary dominant_peak(const VelocityDistribution& dist) {
  const auto& x = dist.grid();
  const auto& y = dist.density();
  const auto top = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  PeakSummary s;
  s.position = x[top];
  s.height = y[top];
  const double half = 0.5 * s.height;

  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double t = (y[inside] - half) / (y[inside] - y[outside]);
    return x[inside] + t * (x[outside] - x[inside]);
  };
  std::size_t l = top;
  while (l > 0 && y[l] > half) --l;
  std::size_t r = top;
  while (r + 1 < y.size() && y[r] > half) ++r;
  const double left = y[l] <= half && l != top ? crossing(l + 1, l) : x[l];
  const double right = y[r] <= half && r != top ? crossing(r - 1, r) : x[r];
  s.width = right - left;

  // The main peak extends down to the valleys on either side.
  std::size_t vl = top;
  while (vl > 0 && y[vl - 1] <= y[vl]) --vl;
  std::size_t vr = top;
  while (vr + 1 < y.size() && y[vr + 1] <= y[vr]) ++vr;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (i >= vl && i <= vr) continue;
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) s.runner_up = std::max(s.runner_up, y[i]);
  }
  return s;
}

PipelineResult run_velocity_selection(const PipelineConfig& config) {
  config.params_base.validate();
  PipelineResult out;
  out.initial = maxwell_boltzmann_initial(config.k0, config.grid);
  out.photons = stationary_distribution(config.pump, [&](int n) {
    const double v = mean_p_em(n, out.initial, config.params_base, config.quadrature);
    if (out.mean_emission.size() <= static_cast<std::size_t>(n)) {
      out.mean_emission.resize(static_cast<std::size_t>(n) + 1, 0.0);
    }
    out.mean_emission[n] = v;
    return v;
  });
  out.final = final_distribution(out.initial, out.photons, config.params_base, config.selection);
  return out;
}

}  // namespace mazer
