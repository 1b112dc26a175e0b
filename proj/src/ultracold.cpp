#include "mazer/ultracold.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mazer/scattering.hpp"
#include "numerics.hpp"

namespace mazer {

namespace {

void require_positive(double k, const char* what) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

double lower_shift(const SystemParams& p) {
  return lower_dressed_shift(p.detuning_ratio, p.photon_number);
}

// Half-maximum crossing on one side of a peak, searching outward from `pos`
// over successively doubled distances.
double half_max_crossing(const SystemParams& params, double pos, double half, double step,
                         int direction) {
  auto excess = [&](double k) { return transmission_ultracold(k, params).value - half; };
  double inner = pos;
  for (int attempt = 0; attempt < 6; ++attempt) {
    double outer = pos + direction * step;
    if (outer <= 0.0) outer = 0.5 * inner;
    if (excess(outer) < 0.0) {
      if (auto root = detail::bracketed_root(excess, std::min(inner, outer), std::max(inner, outer))) {
        return *root;
      }
    }
    inner = outer;
    step *= 2.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double tau_minus_sq(double k, const SystemParams& params) {
  require_positive(k, "wavenumber");
  params.validate();
  const double shift = lower_shift(params);
  const double km2 = k * k + shift;
  const double s = std::sin(std::sqrt(km2) * params.coupling_length);
  // Sigma^2 - 1 = (k_-^2 - k^2)^2 / (4 k^2 k_-^2)
  return 1.0 / (1.0 + shift * shift / (4.0 * k * k * km2) * s * s);
}

double tau_minus_sq_small_k(double k, const SystemParams& params) {
  require_positive(k, "wavenumber");
  params.validate();
  const double shift = lower_shift(params);
  const double s = std::sin(std::sqrt(k * k + shift) * params.coupling_length);
  return 1.0 / (1.0 + shift / (4.0 * k * k) * s * s);
}

double mixing_factor(double k, const SystemParams& params) {
  require_positive(k, "wavenumber");
  const auto mix = params.mixing();
  const double kb2 = k * k - params.detuning_ratio;
  if (kb2 > 0.0) {
    return mix.sin_sq * (mix.sin_sq + std::sqrt(kb2) / k * mix.cos_sq);
  }
  return mix.sin_sq * mix.sin_sq;
}

bool ultracold_regime(double k, const SystemParams& params) {
  const double kappa_n = params.kappa_n();
  return k < 0.1 * kappa_n * std::sqrt(params.tan_theta()) &&
         kappa_n * params.coupling_length > 20.0;
}

UltracoldTransmission transmission_ultracold(double k, const SystemParams& params) {
  require_positive(k, "wavenumber");
  params.validate();
  UltracoldTransmission t;
  t.value = mixing_factor(k, params) * interference_factor(k, params) * tau_minus_sq(k, params);
  t.valid = ultracold_regime(k, params);
  return t;
}

double resonant_transmission(double k, double coupling_length, int photon_number) {
  return 0.5 * tau_minus_sq(k, SystemParams{0.0, coupling_length, photon_number});
}

double de_broglie_wavelength(double k, const SystemParams& params) {
  require_positive(k, "wavenumber");
  params.validate();
  return 2.0 * std::numbers::pi / std::sqrt(k * k + lower_shift(params));
}

double resonance_seed(const SystemParams& params, int m) {
  params.validate();
  const double phase = m * std::numbers::pi / params.coupling_length;
  const double radicand = phase * phase - lower_shift(params);
  return radicand > 0.0 ? std::sqrt(radicand) : -1.0;
}

IndexRange resonance_indices(const SystemParams& params, double k_min, double k_max) {
  params.validate();
  const double shift = lower_shift(params);
  const double scale = params.coupling_length / std::numbers::pi;
  IndexRange r;
  if (!(k_max > 0.0) || k_max < k_min) {
    r.last = r.first - 1;
    return r;
  }
  const double k_lo = std::max(k_min, 0.0);
  r.first = std::max(1, static_cast<int>(std::floor(scale * std::sqrt(k_lo * k_lo + shift))));
  r.last = static_cast<int>(std::ceil(scale * std::sqrt(k_max * k_max + shift)));
  // Trim the rounded ends against the positions themselves.
  auto inside = [&](int m) {
    const double k = resonance_seed(params, m);
    return k > 0.0 && k >= k_min && k <= k_max;
  };
  while (r.first <= r.last && !inside(r.first)) ++r.first;
  while (r.last >= r.first && !inside(r.last)) --r.last;
  return r;
}

std::vector<ResonancePeak> resonance_positions(const SystemParams& params, IndexRange range) {
  params.validate();
  if (range.first < 1) throw DomainError("resonance indices start at m = 1");
  std::vector<ResonancePeak> peaks;
  const double detuning = params.detuning_ratio;
  for (int m = range.first; m <= range.last; ++m) {
    const double seed = resonance_seed(params, m);
    if (seed <= 0.0) continue;
    const double next = resonance_seed(params, m + 1);
    const double prev = resonance_seed(params, m - 1);
    const double spacing = prev > 0.0 ? 0.5 * (next - prev) : next - seed;
    const double half_spacing = 0.5 * spacing;

    ResonancePeak peak;
    peak.index = m;
    double peak_value = 0.0;
    if (seed * seed > detuning) {
      peak.position = seed;
      peak.amplitude = resonance_amplitude(seed, params);
      peak_value = peak.amplitude;
    } else {
      const double lo = std::max(seed - half_spacing, 0.5 * seed);
      const double hi = seed + half_spacing;
      const auto best = detail::golden_maximize(
          [&](double k) { return transmission_ultracold(k, params).value; }, lo, hi);
      peak.position = best.x;
      peak.refined = true;
      peak.amplitude = resonance_amplitude(best.x, params);
      peak_value = best.value;
    }

    const double half = 0.5 * peak_value;
    const double step = 0.25 * half_spacing;
    const double left = half_max_crossing(params, peak.position, half, step, -1);
    const double right = half_max_crossing(params, peak.position, half, step, +1);
    peak.width = std::isnan(left) || std::isnan(right)
                     ? std::numeric_limits<double>::infinity()
                     : right - left;
    peaks.push_back(peak);
  }
  return peaks;
}

double resonance_amplitude(double peak_position, const SystemParams& params) {
  require_positive(peak_position, "peak position");
  params.validate();
  if (peak_position * peak_position <= params.detuning_ratio) return 1.0;
  return mixing_factor(peak_position, params) * interference_factor(peak_position, params);
}

double resonance_amplitude_estimate(double peak_position, const SystemParams& params) {
  require_positive(peak_position, "peak position");
  params.validate();
  if (peak_position * peak_position <= params.detuning_ratio) return 1.0;
  const double ratio =
      std::sqrt(peak_position * peak_position - params.detuning_ratio) / peak_position;
  return 4.0 * mixing_factor(peak_position, params) / ((1.0 + ratio) * (1.0 + ratio));
}

double hot_cold_boundary(double k, int photon_number) {
  require_positive(k, "wavenumber");
  if (photon_number < 0) throw DomainError("photon number must be >= 0");
  return -(static_cast<double>(photon_number) + 1.0) / (k * k);
}

}  // namespace mazer
