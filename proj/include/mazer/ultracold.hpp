#pragma once

#include <vector>

#include "mazer/core.hpp"

namespace mazer {

/// Ultracold-regime transmission together with the regime indicator.
struct UltracoldTransmission {
  double value = 0.0;
  /// k < 0.1 kappa_n sqrt(tan theta_n) and kappa_n L > 20. Informational only.
  bool valid = false;
};

/// |tau^-_n(k)|^2 from the full step amplitude.
double tau_minus_sq(double k, const SystemParams& params);
/// The small-k form 1 / (1 + (kappa_n / 2k)^2 cot(theta_n) sin^2(k^-_n L)).
double tau_minus_sq_small_k(double k, const SystemParams& params);

/// sin^2 theta (sin^2 theta + k_b/k cos^2 theta) for an open |b> channel,
/// sin^4 theta otherwise.
double mixing_factor(double k, const SystemParams& params);

bool ultracold_regime(double k, const SystemParams& params);

UltracoldTransmission transmission_ultracold(double k, const SystemParams& params);

/// Resonant (delta = 0) transmission 1/2 |tau^-_n(k)|^2.
double resonant_transmission(double k, double coupling_length, int photon_number);

/// 2 pi / k^-_n, the de Broglie wavelength inside the cavity (units of 1/kappa).
double de_broglie_wavelength(double k, const SystemParams& params);

struct ResonancePeak {
  int index = 0;          // m
  double position = 0.0;  // k/kappa
  double amplitude = 0.0;
  double width = 0.0;     // FWHM in k/kappa; +inf when no half-maximum crossing is found
  bool refined = false;   // position found by maximization rather than k^-_n L = m pi
};

struct IndexRange {
  int first = 1;
  int last = 0;  // inclusive; empty when last < first
};

/// Indices m whose resonance (k^-_n L = m pi) lies in [k_min, k_max].
IndexRange resonance_indices(const SystemParams& params, double k_min, double k_max);

/// Position of resonance m from k^-_n L = m pi, or a negative value when the
/// radicand is not positive.
double resonance_seed(const SystemParams& params, int m);

std::vector<ResonancePeak> resonance_positions(const SystemParams& params, IndexRange range);

/// Peak height f(theta) I(m lambda_dB / 2); 1 for a closed |b> channel.
double resonance_amplitude(double peak_position, const SystemParams& params);
/// The closed-form estimate 4 f(theta) / (1 + k_b/k)^2 (1 for a closed channel).
double resonance_amplitude_estimate(double peak_position, const SystemParams& params);

/// Detuning -(n + 1)(kappa/k)^2 below which the atom stops being "cold".
double hot_cold_boundary(double k, int photon_number);

}  // namespace mazer
