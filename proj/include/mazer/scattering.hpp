#pragma once

#include "mazer/core.hpp"

namespace mazer {

enum class DressedBranch { Upper, Lower };  // the "+" and "-" dressed channels

/// Transmission amplitudes and probabilities of an excited atom through a
/// mesa cavity holding n photons.
struct ScatteringResult {
  cplx tau_a;   // stays in |a, n>
  cplx tau_b;   // leaves in |b, n + 1>
  double T_a = 0.0;
  double T_b = 0.0;
  double T_total = 0.0;
  bool at_threshold = false;   // (k/kappa)^2 == delta/g exactly, T_b = 0
  bool used_fallback = false;  // boundary-matching solve replaced the closed form
};

/// Amplitude of a single square step of length kappa*L with outside
/// wavenumber q and inside wavenumber k_inside:
/// [cos(k_inside L) - i Sigma sin(k_inside L)]^-1, Sigma = (k_in/q + q/k_in)/2.
/// Returns exactly 0 once Im(k_inside) L exceeds the evanescent cutoff.
cplx step_amplitude(cplx q, cplx k_inside, double coupling_length);

/// tau_n^(+/-) at k_eval, with the dressed wavenumber taken from
/// k_eval^2 -/+ the dressed shift.
cplx tau_pm(DressedBranch branch, cplx k_eval, const SystemParams& params);

/// The characteristic scales k^c_n and k^t_n of the shared resonance
/// denominator. Either may be infinite (returned as a complex infinity) when
/// its cleared numerator vanishes.
struct ResonanceScales {
  cplx k_c;
  cplx k_t;
};
ResonanceScales resonance_denominator_scales(double k, const SystemParams& params);

/// 1 / |(cos^2 theta (k - k_b)/k^c - 1)(cos^2 theta (k - k_b)/k^t - 1)|^2,
/// the interference factor of the ultracold transmission.
double interference_factor(double k, const SystemParams& params);

/// Exact transmission through the mesa cavity. Falls back to a direct
/// boundary-matching solve when the closed form is degenerate.
ScatteringResult scatter(double k, const SystemParams& params);

/// The boundary-matching solve on its own (8 unknowns: two reflected, four
/// inside, two transmitted amplitudes). Phases match scatter().
ScatteringResult scatter_boundary_matching(double k, const SystemParams& params);

/// Im(k) * L above which evanescent amplitudes are treated as exactly 0.
inline constexpr double kEvanescentCutoff = 700.0;

}  // namespace mazer
