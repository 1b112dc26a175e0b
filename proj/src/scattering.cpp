#include "mazer/scattering.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "trig.hpp"

namespace mazer {

namespace {

constexpr cplx I{0.0, 1.0};

// q / tau(q) for a step with inside wavenumber k_in, up to the common factor
// carried by `t`.
cplx scaled_inverse_step(cplx q, cplx k_in, const detail::ScaledTrig& t) {
  return q * t.cos - 0.5 * I * (k_in + q * q / k_in) * t.sin;
}

// (k + k_b) / tau~(k, k_b), up to the common factor carried by `t`.
cplx scaled_inverse_mixed_step(double k, cplx k_b, cplx k_in, const detail::ScaledTrig& t) {
  return (k + k_b) * t.cos - I * (k_in + k_b * k / k_in) * t.sin;
}

// Numerators and denominators of 1/k^c and 1/k^t after clearing the cot and
// tan poles. The scale factors of the half-angle pairs cancel in each ratio.
struct ClearedScales {
  cplx num_c, den_c;  // 1/k^c = num_c / den_c
  cplx num_t, den_t;  // 1/k^t = num_t / den_t
};

ClearedScales cleared_scales(const ChannelWavenumbers& w, double length) {
  const double k = w.k;
  const cplx kb = w.k_b;
  const cplx kp = w.k_plus;
  const cplx km = w.k_minus;
  const auto hm = detail::scaled_trig(km * (0.5 * length));
  const auto hp = detail::scaled_trig(kp * (0.5 * length));
  ClearedScales s;
  s.num_c = hm.cos * hp.sin * km - hm.sin * hp.cos * kp;
  s.den_c = I * (k * hm.sin + I * hm.cos * km) * (kb * hp.sin + I * hp.cos * kp);
  s.num_t = hp.sin * hm.cos * kp - hm.sin * hp.cos * km;
  s.den_t = I * (k * hm.cos - I * hm.sin * km) * (kb * hp.cos - I * hp.sin * kp);
  return s;
}

struct SharedDenominator {
  cplx inverse;  // 1 / [(c^2 (k-k_b)/k^c - 1)(c^2 (k-k_b)/k^t - 1)]
  bool degenerate = false;
};

SharedDenominator shared_denominator(const ChannelWavenumbers& w, const SystemParams& params) {
  const auto s = cleared_scales(w, params.coupling_length);
  const cplx shift = params.mixing().cos_sq * (w.k - w.k_b);
  const cplx bracket_c = shift * s.num_c - s.den_c;
  const cplx bracket_t = shift * s.num_t - s.den_t;
  constexpr double tol = 1e-12;
  SharedDenominator d;
  d.degenerate =
      std::abs(bracket_c) <= tol * (std::abs(shift * s.num_c) + std::abs(s.den_c)) ||
      std::abs(bracket_t) <= tol * (std::abs(shift * s.num_t) + std::abs(s.den_t));
  if (!d.degenerate) d.inverse = (s.den_c * s.den_t) / (bracket_c * bracket_t);
  return d;
}

void fill_probabilities(ScatteringResult& r, const ChannelWavenumbers& w) {
  r.T_a = std::norm(r.tau_a);
  r.T_b = w.b_channel_open ? w.k_b.real() / w.k * std::norm(r.tau_b) : 0.0;
  r.T_total = r.T_a + r.T_b;
}

void require_positive_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("incident wavenumber must be finite and > 0");
  }
}

}  // namespace

cplx step_amplitude(cplx q, cplx k_inside, double coupling_length) {
  if (k_inside == 0.0 || q == 0.0) {
    throw NumericalError("step amplitude is degenerate at a vanishing wavenumber");
  }
  const auto t = detail::scaled_trig(k_inside * coupling_length);
  if (t.phase == 0.0) return 0.0;
  const cplx sigma = 0.5 * (k_inside / q + q / k_inside);
  return t.phase / (t.cos - I * sigma * t.sin);
}

cplx tau_pm(DressedBranch branch, cplx k_eval, const SystemParams& params) {
  params.validate();
  if (k_eval == 0.0) throw DomainError("tau_pm requires a nonzero wavenumber");
  const double shift = branch == DressedBranch::Upper
                           ? -upper_dressed_shift(params.detuning_ratio, params.photon_number)
                           : lower_dressed_shift(params.detuning_ratio, params.photon_number);
  const cplx k_inside = branch_sqrt(k_eval * k_eval + shift);
  if (k_inside == 0.0) {
    throw NumericalError("dressed wavenumber vanishes exactly (channel threshold)");
  }
  return step_amplitude(k_eval, k_inside, params.coupling_length);
}

ResonanceScales resonance_denominator_scales(double k, const SystemParams& params) {
  require_positive_k(k);
  const auto w = channel_wavenumbers(k, params);
  const auto s = cleared_scales(w, params.coupling_length);
  if ((s.num_c == 0.0 && s.den_c == 0.0) || (s.num_t == 0.0 && s.den_t == 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "resonance scales degenerate at k/kappa = " << k;
    throw NumericalError(msg.str());
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  ResonanceScales r;
  r.k_c = s.num_c == 0.0 ? cplx(inf, inf) : s.den_c / s.num_c;
  r.k_t = s.num_t == 0.0 ? cplx(inf, inf) : s.den_t / s.num_t;
  return r;
}

double interference_factor(double k, const SystemParams& params) {
  require_positive_k(k);
  const auto w = channel_wavenumbers(k, params);
  const auto d = shared_denominator(w, params);
  if (d.degenerate) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "interference factor degenerate at k/kappa = " << k;
    throw NumericalError(msg.str());
  }
  return std::norm(d.inverse);
}

ScatteringResult scatter(double k, const SystemParams& params) {
  require_positive_k(k);
  const auto w = channel_wavenumbers(k, params);
  const double length = params.coupling_length;
  const auto mix = params.mixing();
  const auto denom = shared_denominator(w, params);
  const bool threshold = w.k_b == 0.0;
  if (denom.degenerate || w.k_plus == 0.0) {
    auto r = scatter_boundary_matching(k, params);
    r.at_threshold = threshold;
    return r;
  }

  const cplx km = w.k_minus;
  const auto tm = detail::scaled_trig(km * length);  // k_minus is real: unscaled
  const auto tp = detail::scaled_trig(w.k_plus * length);

  const cplx tau_minus_k = k / scaled_inverse_step(k, km, tm);
  const cplx wm_b = scaled_inverse_step(w.k_b, km, tm);
  const cplx wp_b = scaled_inverse_step(w.k_b, w.k_plus, tp);
  // tau+(k_b) / tau-(k_b)
  const cplx upper_over_lower = wm_b * tp.phase / wp_b;
  const cplx vm = scaled_inverse_mixed_step(k, w.k_b, km, tm);
  const cplx vp = scaled_inverse_mixed_step(k, w.k_b, w.k_plus, tp);
  // (1 + k/k_b) tau+(k_b) [1/tau~-(k,k_b) - 1/tau~+(k,k_b)]
  const cplx mixed = (vm * tp.phase - vp) / wp_b;

  ScatteringResult r;
  r.tau_a = (mix.cos_sq * tau_minus_k * upper_over_lower + mix.sin_sq * tau_minus_k) *
            denom.inverse;
  r.tau_b = 0.25 * mix.sin_2theta * tau_minus_k * mixed * denom.inverse;
  r.at_threshold = threshold;
  fill_probabilities(r, w);
  return r;
}

ScatteringResult scatter_boundary_matching(double k, const SystemParams& params) {
  require_positive_k(k);
  const auto w = channel_wavenumbers(k, params);
  const double length = params.coupling_length;
  const auto mix = params.mixing();
  const double c = std::sqrt(mix.cos_sq);
  const double s = std::sqrt(mix.sin_sq);

  // Dressed eigenvectors in the (|a,n>, |b,n+1>) basis.
  const std::array<std::array<double, 2>, 2> vec{{{c, s}, {s, -c}}};
  const std::array<cplx, 2> q{w.k_plus, cplx(w.k_minus)};
  if (q[0] == 0.0 || w.k_b == 0.0) {
    throw NumericalError("boundary matching is singular at a channel threshold");
  }
  std::array<cplx, 2> decay{};
  for (int j = 0; j < 2; ++j) decay[j] = std::exp(I * q[j] * length);

  double k_ref = std::max({k, std::abs(w.k_b), std::abs(q[0]), std::abs(q[1])});
  // Unknowns: r_a, r_b, A+, B+, A-, B-, t_a, t_b. Rows: value and slope of both
  // components at z = 0, then at z = L. Inside, each dressed channel is
  // A e^{iq z} + B e^{-iq (z - L)}.
  Eigen::Matrix<cplx, 8, 8> m = Eigen::Matrix<cplx, 8, 8>::Zero();
  Eigen::Matrix<cplx, 8, 1> rhs = Eigen::Matrix<cplx, 8, 1>::Zero();
  const std::array<cplx, 2> outside{cplx(k), w.k_b};
  for (int comp = 0; comp < 2; ++comp) {
    const int v0 = comp, d0 = 2 + comp, v1 = 4 + comp, d1 = 6 + comp;
    // Left region: incoming in channel a only.
    m(v0, comp) = 1.0;
    m(d0, comp) = -I * outside[comp] / k_ref;
    if (comp == 0) {
      rhs(v0) = -1.0;
      rhs(d0) = -I * outside[0] / k_ref;
    }
    for (int j = 0; j < 2; ++j) {
      const double v = vec[j][comp];
      const cplx iq = I * q[j] / k_ref;
      m(v0, 2 + 2 * j) = -v;
      m(v0, 3 + 2 * j) = -v * decay[j];
      m(d0, 2 + 2 * j) = -v * iq;
      m(d0, 3 + 2 * j) = v * iq * decay[j];
      m(v1, 2 + 2 * j) = -v * decay[j];
      m(v1, 3 + 2 * j) = -v;
      m(d1, 2 + 2 * j) = -v * iq * decay[j];
      m(d1, 3 + 2 * j) = v * iq;
    }
    m(v1, 6 + comp) = 1.0;
    m(d1, 6 + comp) = I * outside[comp] / k_ref;
  }
  Eigen::PartialPivLU<Eigen::Matrix<cplx, 8, 8>> lu(m);
  if (!(lu.rcond() > 1e-14)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "boundary matching ill-conditioned at k/kappa = " << k
        << ", delta/g = " << params.detuning_ratio << ", rcond = " << lu.rcond();
    throw NumericalError(msg.str());
  }
  const Eigen::Matrix<cplx, 8, 1> x = lu.solve(rhs);
  ScatteringResult r;
  r.tau_a = x(6);
  r.tau_b = x(7);
  r.used_fallback = true;
  fill_probabilities(r, w);
  return r;
}

}  // namespace mazer
