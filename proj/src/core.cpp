#include "mazer/core.hpp"

#include <cmath>
#include <numbers>

namespace mazer {

namespace {

void require_photon_number(int photon_number) {
  if (photon_number < 0) {
    throw DomainError("photon number must be >= 0, got " +
                      std::to_string(photon_number));
  }
}

}  // namespace

void SystemParams::validate() const {
  if (!(coupling_length > 0.0) || !std::isfinite(coupling_length)) {
    throw DomainError("coupling length kappa*L must be finite and > 0");
  }
  if (!std::isfinite(detuning_ratio)) {
    throw DomainError("detuning ratio must be finite");
  }
  require_photon_number(photon_number);
}

double SystemParams::rabi_ratio() const {
  return 2.0 * std::sqrt(static_cast<double>(photon_number) + 1.0);
}

double SystemParams::kappa_n() const {
  return std::sqrt(std::sqrt(static_cast<double>(photon_number) + 1.0));
}

double SystemParams::theta() const {
  return dressed_angle(detuning_ratio, photon_number);
}

double SystemParams::tan_theta() const {
  return upper_dressed_shift(detuning_ratio, photon_number) /
         std::sqrt(static_cast<double>(photon_number) + 1.0);
}

double SystemParams::cot_theta() const {
  return lower_dressed_shift(detuning_ratio, photon_number) /
         std::sqrt(static_cast<double>(photon_number) + 1.0);
}

DressedMixing SystemParams::mixing() const {
  DressedMixing m;
  const double t = tan_theta();
  if (t <= 1.0) {
    const double d = 1.0 + t * t;
    m.sin_sq = t * t / d;
    m.cos_sq = 1.0 / d;
    m.sin_2theta = 2.0 * t / d;
  } else {
    const double c = cot_theta();
    const double d = 1.0 + c * c;
    m.sin_sq = 1.0 / d;
    m.cos_sq = c * c / d;
    m.sin_2theta = 2.0 * c / d;
  }
  return m;
}

double dressed_angle(double detuning_ratio, int photon_number) {
  require_photon_number(photon_number);
  const double rabi = 2.0 * std::sqrt(static_cast<double>(photon_number) + 1.0);
  // 2 theta = atan2(sin, cos) with sin 2theta ~ Omega_n, cos 2theta ~ -delta.
  return 0.5 * std::atan2(rabi, -detuning_ratio);
}

cplx branch_sqrt(cplx z) {
  cplx r = std::sqrt(z);
  if (r.imag() < 0.0) r = -r;
  // The real axis: sqrt(-0 i) may come back as a negative real root.
  if (r.imag() == 0.0 && r.real() < 0.0) r = -r;
  return r;
}

// The dressed energies are delta/2 +- hypot(delta/2, sqrt(n+1)); one root of
// each pair is computed from the product lambda_+ lambda_- = -(n+1).
double upper_dressed_shift(double detuning_ratio, int photon_number) {
  require_photon_number(photon_number);
  const double half = 0.5 * detuning_ratio;
  const double coupling_sq = static_cast<double>(photon_number) + 1.0;
  const double h = std::hypot(half, std::sqrt(coupling_sq));
  return half >= 0.0 ? half + h : coupling_sq / (h - half);
}

double lower_dressed_shift(double detuning_ratio, int photon_number) {
  require_photon_number(photon_number);
  const double half = 0.5 * detuning_ratio;
  const double coupling_sq = static_cast<double>(photon_number) + 1.0;
  const double h = std::hypot(half, std::sqrt(coupling_sq));
  return half <= 0.0 ? h - half : coupling_sq / (h + half);
}

ChannelWavenumbers channel_wavenumbers(double k, const SystemParams& params) {
  params.validate();
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("incident wavenumber must be finite and > 0");
  }
  ChannelWavenumbers w;
  w.k = k;
  const double k2 = k * k;
  w.k_b = branch_sqrt(cplx(k2 - params.detuning_ratio, 0.0));
  w.k_plus = branch_sqrt(
      cplx(k2 - upper_dressed_shift(params.detuning_ratio, params.photon_number), 0.0));
  w.k_minus =
      std::sqrt(k2 + lower_dressed_shift(params.detuning_ratio, params.photon_number));
  w.b_channel_open = k2 > params.detuning_ratio;
  return w;
}

}  // namespace mazer
