#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "mazer/core.hpp"

namespace testing {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
constexpr double pi = std::numbers::pi;

inline cplx principal_up(cplx z) {
  cplx r = std::sqrt(z);
  if (r.imag() < 0.0) r = -r;
  return r;
}

// theta_n straight from cot(2 theta) = -delta / Omega_n.
inline double theta_direct(double delta, int n) {
  const double omega = 2.0 * std::sqrt(n + 1.0);
  return 0.5 * (pi / 2.0 + std::atan(delta / omega));
}

// Plain-trigonometry transmission amplitudes of the mesa cavity, written
// term by term with cot/tan and no rescaling. Only usable where nothing
// overflows (moderate kappa L) and away from the cot/tan poles.
struct DirectAmplitudes {
  cplx tau_a, tau_b;
  double T_a, T_b;
};

inline DirectAmplitudes direct_amplitudes(double k, double delta, double L, int n) {
  const double th = theta_direct(delta, n);
  const double kn2 = std::sqrt(n + 1.0);
  const cplx kb = principal_up(k * k - delta);
  const cplx kp = principal_up(k * k - kn2 * std::tan(th));
  const cplx km = principal_up(k * k + kn2 / std::tan(th));
  auto tau = [&](cplx q, cplx kin) {
    const cplx sigma = 0.5 * (kin / q + q / kin);
    return 1.0 / (std::cos(kin * L) - I * sigma * std::sin(kin * L));
  };
  auto tau_tilde = [&](cplx kin) {
    const cplx sigma = kin / (k + kb) + kb / (k + kb) * k / kin;
    return 1.0 / (std::cos(kin * L) - I * sigma * std::sin(kin * L));
  };
  auto cot = [](cplx z) { return std::cos(z) / std::sin(z); };
  auto tan = [](cplx z) { return std::sin(z) / std::cos(z); };
  const cplx cm = cot(km * L / 2.0), cp = cot(kp * L / 2.0);
  const cplx tm = tan(km * L / 2.0), tp = tan(kp * L / 2.0);
  const cplx kc = I * (k + I * cm * km) * (kb + I * cp * kp) / (cm * km - cp * kp);
  const cplx kt = I * (k - I * tm * km) * (kb - I * tp * kp) / (tp * kp - tm * km);
  const double c2 = std::cos(th) * std::cos(th);
  const double s2 = std::sin(th) * std::sin(th);
  const cplx den = (c2 * (k - kb) / kc - 1.0) * (c2 * (k - kb) / kt - 1.0);
  const cplx tmk = tau(k, km), tmb = tau(kb, km), tpb = tau(kb, kp);
  DirectAmplitudes r;
  r.tau_a = (c2 * tmk / tmb * tpb + s2 * tmk) / den;
  r.tau_b = std::sin(2.0 * th) / 4.0 * (1.0 + k / kb) *
            (tmk / tau_tilde(km) * tpb - tpb / tau_tilde(kp) * tmk) / den;
  r.T_a = std::norm(r.tau_a);
  r.T_b = k * k > delta ? kb.real() / k * std::norm(r.tau_b) : 0.0;
  return r;
}

// Stationary distribution by the plain product, no logarithms.
inline std::vector<double> direct_product(double nb, double ratio, int n_max,
                                          const std::function<double(int)>& em) {
  std::vector<double> p(n_max + 1);
  p[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) p[n] = p[n - 1] * (nb + ratio * em(n - 1) / n) / (nb + 1.0);
  double sum = 0.0;
  for (double v : p) sum += v;
  for (double& v : p) v /= sum;
  return p;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace testing
