#pragma once

#include <cmath>
#include <complex>

#include "mazer/scattering.hpp"

namespace mazer::detail {

// cos z and sin z divided by a common factor 1/phase. For Im z above a few
// units the pair is rescaled by e^{iz} so that neither overflows; quantities
// linear in the pair then share the factor and it cancels in ratios.
struct ScaledTrig {
  std::complex<double> cos;
  std::complex<double> sin;
  std::complex<double> phase{1.0, 0.0};  // actual = scaled / phase
};

inline ScaledTrig scaled_trig(std::complex<double> z) {
  constexpr double kRescaleAbove = 20.0;
  if (z.imag() <= kRescaleAbove) return {std::cos(z), std::sin(z), 1.0};
  const std::complex<double> i{0.0, 1.0};
  const auto e2 = std::exp(2.0 * i * z);
  ScaledTrig t;
  t.cos = 0.5 * (1.0 + e2);
  t.sin = 0.5 * i * (1.0 - e2);
  t.phase = z.imag() > kEvanescentCutoff ? std::complex<double>(0.0) : std::exp(i * z);
  return t;
}

}  // namespace mazer::detail
