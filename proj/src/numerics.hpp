#pragma once

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

namespace mazer::detail {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for the maximum of a unimodal f on [a, b].
template <class F>
Maximum golden_maximize(F&& f, double a, double b, double rel_tol = 1e-10) {
  constexpr double inv_phi = 0.6180339887498948482;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > rel_tol * std::abs(0.5 * (a + b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

// Root of f on [a, b] when f(a) and f(b) differ in sign.
template <class F>
std::optional<double> bracketed_root(F&& f, double a, double b) {
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) return std::nullopt;
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), max_iter);
  return 0.5 * (r.first + r.second);
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
template <class F>
Integral gauss_kronrod15(F&& f, double a, double b) {
  // QUADPACK qk15 abscissae and weights.
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += wgk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Adaptive bisection until each panel's error estimate is below its share
// of `abs_tol`.
template <class F>
Integral adaptive_integrate(F&& f, double a, double b, double abs_tol, int max_depth = 30) {
  const Integral whole = gauss_kronrod15(f, a, b);
  if (whole.error <= abs_tol || max_depth <= 0) return whole;
  const double mid = 0.5 * (a + b);
  const Integral left = adaptive_integrate(f, a, mid, 0.5 * abs_tol, max_depth - 1);
  const Integral right = adaptive_integrate(f, mid, b, 0.5 * abs_tol, max_depth - 1);
  return {left.value + right.value, left.error + right.error};
}

}  // namespace mazer::detail
