// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/math/tools/minima.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mazer/oracle.hpp"
#include "mazer/pump.hpp"
#include "mazer/scattering.hpp"
#include "mazer/selection.hpp"
#include "mazer/ultracold.hpp"

using namespace mazer;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Maximum of f on [a, b] by Brent's method.
std::pair<double, double> maximize(const std::function<double(double)>& f, double a, double b) {
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b, 40);
  return {r.first, -r.second};
}

// Local maxima of f over a uniform scan, each refined by Brent's method.
std::vector<std::pair<double, double>> scan_peaks(const std::function<double(double)>& f, double lo,
                                                  double hi, int samples) {
  std::vector<double> x(samples), y(samples);
  for (int i = 0; i < samples; ++i) {
    x[i] = lo + (hi - lo) * i / (samples - 1);
    y[i] = f(x[i]);
  }
  std::vector<std::pair<double, double>> peaks;
  for (int i = 1; i + 1 < samples; ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) peaks.push_back(maximize(f, x[i - 1], x[i + 1]));
  }
  return peaks;
}

// Half-maximum crossing between an inside point (above) and an outside point (below).
double half_crossing(const std::function<double(double)>& f, double inside, double outside,
                     double half) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (inside + outside);
    (f(mid) > half ? inside : outside) = mid;
  }
  return 0.5 * (inside + outside);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Outcome criterion_resonant_reduction() {
  Outcome o;
  double worst = 0.0;
  for (int n : {0, 1, 2}) {
    for (double L : {200 * pi, 1000 * pi}) {
      const SystemParams p{0.0, L, n};
      const double k_max = 0.1 * p.kappa_n();
      for (int i = 1; i <= 20000; ++i) {
        const double k = k_max * i / 20000;
        worst = std::max(worst, std::abs(scatter(k, p).T_total - resonant_transmission(k, L, n)));
      }
    }
  }
  o.pass = worst < 1e-6;
  o.detail = fmt("max |T - T_resonant| = %.3e (tol 1e-6)", worst);
  return o;
}

Outcome criterion_peak_geometry() {
  Outcome o;
  const SystemParams p{0.0, 1000 * pi, 0};
  auto T = [&](double k) { return scatter(k, p).T_total; };
  const auto peaks = scan_peaks(T, 1e-4, 0.1, 200001);
  double worst_pos = 0.0;
  double worst_height = 0.0;
  int m = 1001;
  for (const auto& [k, t] : peaks) {
    const double predicted = std::sqrt(std::pow(m * pi / p.coupling_length, 2) - 1.0);
    worst_pos = std::max(worst_pos, std::abs(k - predicted));
    worst_height = std::max(worst_height, std::abs(t - 0.5));
    ++m;
  }
  const bool first_ok = !peaks.empty() && std::abs(peaks.front().first - 0.04473) < 5e-6;
  o.pass = !peaks.empty() && first_ok && worst_pos < 1e-8 && worst_height < 1e-6;
  o.detail = fmt("%.0f peaks from m = 1001, first at k = %.8f", static_cast<double>(peaks.size()),
                 peaks.empty() ? 0.0 : peaks.front().first) +
             fmt(", max |dk| = %.2e (tol 1e-8), max |T - 1/2| = %.2e (tol 1e-6)", worst_pos,
                 worst_height);
  return o;
}

Outcome criterion_closed_channel_amplitude() {
  Outcome o;
  const SystemParams p{0.005, 1000 * pi, 0};
  auto T = [&](double k) { return scatter(k, p).T_total; };
  const auto peaks = scan_peaks(T, 1e-4, std::sqrt(0.005), 100001);
  double worst = 0.0;
  for (const auto& [k, t] : peaks) worst = std::max(worst, std::abs(t - 1.0));
  const auto catalog = resonance_positions(p, resonance_indices(p, 0.0, std::sqrt(0.005)));
  o.pass = !peaks.empty() && peaks.size() == catalog.size() && worst < 1e-6;
  o.detail = fmt("%.0f closed-channel peaks (catalog %.0f), max |T - 1| = %.2e (tol 1e-6)",
                 static_cast<double>(peaks.size()), static_cast<double>(catalog.size()), worst);
  return o;
}

Outcome criterion_hot_cold_edge() {
  Outcome o;
  // Cold side: the atom is reflected, T stays small. The edge is the first
  // detuning, scanning downward, where transmission becomes of order one.
  const double k = 0.05;
  const double expected = hot_cold_boundary(k, 0);
  double edge = std::nan("");
  double cold_max = 0.0;
  for (double d = -200.0; d >= -800.0; d -= 0.05) {
    const double t = scatter(k, {d, 1000.0, 0}).T_total;
    if (t > 0.1) {
      edge = d;
      break;
    }
    if (d > 0.95 * expected) cold_max = std::max(cold_max, t);
  }
  o.pass = std::isfinite(edge) && std::abs(edge - expected) <= 0.05 * std::abs(expected);
  o.detail = fmt("edge at delta/g = %.2f, boundary %.1f (tol 5%%), cold plateau max T %.4f", edge,
                 expected, cold_max);
  return o;
}

Outcome criterion_width() {
  Outcome o;
  const double k = 0.01;
  const double L = 1e5;
  const double g = 1e5;  // 100 kHz, as an angular rate in s^-1
  auto T = [&](double d) { return scatter(k, {d, L, 0}).T_total; };
  // Resonances in delta are ~1.3e-4 apart; sample finely around delta = 0.
  const auto peaks = scan_peaks(T, -1.5e-4, 1.5e-4, 6001);
  if (peaks.empty()) {
    o.pass = false;
    o.detail = "no resonance found";
    return o;
  }
  auto best = peaks.front();
  for (const auto& p : peaks) {
    if (std::abs(p.first) < std::abs(best.first)) best = p;
  }
  const double half = 0.5 * best.second;
  const double step = 1e-7;
  double lo = best.first - step, hi = best.first + step;
  while (T(lo) > half) lo -= step;
  while (T(hi) > half) hi += step;
  const double fwhm = half_crossing(T, best.first, hi, half) - half_crossing(T, best.first, lo, half);
  const double hz = fwhm * g / (2 * pi);
  o.pass = hz >= 1e-2 / 3 && hz <= 3e-2;
  o.detail = fmt("resonance nearest delta = 0 at delta/g = %.4e, FWHM = %.3e g = %.4f Hz", best.first,
                 fwhm, hz) +
             " (target 1e-2 Hz within x3)";
  return o;
}

Outcome criterion_oracle() {
  Outcome o;
  std::mt19937_64 rng(20030101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  double worst_flux = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double k = std::pow(10.0, -3.0 + 3.0 * u(rng));
    const double d = -500.0 + 510.0 * u(rng);
    const int n = static_cast<int>(4 * u(rng));
    const double L = std::pow(10.0, 2.0 + 2.0 * u(rng));
    const SystemParams p{d, L, n};
    const auto c = scatter(k, p);
    const auto s = solve(ModeFunction::mesa(L), k, p);
    worst = std::max({worst, std::abs(c.T_a - s.T_a()), std::abs(c.T_b - s.T_b(k, p)),
                      std::abs(c.T_total - s.T_a() - s.T_b(k, p))});
    worst_flux = std::max(worst_flux, std::abs(s.flux_sum - 1.0));
  }
  o.pass = worst < 1e-9 && worst_flux < 1e-9;
  o.detail = fmt("1000 points, max |dT| = %.2e, max |flux - 1| = %.2e (tol 1e-9)", worst, worst_flux);
  return o;
}

Outcome criterion_detuning_limits() {
  Outcome o;
  const double t = scatter(0.05, {1e6, 1000.0, 0}).T_total;
  double worst = 0.0;
  for (double nb : {0.0, 0.2, 1.5}) {
    const auto d = stationary_distribution({nb, 0.0, 64}, [](int) { return 0.5; });
    for (int n = 0; n <= d.max_photons(); ++n) {
      const double thermal = std::pow(nb / (1 + nb), n) / (1 + nb);
      worst = std::max(worst, std::abs(d.probabilities[n] - thermal));
    }
  }
  o.pass = t > 0.999 && worst < 1e-12;
  o.detail = fmt("T(delta/g = 1e6) = %.9f (> 0.999), thermal max |dP| = %.2e", t, worst);
  return o;
}

Outcome criterion_velocity_selection() {
  Outcome o;
  auto run = [](double d) {
    PipelineConfig c;
    c.params_base = {d, 200 * pi, 0};
    c.pump = {0.2, 100.0, 64};
    c.k0 = 0.05;
    c.grid = uniform_grid(0.0, 0.2, 4001);
    return run_velocity_selection(c);
  };
  const auto base = run(0.0);
  const auto initial_peak = dominant_peak(base.initial);
  const auto p0 = dominant_peak(base.final);
  const bool single = p0.runner_up < 0.5 * p0.height && p0.width < 0.25 * initial_peak.width;
  o.detail = fmt("delta=0: peak k=%.5f height %.3f width %.5f", p0.position, p0.height, p0.width) +
             fmt(" runner-up %.3f; ", p0.runner_up);
  // The peak position must move strictly with detuning, each step by far more
  // than the initial grid spacing, while the peak grows.
  const double grid_step = 0.2 / 4000;
  bool steered = true;
  double prev_pos = p0.position, prev_height = p0.height;
  for (double d : {0.004, 0.0045, 0.005}) {
    const auto p = dominant_peak(run(d).final);
    o.detail += fmt("delta=%.4f: k=%.5f height %.3f; ", d, p.position, p.height);
    steered = steered && p.height > prev_height && p.position - prev_pos > 10 * grid_step;
    prev_pos = p.position;
    prev_height = p.height;
  }
  o.pass = single && steered;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {"resonant reduction", criterion_resonant_reduction},
      {"peak geometry", criterion_peak_geometry},
      {"closed-channel amplitude", criterion_closed_channel_amplitude},
      {"hot/cold window edge", criterion_hot_cold_edge},
      {"resonance width in Hz", criterion_width},
      {"oracle equivalence", criterion_oracle},
      {"detuning limits", criterion_detuning_limits},
      {"velocity-selection pipeline", criterion_velocity_selection},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", index++, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
