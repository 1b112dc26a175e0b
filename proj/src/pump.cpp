#include "mazer/pump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mazer/scattering.hpp"
#include "mazer/ultracold.hpp"
#include "numerics.hpp"

namespace mazer {

void PumpParams::validate() const {
  if (!(thermal_photons >= 0.0) || !std::isfinite(thermal_photons)) {
    throw DomainError("thermal photon number must be finite and >= 0");
  }
  if (!(pump_ratio >= 0.0) || !std::isfinite(pump_ratio)) {
    throw DomainError("pump ratio r/C must be finite and >= 0");
  }
  if (truncation < 1) throw DomainError("photon truncation must be >= 1");
}

double PhotonDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < probabilities.size(); ++n) m += n * probabilities[n];
  return m;
}

double PhotonDistribution::total() const {
  double t = 0.0;
  for (double p : probabilities) t += p;
  return t;
}

namespace {

double emission_closed_form(double k, const SystemParams& params, double phase) {
  const double kb2 = k * k - params.detuning_ratio;
  if (!(kb2 > 0.0)) return 0.0;
  const double cot = params.cot_theta();
  const double s = std::sin(phase);
  const double ratio = params.kappa_n() / (2.0 * k);
  const double value = std::sqrt(kb2) / k * 0.5 * interference_factor(k, params) *
                       (1.0 + 0.5 * cot * std::sin(2.0 * phase)) /
                       (1.0 + ratio * ratio * cot * s * s);
  constexpr double slack = 1e-12;
  if (value < -slack || value > 1.0 + slack) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ultracold emission probability " << value << " outside [0, 1] at k/kappa = " << k
        << ", delta/g = " << params.detuning_ratio << "; use the exact kernel";
    throw DomainError(msg.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

void require_wavenumber(double k, const SystemParams& params) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber must be finite and > 0");
  params.validate();
}

}  // namespace

double p_em_ultracold(double k, const SystemParams& params) {
  require_wavenumber(k, params);
  // kappa_n sqrt(cot theta) L
  const double phase =
      std::sqrt(lower_dressed_shift(params.detuning_ratio, params.photon_number)) *
      params.coupling_length;
  return emission_closed_form(k, params, phase);
}

double p_em_ultracold_local_phase(double k, const SystemParams& params) {
  require_wavenumber(k, params);
  const double phase = channel_wavenumbers(k, params).k_minus * params.coupling_length;
  return emission_closed_form(k, params, phase);
}

double emission_probability(EmissionKernel kernel, double k, const SystemParams& params) {
  switch (kernel) {
    case EmissionKernel::Ultracold:
      return p_em_ultracold(k, params);
    case EmissionKernel::UltracoldLocalPhase:
      return p_em_ultracold_local_phase(k, params);
    case EmissionKernel::ExactTransmittedB:
      return scatter(k, params).T_b;
  }
  return 0.0;
}

double mean_p_em(int n, const VelocityDistribution& initial, const SystemParams& params_base,
                 const QuadratureOptions& options) {
  if (n < 0) throw DomainError("photon number must be >= 0");
  if (initial.empty() || std::abs(initial.integral() - 1.0) > 1e-6) {
    throw DomainError("initial velocity distribution is not normalized");
  }
  if (options.refinement < 0) throw DomainError("quadrature refinement must be >= 0");
  SystemParams params = params_base;
  params.photon_number = n;
  params.validate();

  const auto& grid = initial.grid();
  const auto& density = initial.density();
  const double k_lo = grid.front();
  const double k_hi = grid.back();

  // Panels: every grid interval carrying density, cut further at each
  // resonance and a few widths either side of it.
  std::vector<double> cuts;
  cuts.reserve(grid.size() + 64);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (density[i] > 0.0 || density[i + 1] > 0.0) {
      cuts.push_back(grid[i]);
      cuts.push_back(grid[i + 1]);
    }
  }
  if (cuts.empty()) return 0.0;
  const auto peaks = resonance_positions(params, resonance_indices(params, k_lo, k_hi));
  for (const auto& p : peaks) {
    for (double w : {0.0, -4.0, -1.0, -0.5, 0.5, 1.0, 4.0}) {
      const double x = p.position + w * (std::isfinite(p.width) ? p.width : 0.0);
      if (x > k_lo && x < k_hi) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double k) {
    const double p = initial(k);
    return p > 0.0 ? emission_probability(options.kernel, k, params) * p : 0.0;
  };

  const double span = cuts.back() - cuts.front();
  const int pieces = 1 << options.refinement;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(initial(0.5 * (a + b)) > 0.0) && !(initial(a) > 0.0) && !(initial(b) > 0.0)) continue;
    const double h = (b - a) / pieces;
    for (int j = 0; j < pieces; ++j) {
      const double lo = a + j * h;
      const double hi = j + 1 == pieces ? b : lo + h;
      const auto piece =
          detail::adaptive_integrate(integrand, lo, hi, 0.1 * options.abs_tol * (hi - lo) / span);
      total += piece.value;
      error += piece.error;
    }
  }
  if (error > options.abs_tol) {
    std::ostringstream msg;
    msg << "mean emission quadrature error estimate " << error << " exceeds tolerance "
        << options.abs_tol << " for n = " << n;
    throw NumericalError(msg.str());
  }
  return std::clamp(total, 0.0, 1.0);
}

PhotonDistribution stationary_distribution(const PumpParams& pump,
                                           const std::function<double(int)>& mean_em) {
  pump.validate();
  constexpr int kMaxPhotons = 1 << 14;
  constexpr double kTail = 1e-12;
  const double nb = pump.thermal_photons;
  const double log_denominator = std::log1p(nb);

  // log P(n) - log P(0), extended on demand.
  std::vector<double> log_weight{0.0};
  auto extend_to = [&](int n_max) {
    for (int n = static_cast<int>(log_weight.size()); n <= n_max; ++n) {
      const double em = pump.pump_ratio > 0.0 ? mean_em(n - 1) : 0.0;
      if (!(em >= 0.0) || !std::isfinite(em)) {
        throw DomainError("mean emission probability must be finite and >= 0");
      }
      const double numerator = nb + pump.pump_ratio * em / n;
      const double step = numerator > 0.0 ? std::log(numerator) - log_denominator
                                          : -std::numeric_limits<double>::infinity();
      log_weight.push_back(log_weight.back() + step);
    }
  };

  for (int n_max = pump.truncation;; n_max *= 2) {
    if (n_max > kMaxPhotons) {
      throw ConfigurationError(
          "stationary photon distribution does not decay: tail criterion unreachable below " +
          std::to_string(kMaxPhotons) + " photons");
    }
    extend_to(n_max);
    const double peak = *std::max_element(log_weight.begin(), log_weight.begin() + n_max + 1);
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) sum += std::exp(log_weight[n] - peak);
    const double log_norm = peak + std::log(sum);
    const double tail = std::exp(log_weight[n_max] - log_norm);
    if (tail < kTail) {
      PhotonDistribution d;
      d.probabilities.resize(static_cast<std::size_t>(n_max) + 1);
      for (int n = 0; n <= n_max; ++n) d.probabilities[n] = std::exp(log_weight[n] - log_norm);
      return d;
    }
  }
}

}  // namespace mazer
