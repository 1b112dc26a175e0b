#pragma once

#include <functional>
#include <vector>

#include "mazer/core.hpp"
#include "mazer/velocity.hpp"

namespace mazer {

/// Thrown when a pump configuration admits no normalizable stationary state.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PumpParams {
  double thermal_photons = 0.0;  // n_b
  double pump_ratio = 0.0;       // r / C
  int truncation = 64;           // initial N_max, doubled until the tail is negligible

  void validate() const;
};

/// Stationary photon-number probabilities P_st(n), n = 0..N_max.
struct PhotonDistribution {
  std::vector<double> probabilities;

  int max_photons() const { return static_cast<int>(probabilities.size()) - 1; }
  double mean() const;
  double total() const;
};

/// Which single-atom emission probability enters the beam average.
enum class EmissionKernel {
  Ultracold,            // the small-k closed form (default)
  UltracoldLocalPhase,  // same form with the phase k^-_n L
  ExactTransmittedB,  // T_b of the exact mesa transmission
};

/// Induced emission probability of one atom in the ultracold regime.
/// Throws DomainError if the closed form leaves [0, 1] by more than 1e-12.
double p_em_ultracold(double k, const SystemParams& params);

/// The same closed form with the phase taken at the atom's own k^-_n(k) L
/// instead of its k -> 0 value. Tracks the total |b> flux (transmitted plus
/// reflected) of the exact solution.
double p_em_ultracold_local_phase(double k, const SystemParams& params);

double emission_probability(EmissionKernel kernel, double k, const SystemParams& params);

struct QuadratureOptions {
  double abs_tol = 1e-8;
  /// Each integration panel is split into 2^refinement equal pieces first.
  int refinement = 0;
  EmissionKernel kernel = EmissionKernel::Ultracold;
};

/// Beam-averaged emission probability for photon number n:
/// the integral of P_em(n, k) P_i(k) over the support of P_i.
double mean_p_em(int n, const VelocityDistribution& initial, const SystemParams& params_base,
                 const QuadratureOptions& options = {});

/// Stationary distribution from the detailed-balance product
/// P(n) = P(0) prod_{m=1}^{n} [n_b + (r/C) mean_em(m-1) / m] / (n_b + 1).
/// `mean_em` is called at most once per photon number.
PhotonDistribution stationary_distribution(const PumpParams& pump,
                                           const std::function<double(int)>& mean_em);

}  // namespace mazer
