#pragma once

#include <utility>
#include <vector>

#include "mazer/core.hpp"
#include "mazer/pump.hpp"
#include "mazer/velocity.hpp"

namespace mazer {

/// k^2 exp(-k^2 / k0^2) sampled on `grid` and normalized there by the
/// trapezoidal rule; its mode sits at k0.
VelocityDistribution maxwell_boltzmann_initial(double k0, std::vector<double> grid);

/// `count` equally spaced points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int count);

struct BeamTransmission {
  double T_a = 0.0;
  double T_b = 0.0;
};

/// Photon-number average of the single-n transmissions.
BeamTransmission beam_transmissions(const PhotonDistribution& dist, double k,
                                    const SystemParams& params_base);

struct SelectionOptions {
  /// Multiply the remapped |b> term by dk'/dk = k/k'.
  bool jacobian = false;
  /// Photon numbers with P_st(n) below this do not seed grid refinement.
  double populated_threshold = 1e-10;
  /// Samples per FWHM around each resonance.
  int points_per_width = 20;
};

/// Velocity distribution of the transmitted beam. Not renormalized: it
/// integrates to the transmitted fraction. The output grid is the initial
/// grid plus local refinement around every resonance of every populated n.
VelocityDistribution final_distribution(const VelocityDistribution& initial,
                                        const PhotonDistribution& dist,
                                        const SystemParams& params_base,
                                        const SelectionOptions& options = {});

/// The output grid final_distribution() evaluates on.
std::vector<double> selection_grid(const VelocityDistribution& initial,
                                   const PhotonDistribution& dist,
                                   const SystemParams& params_base,
                                   const SelectionOptions& options = {});

/// Final density at one wavenumber.
double final_density(double k, const VelocityDistribution& initial,
                     const PhotonDistribution& dist, const SystemParams& params_base,
                     bool jacobian = false);

struct PeakSummary {
  double position = 0.0;
  double height = 0.0;
  double width = 0.0;          // FWHM, linearly interpolated between samples
  double runner_up = 0.0;      // highest local maximum outside the main peak
};

/// Highest local maximum of a sampled density and its neighbourhood.
PeakSummary dominant_peak(const VelocityDistribution& dist);

/// End-to-end beam pipeline: Maxwell-Boltzmann beam, stationary photon
/// statistics pumped by that beam, and the transmitted distribution.
struct PipelineConfig {
  SystemParams params_base;
  PumpParams pump;
  double k0 = 0.05;
  std::vector<double> grid;  // initial-distribution grid
  QuadratureOptions quadrature;
  SelectionOptions selection;
};

struct PipelineResult {
  VelocityDistribution initial;
  std::vector<double> mean_emission;  // indexed by photon number
  PhotonDistribution photons;
  VelocityDistribution final;
};

PipelineResult run_velocity_selection(const PipelineConfig& config);

}  // namespace mazer
