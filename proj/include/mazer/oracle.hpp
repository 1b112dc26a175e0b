#pragma once

#include <vector>

#include "mazer/core.hpp"

namespace mazer {

/// Piecewise-constant cavity mode u(z). Lengths are in units of 1/kappa.
class ModeFunction {
 public:
  struct Segment {
    double length = 0.0;
    double value = 0.0;  // u in [0, 1]
  };

  /// Throws DomainError on empty input, non-positive lengths or u outside [0, 1].
  explicit ModeFunction(std::vector<Segment> segments);

  /// u(z) = 1 over kappa*L, the square ("mesa") profile.
  static ModeFunction mesa(double coupling_length);

  const std::vector<Segment>& segments() const { return segments_; }
  double total_length() const { return total_length_; }

  /// Every segment cut into `parts` equal pieces.
  ModeFunction subdivided(int parts) const;
  /// The same profile traversed back to front.
  ModeFunction reversed() const;

 private:
  std::vector<Segment> segments_;
  double total_length_ = 0.0;
};

/// Scattering amplitudes for an atom entering from the left in |a, n>.
/// Transmitted amplitudes are referenced to the right edge of the profile.
struct SMatrixResult {
  cplx r_a, r_b, t_a, t_b;
  double flux_sum = 0.0;

  double T_a() const;
  /// Flux-weighted transmission into |b, n + 1>; 0 when that channel is closed.
  double T_b(double k, const SystemParams& params) const;
};

/// Coupled-channel solve of the stationary two-channel problem for an
/// arbitrary piecewise-constant mode. `params.coupling_length` is ignored;
/// the mode carries its own length.
SMatrixResult solve(const ModeFunction& mode, double k, const SystemParams& params);

/// |t_a|^2 for the mode with every segment split into 2^j pieces,
/// j = 0..refinements.
std::vector<double> convergence_check(const ModeFunction& mode, double k,
                                      const SystemParams& params, int refinements);

}  // namespace mazer
