#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mazer {

using cplx = std::complex<double>;

/// Thrown when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a computation hits a numerical degeneracy it cannot resolve.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trigonometric weights of the dressed basis, evaluated without going
/// through theta itself.
struct DressedMixing {
  double sin_sq = 0.5;     // sin^2 theta_n
  double cos_sq = 0.5;     // cos^2 theta_n
  double sin_2theta = 1.0;
};

/// Dimensionless description of one atom/cavity configuration.
///
/// Wavenumbers are measured in units of kappa = sqrt(2 m g / hbar), detunings
/// in units of the coupling g and the cavity length as kappa * L.
struct SystemParams {
  double detuning_ratio = 0.0;   // delta / g
  double coupling_length = 1.0;  // kappa L, > 0
  int photon_number = 0;         // Fock state n seen by the excited atom

  /// Throws DomainError unless coupling_length > 0 and photon_number >= 0.
  void validate() const;

  /// Omega_n / g = 2 sqrt(n + 1).
  double rabi_ratio() const;
  /// kappa_n / kappa = (n + 1)^(1/4).
  double kappa_n() const;
  /// theta_n in (0, pi/2).
  double theta() const;
  double tan_theta() const;
  double cot_theta() const;
  DressedMixing mixing() const;
};

/// Wavenumbers of the four plane-wave channels for one incident k.
struct ChannelWavenumbers {
  double k = 0.0;   // incident, channel |a,n>
  cplx k_b;         // outgoing lower-state channel |b,n+1>
  cplx k_plus;      // upper dressed channel inside the cavity
  double k_minus = 0.0;  // lower dressed channel inside the cavity (always real)
  bool b_channel_open = false;
};

/// Dressed-state mixing angle theta_n, solving cot(2 theta) = -delta / Omega_n.
double dressed_angle(double detuning_ratio, int photon_number);

/// sqrt with the Im >= 0 branch (the positive root for positive radicands).
cplx branch_sqrt(cplx z);

/// Energy shift of the upper dressed level, kappa_n^2 tan(theta_n), in units
/// of kappa^2. Evaluated without cancellation for either sign of detuning.
double upper_dressed_shift(double detuning_ratio, int photon_number);
/// kappa_n^2 cot(theta_n) in units of kappa^2 (always > 0).
double lower_dressed_shift(double detuning_ratio, int photon_number);

ChannelWavenumbers channel_wavenumbers(double k, const SystemParams& params);

}  // namespace mazer
