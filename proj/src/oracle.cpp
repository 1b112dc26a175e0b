#include "mazer/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace mazer {

namespace {

constexpr cplx I{0.0, 1.0};

// Eigen-decomposition of the real symmetric 2x2 [[a, b], [b, d]]. The first
// pair is the larger eigenvalue.
struct Eigen2 {
  std::array<double, 2> value;
  std::array<std::array<double, 2>, 2> vector;  // vector[j] = (a-comp, b-comp)
};

Eigen2 symmetric_eigen(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  const double product = a * d - b * b;
  Eigen2 e;
  double hi = mean + radius;
  double lo = mean - radius;
  // Recover the smaller-magnitude root from the product.
  if (mean >= 0.0 && hi != 0.0) lo = product / hi;
  if (mean < 0.0 && lo != 0.0) hi = product / lo;
  e.value = {hi, lo};
  const double phi = 0.5 * std::atan2(2.0 * b, a - d);
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  e.vector = {{{c, s}, {-s, c}}};
  return e;
}

struct SegmentBasis {
  Eigen2 eig;
  std::array<cplx, 2> q;      // local wavenumbers
  std::array<cplx, 2> decay;  // e^{i q l}
};

void validate_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("incident wavenumber must be finite and > 0");
  }
}

}  // namespace

ModeFunction::ModeFunction(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw DomainError("mode function needs at least one segment");
  for (const auto& s : segments_) {
    if (!(s.length > 0.0) || !std::isfinite(s.length)) {
      throw DomainError("mode segment lengths must be finite and > 0");
    }
    if (!(s.value >= 0.0 && s.value <= 1.0)) {
      throw DomainError("mode values must lie in [0, 1]");
    }
    total_length_ += s.length;
  }
}

ModeFunction ModeFunction::mesa(double coupling_length) {
  return ModeFunction({{coupling_length, 1.0}});
}

ModeFunction ModeFunction::subdivided(int parts) const {
  if (parts < 1) throw DomainError("subdivision count must be >= 1");
  std::vector<Segment> out;
  out.reserve(segments_.size() * static_cast<std::size_t>(parts));
  for (const auto& s : segments_) {
    for (int i = 0; i < parts; ++i) out.push_back({s.length / parts, s.value});
  }
  return ModeFunction(std::move(out));
}

ModeFunction ModeFunction::reversed() const {
  return ModeFunction(std::vector<Segment>(segments_.rbegin(), segments_.rend()));
}

double SMatrixResult::T_a() const { return std::norm(t_a); }

double SMatrixResult::T_b(double k, const SystemParams& params) const {
  const double kb2 = k * k - params.detuning_ratio;
  return kb2 > 0.0 ? std::sqrt(kb2) / k * std::norm(t_b) : 0.0;
}

SMatrixResult solve(const ModeFunction& mode, double k, const SystemParams& params) {
  validate_k(k);
  if (params.photon_number < 0) throw DomainError("photon number must be >= 0");
  if (!std::isfinite(params.detuning_ratio)) throw DomainError("detuning must be finite");

  const double coupling = std::sqrt(static_cast<double>(params.photon_number) + 1.0);
  const double delta = params.detuning_ratio;
  const std::array<cplx, 2> outside{cplx(k), branch_sqrt(cplx(k * k - delta))};
  if (outside[1] == 0.0) {
    throw NumericalError("oracle is singular exactly at the |b> channel threshold");
  }

  const auto& segs = mode.segments();
  const int n_seg = static_cast<int>(segs.size());
  std::vector<SegmentBasis> basis(segs.size());
  double k_ref = std::max(k, std::abs(outside[1]));
  for (int s = 0; s < n_seg; ++s) {
    auto& b = basis[s];
    b.eig = symmetric_eigen(0.0, segs[s].value * coupling, delta);
    for (int j = 0; j < 2; ++j) {
      b.q[j] = branch_sqrt(cplx(k * k - b.eig.value[j]));
      b.decay[j] = std::exp(I * b.q[j] * segs[s].length);
      k_ref = std::max(k_ref, std::abs(b.q[j]));
    }
  }

  // Unknowns: r_a, r_b, then (A_0, B_0, A_1, B_1) per segment, then t_a, t_b.
  // Segment s carries A e^{iqx} + B e^{-iq(x-l)} per eigenchannel, x local.
  const int size = 4 + 4 * n_seg;
  const int t_col = 2 + 4 * n_seg;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);

  for (int iface = 0; iface <= n_seg; ++iface) {
    const int row0 = 4 * iface;
    for (int comp = 0; comp < 2; ++comp) {
      const int vrow = row0 + comp;
      const int drow = row0 + 2 + comp;
      const cplx iout = I * outside[comp] / k_ref;
      // Region to the left of the interface contributes with +, right with -.
      if (iface == 0) {
        m(vrow, comp) += 1.0;
        m(drow, comp) += -iout;
        if (comp == 0) {
          rhs(vrow) -= 1.0;
          rhs(drow) -= iout;
        }
      } else {
        const auto& b = basis[iface - 1];
        const int col = 2 + 4 * (iface - 1);
        for (int j = 0; j < 2; ++j) {
          const double v = b.eig.vector[j][comp];
          const cplx iq = I * b.q[j] / k_ref;
          m(vrow, col + 2 * j) += v * b.decay[j];
          m(vrow, col + 2 * j + 1) += v;
          m(drow, col + 2 * j) += v * iq * b.decay[j];
          m(drow, col + 2 * j + 1) += -v * iq;
        }
      }
      if (iface == n_seg) {
        m(vrow, t_col + comp) -= 1.0;
        m(drow, t_col + comp) -= iout;
      } else {
        const auto& b = basis[iface];
        const int col = 2 + 4 * iface;
        for (int j = 0; j < 2; ++j) {
          const double v = b.eig.vector[j][comp];
          const cplx iq = I * b.q[j] / k_ref;
          m(vrow, col + 2 * j) -= v;
          m(vrow, col + 2 * j + 1) -= v * b.decay[j];
          m(drow, col + 2 * j) -= v * iq;
          m(drow, col + 2 * j + 1) -= -v * iq * b.decay[j];
        }
      }
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "oracle boundary system ill-conditioned (rcond = " << rcond << ") at k/kappa = " << k
        << ", delta/g = " << delta << ", n = " << params.photon_number
        << ", kappa*L = " << mode.total_length();
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXcd x = lu.solve(rhs);

  SMatrixResult r;
  r.r_a = x(0);
  r.r_b = x(1);
  r.t_a = x(t_col);
  r.t_b = x(t_col + 1);
  r.flux_sum = std::norm(r.r_a) + std::norm(r.t_a) +
               outside[1].real() / k * (std::norm(r.r_b) + std::norm(r.t_b));
  return r;
}

std::vector<double> convergence_check(const ModeFunction& mode, double k,
                                      const SystemParams& params, int refinements) {
  if (refinements < 1) throw DomainError("refinements must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(refinements) + 1);
  for (int j = 0; j <= refinements; ++j) {
    out.push_back(solve(mode.subdivided(1 << j), k, params).T_a());
  }
  return out;
}

}  // namespace mazer
