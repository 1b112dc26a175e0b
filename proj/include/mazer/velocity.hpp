#pragma once

#include <functional>
#include <vector>

namespace mazer {

/// A sampled probability density over k/kappa.
///
/// Between samples the density is the monotone (PCHIP) cubic through the
/// samples; outside [grid.front(), grid.back()] it is 0.
class VelocityDistribution {
 public:
  VelocityDistribution() = default;
  /// Throws DomainError unless the grid is strictly increasing, starts at
  /// k >= 0, has at least two points, and the density is finite and >= 0.
  VelocityDistribution(std::vector<double> grid, std::vector<double> density);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& density() const { return density_; }
  std::size_t size() const { return grid_.size(); }
  bool empty() const { return grid_.empty(); }

  double operator()(double k) const;
  /// Trapezoidal integral over the grid.
  double integral() const;

 private:
  std::vector<double> grid_;
  std::vector<double> density_;
  std::function<double(double)> interpolant_;
};

}  // namespace mazer
