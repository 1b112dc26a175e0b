#include "mazer/velocity.hpp"

// pchip.hpp in Boost 1.74 calls isnan unqualified; this brings boost::math::isnan into scope.
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>

#include "mazer/core.hpp"

namespace mazer {

VelocityDistribution::VelocityDistribution(std::vector<double> grid, std::vector<double> density)
    : grid_(std::move(grid)), density_(std::move(density)) {
  if (grid_.size() != density_.size()) {
    throw DomainError("velocity grid and density differ in length");
  }
  if (grid_.size() < 2) throw DomainError("velocity distribution needs at least two samples");
  if (!(grid_.front() >= 0.0)) throw DomainError("velocity grid must start at k >= 0");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || (i > 0 && !(grid_[i] > grid_[i - 1]))) {
      throw DomainError("velocity grid must be finite and strictly increasing");
    }
    if (!(density_[i] >= 0.0) || !std::isfinite(density_[i])) {
      throw DomainError("velocity density must be finite and >= 0");
    }
  }
  if (grid_.size() >= 4) {
    interpolant_ = boost::math::interpolators::pchip<std::vector<double>>(
        std::vector<double>(grid_), std::vector<double>(density_));
  } else {
    interpolant_ = [x = grid_, y = density_](double k) {
      const auto it = std::upper_bound(x.begin(), x.end(), k);
      const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x.begin() - 1, 0));
      const std::size_t j = std::min(i + 1, x.size() - 1);
      if (i == j) return y[i];
      const double t = (k - x[i]) / (x[j] - x[i]);
      return (1.0 - t) * y[i] + t * y[j];
    };
  }
}

double VelocityDistribution::operator()(double k) const {
  if (grid_.empty() || k < grid_.front() || k > grid_.back()) return 0.0;
  return std::max(0.0, interpolant_(k));
}

double VelocityDistribution::integral() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    sum += 0.5 * (grid_[i] - grid_[i - 1]) * (density_[i] + density_[i - 1]);
  }
  return sum;
}

}  // namespace mazer
