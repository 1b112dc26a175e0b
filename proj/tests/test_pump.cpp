#include <doctest.h>

#include <random>

#include "mazer/oracle.hpp"
#include "mazer/pump.hpp"
#include "mazer/scattering.hpp"
#include "mazer/selection.hpp"
#include "mazer/ultracold.hpp"
#include "support.hpp"

using namespace mazer;
using testing::pi;

namespace {

const VelocityDistribution& beam() {
  static const auto b = maxwell_boltzmann_initial(0.05, uniform_grid(0.0, 0.2, 4001));
  return b;
}

// Normalized narrow triangle centred on k with half-width h.
VelocityDistribution spike(double k, double h) {
  return VelocityDistribution({k - h, k, k + h}, {0.0, 1.0 / h, 0.0});
}

}  // namespace

TEST_SUITE("pump") {

TEST_CASE("pump parameter validation") {
  CHECK_THROWS_AS((PumpParams{-0.1, 1.0, 64}.validate()), DomainError);
  CHECK_THROWS_AS((PumpParams{0.1, -1.0, 64}.validate()), DomainError);
  CHECK_THROWS_AS((PumpParams{0.1, 1.0, 0}.validate()), DomainError);
  CHECK_NOTHROW((PumpParams{0.0, 0.0, 1}.validate()));
}

TEST_CASE("emission probability at resonance") {
  const double L = 1000 * pi;
  for (double k : {0.01, 0.03, 0.05, 0.08}) {
    const SystemParams p{0.0, L, 0};
    const double s = std::sin(L);
    const double expected =
        0.5 * (1 + 0.5 * std::sin(2 * L)) / (1 + (1 / (2 * k)) * (1 / (2 * k)) * s * s);
    CHECK(p_em_ultracold(k, p) == doctest::Approx(expected).epsilon(1e-10));
  }
  // Off the kappa L = m pi grid the phase term matters.
  const SystemParams q{0.0, 1000.0, 1};
  const double kn = std::pow(2.0, 0.25);
  const double k = 0.04;
  const double s = std::sin(kn * 1000.0);
  const double expected =
      0.5 * (1 + 0.5 * std::sin(2 * kn * 1000.0)) / (1 + (kn / (2 * k)) * (kn / (2 * k)) * s * s);
  CHECK(p_em_ultracold(k, q) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("emission vanishes for a closed lower-state channel") {
  const SystemParams p{0.005, 1000 * pi, 0};
  for (double k = 1e-3; k * k <= 0.005; k += 1e-3) CHECK(p_em_ultracold(k, p) == 0.0);
  CHECK(p_em_ultracold_local_phase(0.05, p) == 0.0);
  CHECK_THROWS_AS(p_em_ultracold(0.0, p), DomainError);
}

TEST_CASE("local-phase emission tracks the exact lower-state flux") {
  // Emission counts atoms leaving in |b> in either direction.
  for (double d : {-0.002, 0.0, 0.002, 0.005}) {
    const SystemParams p{d, 200 * pi, 0};
    const auto mode = ModeFunction::mesa(p.coupling_length);
    double worst = 0.0;
    for (double k = 1e-3; k < 0.1; k += 2.5e-4) {
      if (!ultracold_regime(k, p) || k * k <= d) continue;
      const auto o = solve(mode, k, p);
      const double flux = std::sqrt(k * k - d) / k * (std::norm(o.r_b) + std::norm(o.t_b));
      worst = std::max(worst, std::abs(p_em_ultracold_local_phase(k, p) - flux));
    }
    CHECK(worst < 2e-3);
  }
}

TEST_CASE("emission kernels dispatch") {
  const SystemParams p{0.002, 200 * pi, 0};
  CHECK(emission_probability(EmissionKernel::Ultracold, 0.06, p) == p_em_ultracold(0.06, p));
  CHECK(emission_probability(EmissionKernel::UltracoldLocalPhase, 0.06, p) ==
        p_em_ultracold_local_phase(0.06, p));
  CHECK(emission_probability(EmissionKernel::ExactTransmittedB, 0.06, p) == scatter(0.06, p).T_b);
}

TEST_CASE("mean emission of a narrow spike is the point value") {
  const SystemParams p{0.0, 200 * pi, 0};
  for (double k : {0.03, 0.05, 0.071}) {
    for (auto kernel : {EmissionKernel::Ultracold, EmissionKernel::ExactTransmittedB}) {
      QuadratureOptions q;
      q.kernel = kernel;
      const double v = mean_p_em(0, spike(k, 1e-9), p, q);
      CHECK(v == doctest::Approx(emission_probability(kernel, k, p)).epsilon(1e-6));
    }
  }
}

TEST_CASE("mean emission vanishes when every atom is below the emission threshold") {
  const SystemParams p{0.01, 200 * pi, 0};
  const auto b = maxwell_boltzmann_initial(0.02, uniform_grid(0.0, 0.09, 500));
  CHECK(mean_p_em(0, b, p) == 0.0);
}

TEST_CASE("mean emission for the beam configuration") {
  const SystemParams p{0.0, 200 * pi, 0};
  const double coarse = mean_p_em(0, beam(), p);
  QuadratureOptions finer;
  finer.refinement = 1;
  const double fine = mean_p_em(0, beam(), p, finer);
  CHECK(coarse > 0.0);
  CHECK(coarse < 1.0);
  CHECK(std::abs(coarse - fine) < 1e-6);
  for (int n : {1, 4, 20}) {
    const double v = mean_p_em(n, beam(), p);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("mean emission with the exact kernel converges under refinement") {
  const SystemParams p{0.002, 200 * pi, 1};
  QuadratureOptions q;
  q.kernel = EmissionKernel::ExactTransmittedB;
  const double a = mean_p_em(1, beam(), p, q);
  q.refinement = 1;
  const double b = mean_p_em(1, beam(), p, q);
  CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("mean emission rejects bad input") {
  const SystemParams p{0.0, 200 * pi, 0};
  const VelocityDistribution unnormalized({0.0, 1.0}, {1.0, 1.0 + 1e-3});
  CHECK_THROWS_AS(mean_p_em(0, unnormalized, p), DomainError);
  CHECK_THROWS_AS(mean_p_em(-1, beam(), p), DomainError);
  QuadratureOptions q;
  q.refinement = -1;
  CHECK_THROWS_AS(mean_p_em(0, beam(), p, q), DomainError);
}

TEST_CASE("no pumping gives the thermal distribution") {
  for (double nb : {0.0, 0.2, 3.0}) {
    const auto d = stationary_distribution({nb, 0.0, 64}, [](int) { return 0.7; });
    double sum = 0.0;
    for (int n = 0; n <= d.max_photons(); ++n) {
      const double thermal = std::pow(nb / (1 + nb), n) / (1 + nb);
      CHECK(d.probabilities[n] == doctest::Approx(thermal).epsilon(1e-12));
      sum += d.probabilities[n];
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    if (nb > 0) CHECK(d.mean() == doctest::Approx(nb).epsilon(1e-9));
  }
}

TEST_CASE("zero emission gives the thermal distribution for any pump") {
  const auto d = stationary_distribution({0.2, 100.0, 64}, [](int) { return 0.0; });
  for (int n = 0; n <= d.max_photons(); ++n) {
    CHECK(d.probabilities[n] == doctest::Approx(std::pow(0.2 / 1.2, n) / 1.2).epsilon(1e-12));
  }
}

TEST_CASE("log-space product equals the direct product") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> em(50);
    for (double& e : em) e = u(rng) * 0.5;
    auto f = [&](int n) { return em[static_cast<std::size_t>(n)]; };
    const double nb = 0.05 + u(rng);
    const double ratio = 5 * u(rng);
    PumpParams pump{nb, ratio, 50};
    PhotonDistribution d;
    try {
      d = stationary_distribution(pump, [&](int n) { return n < 50 ? f(n) : 0.0; });
    } catch (const ConfigurationError&) {
      continue;
    }
    const int n_max = std::min(d.max_photons(), 50);
    const auto direct = testing::direct_product(nb, ratio, d.max_photons(), [&](int n) {
      return n < 50 ? f(n) : 0.0;
    });
    for (int n = 0; n <= n_max; ++n) CHECK(std::abs(d.probabilities[n] - direct[n]) < 1e-10);
  }
}

TEST_CASE("thermal limit is approached monotonically as the pump is reduced") {
  auto em = [](int n) { return 0.4 / (1.0 + 0.1 * n); };
  const double nb = 0.2;
  double prev = 1e300;
  for (double ratio : {10.0, 3.0, 1.0, 0.3, 0.1, 0.0}) {
    const auto d = stationary_distribution({nb, ratio, 64}, em);
    double dist = 0.0;
    for (int n = 0; n <= d.max_photons(); ++n) {
      dist += std::abs(d.probabilities[n] - std::pow(nb / (1 + nb), n) / (1 + nb));
    }
    CHECK(dist < prev);
    prev = dist;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("truncation doubles until the tail is negligible") {
  int calls = 0;
  int largest = -1;
  const auto d = stationary_distribution({0.5, 200.0, 8}, [&](int n) {
    ++calls;
    largest = std::max(largest, n);
    return 0.3;
  });
  CHECK(d.max_photons() > 8);
  CHECK(d.probabilities.back() < 1e-12);
  CHECK(std::abs(d.total() - 1.0) < 1e-12);
  // One call per photon number.
  CHECK(calls == largest + 1);
}

TEST_CASE("a non-decaying product is a configuration error") {
  CHECK_THROWS_AS(stationary_distribution({2.0, 1.0, 64}, [](int n) { return n + 1.0; }),
                  ConfigurationError);
}

TEST_CASE("beam-pumped stationary distribution is stable under truncation doubling") {
  const SystemParams p{0.0, 200 * pi, 0};
  std::vector<double> cache;
  auto em = [&](int n) {
    while (static_cast<int>(cache.size()) <= n) {
      cache.push_back(mean_p_em(static_cast<int>(cache.size()), beam(), p));
    }
    return cache[static_cast<std::size_t>(n)];
  };
  const auto a = stationary_distribution({0.2, 100.0, 64}, em);
  const auto b = stationary_distribution({0.2, 100.0, 128}, em);
  CHECK(std::abs(a.total() - 1.0) < 1e-12);
  CHECK(std::isfinite(a.mean()));
  CHECK(a.mean() == doctest::Approx(b.mean()).epsilon(1e-10));
}

}
