#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "cqec/baselines.hpp"
#include "cqec/noise.hpp"
#include "test_helpers.hpp"

using namespace cqec;

namespace {

// brute-force inverse of the finite-copy bound by scanning n upward
std::int64_t scan_copies(double c, double eps, std::int64_t limit) {
  for (std::int64_t n = 1; n <= limit; ++n)
    if (finite_copy_infidelity(c, double(n)) <= eps) return n;
  return -1;
}

// direct evaluation of the weight-0/weight-1 binomial sum
double binomial_steane(double p) {
  double f = 1.0;
  for (int i = 0; i < 7; ++i) f *= 1.0 - p;
  double w1 = 7.0 * p;
  for (int i = 0; i < 6; ++i) w1 *= 1.0 - p;
  return f + w1;
}

}  // namespace

TEST_CASE("per-qubit rate inverts the n-qubit success probability") {
  CHECK(per_qubit_rate(0.0, 5) == 0.0);
  CHECK(per_qubit_rate(0.37, 1) == doctest::Approx(0.37).epsilon(1e-15));
  // (1 - p_eff)^n must reassemble 1 - p
  const double p_eff = per_qubit_rate(0.1, 4);
  CHECK(std::pow(1.0 - p_eff, 4) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(p_eff == doctest::Approx(0.026000).epsilon(5e-5));
  CHECK_THROWS_AS(per_qubit_rate(1.2, 3), std::invalid_argument);
  CHECK_THROWS_AS(per_qubit_rate(0.1, 0), std::invalid_argument);
}

TEST_CASE("Steane logical fidelity matches the binomial oracle") {
  for (double p : {0.0, 0.01, 0.05, 0.1, 0.3, 0.7, 1.0})
    CHECK(steane_fidelity(p) == doctest::Approx(binomial_steane(p)).epsilon(1e-14));
  CHECK(steane_fidelity(0.0) == 1.0);
}

TEST_CASE("Steane chain reproduces the reference fidelities") {
  const int n_q = 4;
  CHECK(steane_fidelity(per_qubit_rate(0.01, n_q)) == doctest::Approx(1.000).epsilon(1e-3));
  CHECK(steane_fidelity(per_qubit_rate(0.1, n_q)) == doctest::Approx(0.987).epsilon(1e-3));
  CHECK(steane_fidelity(per_qubit_rate(0.2, n_q)) == doctest::Approx(0.949).epsilon(1e-3));
  CHECK(steane_fidelity(per_qubit_rate(0.3, n_q)) == doctest::Approx(0.885).epsilon(1e-3));
}

TEST_CASE("Steane fidelity is monotone decreasing on [0, 1]") {
  double prev = steane_fidelity(0.0);
  for (int k = 1; k <= 100; ++k) {
    const double cur = steane_fidelity(k / 100.0);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}

TEST_CASE("unprotected fidelity is the depolarizing overlap") {
  CHECK(unprotected_fidelity(0.0, 4) == 1.0);
  CHECK(unprotected_fidelity(0.01, 16) == doctest::Approx(0.990625).epsilon(1e-15));
  CHECK(unprotected_fidelity(0.3, 16) == doctest::Approx(1.0 - 0.3 + 0.3 / 16).epsilon(1e-15));
  CHECK_THROWS_AS(unprotected_fidelity(0.1, 1), std::invalid_argument);
}

TEST_CASE("surface-code error clips at the threshold and orders by distance") {
  CHECK(surface_logical_error(0.0, 3) == 0.0);
  CHECK(surface_logical_error(0.01, 3) == 1.0);
  CHECK(surface_logical_error(0.02, 5) == 1.0);
  // below threshold: monotone in p, decreasing in distance
  CHECK(surface_logical_error(0.001, 3) == doctest::Approx(std::pow(0.1, 2)).epsilon(1e-14));
  CHECK(surface_logical_error(0.001, 5) == doctest::Approx(std::pow(0.1, 3)).epsilon(1e-14));
  CHECK(surface_logical_error(0.002, 3) > surface_logical_error(0.001, 3));
  CHECK(surface_logical_error(0.001, 7) < surface_logical_error(0.001, 5));
  CHECK_THROWS_AS(surface_logical_error(0.001, 4), std::invalid_argument);
  CHECK_THROWS_AS(surface_logical_error(0.001, 1), std::invalid_argument);
}

TEST_CASE("finite-copy infidelity shrinks like 1/sqrt(n) and vanishes with C") {
  CHECK(finite_copy_infidelity(0.0, 100.0) == 0.0);
  const double v = finite_copy_infidelity(8.5, 722500.0);
  CHECK(v == doctest::Approx(0.010025).epsilon(1e-4));
  // the sqrt term dominates for large n
  CHECK(finite_copy_infidelity(2700.0, 7.29e10) == doctest::Approx(0.01).epsilon(3e-3));
  CHECK(finite_copy_infidelity(3.0, 400.0) ==
        doctest::Approx(9.0 / 1600.0 + 3.0 / 20.0).epsilon(1e-15));
}

TEST_CASE("copies_for_target agrees with a brute-force scan at small C") {
  for (double c : {0.05, 0.2, 0.9}) {
    for (double eps : {0.3, 0.1, 0.05}) {
      const std::int64_t closed = copies_for_target(c, eps);
      const std::int64_t scanned = scan_copies(c, eps, 5000);
      CHECK(closed == scanned);
    }
  }
}

TEST_CASE("copies_for_target is the boundary copy count") {
  for (double c : {8.5, 42.0, 170.0}) {
    const std::int64_t n = copies_for_target(c, 0.01);
    CHECK(finite_copy_infidelity(c, double(n)) <= 0.01);
    CHECK(finite_copy_infidelity(c, double(n - 1)) > 0.01);
  }
}

TEST_CASE("copies_for_target reproduces the benchmark copy counts within 2%") {
  const double expected[] = {7.2e5, 1.76e7, 2.9e8, 7.3e10};
  const double cs[] = {8.5, 42.0, 170.0, 2700.0};
  for (int i = 0; i < 4; ++i) {
    const double n = double(copies_for_target(cs[i], 0.01));
    CHECK(std::abs(n - expected[i]) / expected[i] < 0.02);
    // converges to (C/eps)^2 when the sqrt term dominates
    const double simple = (cs[i] / 0.01) * (cs[i] / 0.01);
    CHECK(n / simple == doctest::Approx(1.0).epsilon(0.011));
  }
}

TEST_CASE("copy count scales inverse-quadratically in the target") {
  for (double c : {2.0, 170.0}) {
    const double ratio =
        double(copies_for_target(c, 0.001)) / double(copies_for_target(c, 0.01));
    CHECK(ratio >= 95.0);
    CHECK(ratio <= 105.0);
  }
}

TEST_CASE("bound constant evaluates the coherence ratio") {
  // maximally coherent d=4: l1 = 3, every coherence 1/4
  const int d = 4;
  Vector u = Vector::Constant(d, complexd(0.5, 0.0));
  const DensityMatrix rho = pure_density(StateVector{u});
  CHECK(bound_constant(rho, HamiltonianSpec::qubit_sum_z(2)) ==
        doctest::Approx(48.0).epsilon(1e-12));
  CHECK(bound_constant(rho, HamiltonianSpec::linear_ladder(4)) ==
        doctest::Approx(48.0).epsilon(1e-12));
}

TEST_CASE("bound constant uses only gap-carrying coherences in the minimum") {
  // |01> + |10| coherence sits at gap zero for the qubit-sum spectrum, so a
  // state supported there has no admissible denominator
  Vector v = Vector::Zero(4);
  v(1) = v(2) = complexd(1.0 / std::sqrt(2.0), 0.0);
  const DensityMatrix rho = pure_density(StateVector{v});
  CHECK_THROWS_AS(bound_constant(rho, HamiltonianSpec::qubit_sum_z(2)), std::domain_error);
  // the ladder spectrum separates the same pair, so the bound exists
  CHECK(bound_constant(rho, HamiltonianSpec::linear_ladder(4)) ==
        doctest::Approx(4.0 * 1.0 / 0.5).epsilon(1e-12));
}

TEST_CASE("bound constant on the dephased ladder state has a closed form") {
  // maximally coherent d=3 ladder: C(gamma) = 12 e^gamma + 6
  const int d = 3;
  Vector u = Vector::Constant(d, complexd(1.0 / std::sqrt(3.0), 0.0));
  const HamiltonianSpec h = HamiltonianSpec::linear_ladder(d);
  for (double gamma : {0.0, 0.5, 1.5, 3.0}) {
    const DensityMatrix noisy = apply_noise(pure_density(StateVector{u}), h,
                                            NoiseSpec::dephasing(gamma));
    CHECK(bound_constant(noisy, h) ==
          doctest::Approx(12.0 * std::exp(gamma) + 6.0).epsilon(1e-10));
  }
}

TEST_CASE("bound constant ignores global phase") {
  Vector u = Vector::Constant(4, complexd(0.5, 0.0));
  Vector w = u * std::polar(1.0, 1.234);
  const HamiltonianSpec h = HamiltonianSpec::linear_ladder(4);
  CHECK(bound_constant(pure_density(StateVector{u}), h) ==
        doctest::Approx(bound_constant(pure_density(StateVector{w}), h)).epsilon(1e-13));
}

TEST_CASE("diagonal states leave the bound undefined") {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  CHECK_THROWS_AS(bound_constant(DensityMatrix::checked(m), HamiltonianSpec::qubit_sum_z(2)),
                  std::domain_error);
}

TEST_CASE("copy cost is the inverse square of the smallest coherence") {
  CHECK(copy_mu(0.1) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(copy_mu(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  // dephasing by e^{-gamma} multiplies the cost by e^{2 gamma}
  const double gamma = 0.8, v = 0.3;
  CHECK(copy_mu(v * std::exp(-gamma)) ==
        doctest::Approx(copy_mu(v) * std::exp(2.0 * gamma)).epsilon(1e-12));
  CHECK_THROWS_AS(copy_mu(0.0), std::domain_error);
  CHECK_THROWS_AS(copy_mu(-0.2), std::domain_error);
}

TEST_CASE("power-law fit recovers an exact power law") {
  const auto fit = power_law_fit({{1.0, 2.0}, {2.0, 8.0}, {4.0, 32.0}});
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.coefficient == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power-law fit on the benchmark constants") {
  const auto fit = power_law_fit({{4.0, 8.5}, {8.0, 42.0}, {16.0, 170.0}, {64.0, 2700.0}});
  CHECK(std::abs(fit.exponent - 2.06) < 0.05);
  CHECK(std::abs(fit.coefficient - 0.53) < 0.1);
  CHECK(fit.r_squared >= 0.99);
  // pinned to more digits so regressions surface immediately
  CHECK(fit.exponent == doctest::Approx(2.0631).epsilon(1e-3));
  CHECK(fit.r_squared == doctest::Approx(0.99898).epsilon(1e-4));
}

TEST_CASE("power-law fit validates its inputs") {
  CHECK_THROWS_AS(power_law_fit({{2.0, 5.0}}), std::invalid_argument);
  CHECK_THROWS_AS(power_law_fit({{2.0, 5.0}, {2.0, 9.0}}), std::invalid_argument);
  CHECK_THROWS_AS(power_law_fit({{2.0, 5.0}, {-3.0, 9.0}}), std::invalid_argument);
  CHECK_THROWS_AS(power_law_fit({{2.0, 0.0}, {3.0, 9.0}}), std::invalid_argument);
}

TEST_CASE("bound inputs struct forwards to the copy-count solver") {
  const BoundInputs in{8.5, 0.01};
  CHECK(copies_for_target(in) == copies_for_target(8.5, 0.01));
}
