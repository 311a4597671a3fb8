#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "cqec/bench_states.hpp"
#include "cqec/recovery.hpp"
#include "test_helpers.hpp"

using namespace cqec;

namespace {

// maximally coherent d-level target
StateVector coherent_target(int d) {
  Vector v = Vector::Constant(d, complexd(1.0 / std::sqrt(double(d)), 0.0));
  return StateVector{v};
}

// independent re-derivation of one recovery pass: dense joint state, full
// circuit unitary, partial traces
PassOutcome dense_pass_oracle(const StateVector& target, const DensityMatrix& noisy,
                              const DensityMatrix& catalyst, const CircuitShape& shape,
                              const RealVector& theta) {
  const int d_anc = 1 << shape.n_ancilla;
  Matrix anc = Matrix::Zero(d_anc, d_anc);
  anc(0, 0) = 1.0;
  const Matrix joint = tensor(tensor(noisy.m, catalyst.m), anc);
  std::vector<double> angles(theta.data(), theta.data() + theta.size());
  const ECCircuit circuit = build_layered(shape.n_system, shape.n_catalyst, shape.n_ancilla,
                                          angles, shape.repetitions);
  const Matrix u = unitary_matrix(circuit);
  const Matrix evolved = u * joint * u.adjoint();
  const std::vector<int> dims = {noisy.dim(), catalyst.dim(), d_anc};
  PassOutcome out;
  out.system_out = partial_trace(DensityMatrix::checked(evolved), dims, {0});
  out.catalyst_out = partial_trace(DensityMatrix::checked(evolved), dims, {1});
  out.f_system = fidelity_to_pure(target, out.system_out);
  out.f_catalyst = uhlmann_fidelity(catalyst, out.catalyst_out);
  return out;
}

RealVector random_theta(int count, uint64_t seed) {
  SplitMix64 rng(seed);
  RealVector th(count);
  for (int i = 0; i < count; ++i) th(i) = rng.uniform() * 2.0 * std::numbers::pi;
  return th;
}

}  // namespace

TEST_CASE("objective blends system and catalyst fidelity") {
  CHECK(objective(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(objective(0.0, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(objective(1.0, 0.0) == doctest::Approx(0.7).epsilon(1e-15));
  RecoveryObjectiveWeights w;
  w.alpha = 0.5;
  CHECK(objective(0.4, 0.8, w) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("hard penalty form replaces the blend") {
  RecoveryObjectiveWeights w;
  w.hard_penalty = 100.0;
  CHECK(objective(0.9, 1.0, w) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(objective(0.9, 0.99, w) == doctest::Approx(0.9 - 1.0).epsilon(1e-12));
  // spending the catalyst is never worth a bounded fidelity gain
  CHECK(objective(1.0, 0.9, w) < objective(0.25, 1.0, w));
}

TEST_CASE("objective validates the weight range") {
  RecoveryObjectiveWeights w;
  w.alpha = -0.1;
  CHECK_THROWS_AS(objective(0.5, 0.5, w), std::invalid_argument);
  w.alpha = 1.2;
  CHECK_THROWS_AS(objective(0.5, 0.5, w), std::invalid_argument);
}

TEST_CASE("shapes mirror the system register and append two ancillas") {
  const CircuitShape s4 = shape_for(4);
  CHECK(s4.n_system == 2);
  CHECK(s4.n_catalyst == 2);
  CHECK(s4.n_ancilla == 2);
  CHECK(s4.repetitions == 2);
  CHECK(shape_for(4, 1).repetitions == 1);
  const CircuitShape s16 = shape_for(16, 3);
  CHECK(s16.n_system == 4);
  CHECK(s16.repetitions == 3);
  CHECK_THROWS_AS(shape_for(6), std::invalid_argument);
  CHECK_THROWS_AS(shape_for(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(shape_for(4, 4), std::invalid_argument);
}

TEST_CASE("zero angles leave every register untouched") {
  const StateVector target = coherent_target(4);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(2);
  const DensityMatrix noisy = apply_noise(target, h, NoiseSpec::dephasing(1.0));
  const DensityMatrix catalyst = pure_density(coherent_target(4));
  const CircuitShape shape = shape_for(4);
  const int p = layered_param_count(2, 2, 2, shape.repetitions);
  const PassOutcome out = recovery_pass(target, noisy, catalyst, shape, RealVector::Zero(p));
  CHECK((out.system_out.m - noisy.m).norm() < 1e-13);
  CHECK(out.f_catalyst == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(out.f_system == doctest::Approx(fidelity_to_pure(target, noisy)).epsilon(1e-12));
}

TEST_CASE("recovery pass agrees with the dense full-unitary oracle") {
  const StateVector target = qkan_state(true);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(2);
  const DensityMatrix noisy = apply_noise(target, h, NoiseSpec::dephasing(2.0));
  const DensityMatrix catalyst = pure_density(coherent_target(4));
  for (int depth : {1, 2}) {
    const CircuitShape shape = shape_for(4, depth);
    const int p = layered_param_count(2, 2, 2, depth);
    const RealVector theta = random_theta(p, 91u + depth);
    const PassOutcome fast = recovery_pass(target, noisy, catalyst, shape, theta);
    const PassOutcome slow = dense_pass_oracle(target, noisy, catalyst, shape, theta);
    CHECK(fast.f_system == doctest::Approx(slow.f_system).epsilon(1e-12));
    CHECK(fast.f_catalyst == doctest::Approx(slow.f_catalyst).epsilon(1e-12));
    CHECK((fast.system_out.m - slow.system_out.m).norm() < 1e-12);
    CHECK((fast.catalyst_out.m - slow.catalyst_out.m).norm() < 1e-12);
  }
}

TEST_CASE("large joints use the ensemble path and match dense conjugation") {
  // d=16 puts the joint at dimension 1024, beyond the dense threshold
  const StateVector target = cfqpe_state();
  const DensityMatrix noisy = depolarize(pure_density(target), 0.3);
  const DensityMatrix catalyst = pure_density(coherent_target(16));
  const CircuitShape shape = shape_for(16, 1);
  const int p = layered_param_count(4, 4, 2, 1);
  const RealVector theta = random_theta(p, 4242u);
  const PassOutcome fast = recovery_pass(target, noisy, catalyst, shape, theta);
  const PassOutcome slow = dense_pass_oracle(target, noisy, catalyst, shape, theta);
  CHECK(fast.f_system == doctest::Approx(slow.f_system).epsilon(1e-12));
  CHECK(fast.f_catalyst == doctest::Approx(slow.f_catalyst).epsilon(1e-12));
  CHECK((fast.system_out.m - slow.system_out.m).norm() < 1e-11);
}

TEST_CASE("f_before is the zero-angle pass, bit for bit") {
  const StateVector target = coherent_target(4);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(2);
  const DensityMatrix noisy = apply_noise(target, h, NoiseSpec::depolarizing(0.3));
  const DensityMatrix catalyst = pure_density(coherent_target(4));
  const CircuitShape shape = shape_for(4);
  RecoveryOptions opts;
  opts.lhs_samples = 12;
  opts.refine_top = 2;
  opts.max_iterations = 15;
  const RecoveryResult res = optimize_parameters(target, noisy, catalyst, shape, 5u, opts);
  const int p = layered_param_count(2, 2, 2, shape.repetitions);
  const PassOutcome zero = recovery_pass(target, noisy, catalyst, shape, RealVector::Zero(p));
  CHECK(res.f_before == zero.f_system);
}

TEST_CASE("optimizer output is self-consistent and within budget") {
  const StateVector target = coherent_target(4);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(2);
  const DensityMatrix noisy = apply_noise(target, h, NoiseSpec::depolarizing(0.3));
  const DensityMatrix catalyst = pure_density(coherent_target(4));
  const CircuitShape shape = shape_for(4);
  RecoveryOptions opts;
  opts.lhs_samples = 20;
  opts.refine_top = 3;
  opts.max_iterations = 40;
  const RecoveryResult res = optimize_parameters(target, noisy, catalyst, shape, 7u, opts);
  CHECK(res.theta.size() == layered_param_count(2, 2, 2, shape.repetitions));
  CHECK(res.iterations <= opts.max_iterations);
  CHECK(res.objective_value ==
        doctest::Approx(objective(res.f_after, res.f_catalyst, opts.weights)).epsilon(1e-12));
  // the winning angles reproduce the reported fidelities
  const PassOutcome replay = recovery_pass(target, noisy, catalyst, shape, res.theta);
  CHECK(replay.f_system == res.f_after);
  CHECK(replay.f_catalyst == res.f_catalyst);
  // the identity candidate makes losing to "do nothing" impossible
  CHECK(res.f_after >= res.f_before);
  CHECK(res.objective_value >=
        objective(res.f_before, 1.0, opts.weights) - 1e-9);
}

TEST_CASE("optimizer is deterministic in the seed") {
  const StateVector target = coherent_target(4);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(2);
  const DensityMatrix noisy = apply_noise(target, h, NoiseSpec::depolarizing(0.3));
  const DensityMatrix catalyst = pure_density(coherent_target(4));
  const CircuitShape shape = shape_for(4);
  RecoveryOptions opts;
  opts.lhs_samples = 20;
  opts.refine_top = 2;
  opts.max_iterations = 30;
  const RecoveryResult a = optimize_parameters(target, noisy, catalyst, shape, 123u, opts);
  const RecoveryResult b = optimize_parameters(target, noisy, catalyst, shape, 123u, opts);
  CHECK(a.f_after == b.f_after);
  CHECK(a.f_catalyst == b.f_catalyst);
  CHECK(a.objective_value == b.objective_value);
  CHECK((a.theta - b.theta).norm() == 0.0);
  // distinct seeds draw distinct candidate pools; results may coincide only
  // when both collapse onto the shared deterministic identity floor
  const RecoveryResult c = optimize_parameters(target, noisy, catalyst, shape, 124u, opts);
  CHECK(((a.theta - c.theta).norm() > 0.0 || a.theta.norm() == 0.0));
}

TEST_CASE("protocol flags the recoverability verdict per channel") {
  const StateVector target = coherent_target(4);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(2);
  ProtocolConfig cfg;
  cfg.recovery.lhs_samples = 10;
  cfg.recovery.refine_top = 1;
  cfg.recovery.max_iterations = 10;
  cfg.catalyst_source = CatalystSource::Uniform;
  // depolarizing keeps every mode and full rank
  CHECK(run_protocol(target, h, NoiseSpec::depolarizing(0.3), 1u, cfg).recoverable);
  // killing one gap breaks span inclusion
  CHECK_FALSE(run_protocol(target, h, NoiseSpec::selective_dephasing(2), 1u, cfg).recoverable);
}

TEST_CASE("depolarized before-fidelity matches the closed form") {
  const StateVector target = cfqpe_state();
  const HamiltonianSpec h = HamiltonianSpec::linear_ladder(16);
  ProtocolConfig cfg;
  cfg.recovery.lhs_samples = 4;
  cfg.recovery.refine_top = 1;
  cfg.recovery.max_iterations = 4;
  cfg.catalyst_source = CatalystSource::Uniform;
  const RecoveryResult res = run_protocol(target, h, NoiseSpec::depolarizing(0.3), 3u, cfg);
  CHECK(res.f_before == doctest::Approx(1.0 - 0.3 + 0.3 / 16.0).epsilon(1e-12));
  CHECK(res.recoverable);
}

TEST_CASE("threshold grid is zero plus thirty log-spaced points") {
  const std::vector<double> grid = threshold_grid();
  REQUIRE(grid.size() == 31);
  CHECK(grid[0] == 0.0);
  CHECK(grid[1] == doctest::Approx(1e-10).epsilon(1e-12));
  CHECK(grid[30] == doctest::Approx(0.32).epsilon(1e-12));
  for (size_t i = 2; i < grid.size(); ++i) {
    const double ratio = grid[i] / grid[i - 1];
    CHECK(ratio == doctest::Approx(grid[2] / grid[1]).epsilon(1e-9));
  }
}

TEST_CASE("threshold sweep reports the coherence scale of each row") {
  RecoveryOptions opts;
  opts.lhs_samples = 8;
  opts.refine_top = 1;
  opts.max_iterations = 8;
  const std::vector<double> grid = {0.0, 1e-10, 0.32};
  const auto rows = threshold_sweep(42u, opts, grid);
  REQUIRE(rows.size() == 3);
  // twelve off-diagonals of magnitude epsilon at d=4
  CHECK(rows[0].l1 == 0.0);
  CHECK(rows[1].l1 == doctest::Approx(1.2e-9).epsilon(1e-12));
  // 0.32 > 1/d loses positivity; the PSD re-projection collapses the row
  // onto the (rank-deficient) pure target, so l1 caps at 3 and the rank
  // test fails
  CHECK(rows[2].l1 == doctest::Approx(3.0).epsilon(1e-9));
  CHECK_FALSE(rows[0].recoverable);
  CHECK(rows[1].recoverable);
  CHECK_FALSE(rows[2].recoverable);
  CHECK(rows[2].f_before == doctest::Approx(1.0).epsilon(1e-9));
  // epsilon = 0 wipes the coherence, so before-fidelity is the diagonal term
  CHECK(rows[0].f_before == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(rows[0].qfi == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rows[1].qfi > 0.0);
}

TEST_CASE("durability loop records every cycle and is seed-deterministic") {
  const StateVector target = coherent_target(4);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(2);
  ProtocolConfig cfg;
  cfg.recovery.lhs_samples = 10;
  cfg.recovery.refine_top = 1;
  cfg.recovery.max_iterations = 12;
  cfg.catalyst_source = CatalystSource::Uniform;
  const NoiseSpec noise = NoiseSpec::dephasing(0.5);
  const DurabilityReport rep = durability_loop(target, h, noise, 12, 99u, cfg);
  REQUIRE(rep.cycles.size() == 12);
  for (const auto& rec : rep.cycles) {
    CHECK(rec.f_rec >= 0.0);
    CHECK(rec.f_rec <= 1.0 + 1e-12);
    CHECK(rec.catalyst_deviation >= 0.0);
  }
  double mean = 0.0, max_dev = 0.0, max_gap = 0.0;
  for (const auto& rec : rep.cycles) {
    mean += rec.f_rec;
    max_dev = std::max(max_dev, rec.catalyst_deviation);
    max_gap = std::max(max_gap, std::abs(rec.f_rec - rep.cycles[0].f_rec));
  }
  CHECK(rep.mean_f == doctest::Approx(mean / 12.0).epsilon(1e-12));
  CHECK(rep.max_deviation == doctest::Approx(max_dev).epsilon(1e-12));
  CHECK(rep.max_f_gap == doctest::Approx(max_gap).epsilon(1e-12));
  const DurabilityReport again = durability_loop(target, h, noise, 12, 99u, cfg);
  CHECK(rep.mean_f == again.mean_f);
  CHECK(rep.max_deviation == again.max_deviation);
}

TEST_CASE("durability with zero noise holds fidelity at one") {
  const StateVector target = coherent_target(2);
  const HamiltonianSpec h = HamiltonianSpec::qubit_sum_z(1);
  ProtocolConfig cfg;
  cfg.recovery.lhs_samples = 6;
  cfg.recovery.refine_top = 1;
  cfg.recovery.max_iterations = 10;
  cfg.catalyst_source = CatalystSource::Uniform;
  const DurabilityReport rep = durability_loop(target, h, NoiseSpec::none(), 5, 3u, cfg);
  for (const auto& rec : rep.cycles) CHECK(rec.f_rec >= 0.999);
}
