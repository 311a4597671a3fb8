#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cqec/density.hpp"

// Deterministic generators for the five benchmark target states.  Every
// generator is a pure function of its arguments; states come back normalized
// to 1e-12 at the documented dimension.
namespace cqec {

enum class Benchmark { QKAN, QDrift, CFQPE, Regev, TTNCrypto };

struct BenchmarkSpec {
  Benchmark name = Benchmark::QKAN;
  std::uint64_t seed = 0;
};

// Fixed dimension per algorithm: 4, 8, 16, 64, 8.
int benchmark_dimension(Benchmark name);

// Lower-case CLI name ("qkan", "qdrift", "cfqpe", "regev", "ttn").
std::string benchmark_name(Benchmark name);
std::optional<Benchmark> benchmark_from_name(const std::string& name);

// Chebyshev layer amplitudes (T_0..T_3)(0.5) = (1, 0.5, -0.5, -1), normalized.
// The truncated variant zeroes the degree-3 amplitude before normalizing; it
// is the algorithmic output and hence the recovery target.
StateVector qkan_state(bool truncated);

// 3-qubit Heisenberg chain, J = 1, h = 0.5, t = 1, from the uniform
// superposition.  exact=true is dense e^{-iHt}; exact=false samples the
// randomized product formula: 80 gates, each term drawn with probability
// proportional to its coefficient, rotation angle lambda*t/80.
StateVector qdrift_state(std::uint64_t seed, bool exact);

// Raw autocorrelation series f_j = <psi|e^{-iHj dt}|psi>, j = 0..15, for the
// two-site Hubbard surrogate (hopping 1, interaction 2, dt = 0.4, psi
// uniform).  f_0 = 1 by construction.
Vector cfqpe_time_series();

// The series above, normalized into a 16-dimensional state.
StateVector cfqpe_state();

// Discrete Gaussian exp(-pi ||x||^2 / s^2), s = 2, on the 8x8 grid, masked to
// the residue class 2^x1 * 7^x2 = 1 (mod 15), before the Fourier step.
StateVector regev_grid_state();

// The masked Gaussian after the two-dimensional size-8 Fourier transform.
StateVector regev_state();

// 3-qubit layered RY-CNOT-RZ circuit from |000>.  Two blocks; block m applies
// RY(angle(2m, q)) per qubit, CNOT(0->1), CNOT(1->2), then RZ(angle(2m+1, q))
// per qubit, with angle(l, q) = 2 pi frac(sin(seed + 31 l + 7 q) len / 30).
// Valid lengths: 5, 10, 15, 20, 25, 30.
StateVector ttn_state(int plaintext_len, std::uint64_t seed);

// Default target per algorithm: QKAN truncated, qDRIFT sampled at `seed`,
// TTN at plaintext length 15.
StateVector benchmark_state(const BenchmarkSpec& spec);

}  // namespace cqec
