// Variational catalyst preparation: a layered product of two-level rotations
// G_ij(theta, phi) drives |0> toward a broadly coherent, mode-covering state.
//
// Parameter layout: for layer l = 0..L-1 and level pairs (i, j), i < j, in
// lexicographic order, two consecutive entries (theta, phi).  Rotations are
// applied to the state in that same order.
#pragma once

#include <cstdint>
#include <vector>

#include "cqec/density.hpp"
#include "cqec/modes.hpp"
#include "cqec/optim.hpp"

namespace cqec {

struct CatalystWeights {
  double w1 = 1.0;   // coherence reward
  double w2 = 10.0;  // missing-mode penalty
  double w3 = 5.0;   // population-balance barrier
};

struct CatalystOptions {
  int layers = 3;
  int restarts = 5;
  int max_iterations = 150;
  CatalystWeights weights;
};

struct CatalystReport {
  DensityMatrix state;
  double l1 = 0.0;
  double mode_coverage = 0.0;  // covered target gaps / target gaps
  double rho_min = 0.0;        // smallest diagonal entry
  double cost = 0.0;
  RealVector params;
  int restart_index = 0;
  std::vector<double> trace;   // accepted cost values of the winning restart
};

// 2 * layers * d(d-1)/2
int ansatz_param_count(int d, int layers);

// U(params) |0> as a statevector
Vector ansatz_vector(int d, int layers, const RealVector& params);

// U(params) |0><0| U^dagger
DensityMatrix ansatz_state(int d, int layers, const RealVector& params);

// fraction of target gaps present in the state's mode set (1 if target empty)
double mode_coverage(const DensityMatrix& state, const HamiltonianSpec& h, const ModeSet& target);

// -w1 * l1/(d-1) + w2 * missing_fraction - w3 * log(rho_min), rho_min = 0 -> +inf
double catalyst_cost(const DensityMatrix& state, const HamiltonianSpec& h, const ModeSet& target,
                     const CatalystWeights& weights = {});

// budgeted local search with seeded restarts; best cost wins, ties by index
CatalystReport optimize_catalyst(const HamiltonianSpec& h, const ModeSet& target, uint64_t seed,
                                 const CatalystOptions& opts = {});

}  // namespace cqec
