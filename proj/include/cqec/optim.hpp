// Deterministic optimization toolkit: splitmix64 streams, Latin-hypercube
// seeding, Nelder-Mead simplex refinement, and L-BFGS local search with
// central-difference gradients.
//
// Substream scheme: substream_seed(master, k) is the (k+1)-th output of the
// splitmix64 stream seeded with master, so restart k of any experiment is
// reproducible in isolation.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cqec/types.hpp"

namespace cqec {

// Sebastiano Vigna's splitmix64; tiny, splittable, passes BigCrush
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform double in [0, 1)
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, bound)
  uint64_t below(uint64_t bound) { return next() % bound; }
};

uint64_t substream_seed(uint64_t master, uint64_t index);

// n points in [lo, hi)^dims with exactly one point per axis-aligned stratum
std::vector<RealVector> latin_hypercube(int samples, int dims, double lo, double hi,
                                        uint64_t seed);

using Objective = std::function<double(const RealVector&)>;

struct SimplexOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double spread_tol = 1e-10;
  int max_iterations = 120;
  double initial_step = 0.25;  // edge length of the seed simplex
  // optional explicit seed simplex (dim+1 vertices); when set, x0 and
  // initial_step are ignored and the search starts from these vertices
  std::vector<RealVector> initial_simplex;
};

struct SimplexResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;          // objective spread fell under spread_tol
  std::vector<double> trace;       // current best per iteration, nonincreasing
};

SimplexResult nelder_mead(const Objective& f, const RealVector& x0,
                          const SimplexOptions& opts = {});

struct LocalSearchOptions {
  int max_iterations = 200;
  double grad_step = 1e-6;   // central-difference step
  double grad_tol = 1e-9;    // infinity-norm stopping threshold
  int memory = 8;            // L-BFGS curvature pairs kept
};

struct LocalSearchResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;          // gradient norm under grad_tol
  std::vector<double> trace;       // accepted objective values, nonincreasing
};

RealVector central_difference_gradient(const Objective& f, const RealVector& x, double step);

LocalSearchResult lbfgs_minimize(const Objective& f, const RealVector& x0,
                                 const LocalSearchOptions& opts = {});

}  // namespace cqec
