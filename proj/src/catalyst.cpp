#include "cqec/catalyst.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cqec/parallel.hpp"

namespace cqec {

int ansatz_param_count(int d, int layers) { return layers * d * (d - 1); }

Vector ansatz_vector(int d, int layers, const RealVector& params) {
  if (d < 2) throw std::invalid_argument("ansatz_vector: dimension must be at least 2");
  if (layers < 1) throw std::invalid_argument("ansatz_vector: need at least one layer");
  if (params.size() != ansatz_param_count(d, layers))
    throw std::invalid_argument("ansatz_vector: parameter count does not match the ansatz");

  Vector v = Vector::Zero(d);
  v(0) = 1.0;
  long k = 0;
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const double theta = params(k), phi = params(k + 1);
        k += 2;
        const double c = std::cos(theta), s = std::sin(theta);
        const complexd e_plus = std::polar(1.0, phi);
        const complexd vi = v(i), vj = v(j);
        v(i) = c * vi - e_plus * s * vj;
        v(j) = std::conj(e_plus) * s * vi + c * vj;
      }
    }
  }
  return v;
}

DensityMatrix ansatz_state(int d, int layers, const RealVector& params) {
  const Vector v = ansatz_vector(d, layers, params);
  return DensityMatrix(v * v.adjoint());
}

double mode_coverage(const DensityMatrix& state, const HamiltonianSpec& h, const ModeSet& target) {
  if (target.gaps.empty()) return 1.0;
  const ModeSet present = mode_set(state, h);
  long covered = 0;
  for (long gap : target.gaps)
    if (present.contains(gap)) ++covered;
  return double(covered) / double(target.gaps.size());
}

double catalyst_cost(const DensityMatrix& state, const HamiltonianSpec& h, const ModeSet& target,
                     const CatalystWeights& weights) {
  const int d = int(state.m.rows());
  const double missing = 1.0 - mode_coverage(state, h, target);
  double cost = -weights.w1 * l1_coherence(state) / (d - 1) + weights.w2 * missing;
  if (weights.w3 != 0.0) {
    const double rho_min = state.m.diagonal().real().minCoeff();
    if (rho_min <= 0.0) return std::numeric_limits<double>::infinity();
    cost -= weights.w3 * std::log(std::max(rho_min, 1e-300));
  }
  return cost;
}

CatalystReport optimize_catalyst(const HamiltonianSpec& h, const ModeSet& target, uint64_t seed,
                                 const CatalystOptions& opts) {
  const int d = h.dim();
  if (d > 16)
    throw std::domain_error(
        "optimize_catalyst: dimension above 16 is unsupported; use the purification pipeline");

  const int n_params = ansatz_param_count(d, opts.layers);
  auto objective = [&](const RealVector& p) {
    return catalyst_cost(ansatz_state(d, opts.layers, p), h, target, opts.weights);
  };

  std::vector<LocalSearchResult> runs(opts.restarts);
  parallel_for_index(opts.restarts, [&](int k) {
    SplitMix64 rng(substream_seed(seed, uint64_t(k)));
    RealVector x0(n_params);
    for (int i = 0; i < n_params; ++i) x0(i) = (rng.uniform() - 0.5) * (M_PI / 2.0);
    LocalSearchOptions search;
    search.max_iterations = opts.max_iterations;
    runs[k] = lbfgs_minimize(objective, x0, search);
  });

  int best = 0;
  for (int k = 1; k < opts.restarts; ++k)
    if (runs[k].value < runs[best].value) best = k;

  // phase gauge: coherence magnitudes are phase-invariant, so report the
  // canonical representative with real non-negative amplitudes
  Vector v = ansatz_vector(d, opts.layers, runs[best].x);
  for (int i = 0; i < d; ++i) v(i) = std::abs(v(i));
  CatalystReport report{DensityMatrix(v * v.adjoint())};
  report.l1 = l1_coherence(report.state);
  report.mode_coverage = mode_coverage(report.state, h, target);
  report.rho_min = report.state.m.diagonal().real().minCoeff();
  report.cost = runs[best].value;
  report.params = runs[best].x;
  report.restart_index = best;
  report.trace = runs[best].trace;
  return report;
}

}  // namespace cqec
