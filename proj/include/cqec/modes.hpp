#pragma once

#include <vector>

#include "cqec/density.hpp"

// Mode-of-asymmetry bookkeeping: which energy gaps carry coherence, the
// integer lattice those gaps generate, and the recoverability verdict that
// compares a noisy state against its clean target.
namespace cqec {

// Sorted distinct nonzero energy gaps E_i - E_j over populated coherences.
struct ModeSet {
  std::vector<long> gaps;
  double threshold = tol::mode_threshold;

  bool contains(long gap) const;
  bool empty() const { return gaps.empty(); }
};

// The subgroup of the integers generated by a gap set, represented by its
// nonnegative generator g (0 for the trivial span).
struct ResonantSpan {
  long generator = 0;
};

// Gaps with |rho_ij| > threshold for basis pairs at energy distance != 0.
ModeSet mode_set(const DensityMatrix& rho, const HamiltonianSpec& h,
                 double threshold = tol::mode_threshold);

// gcd of the absolute gaps.
ResonantSpan resonant_span(const ModeSet& modes);

// Whether span(target) is a sublattice of span(source).
bool span_included(const ResonantSpan& target, const ResonantSpan& source);

struct RecoverabilityReport {
  bool recoverable = false;
  bool spans_included = false;
  bool full_rank = false;
  // target gaps absent from the noisy state
  std::vector<long> missing_gaps;
  ResonantSpan target_span;
  ResonantSpan noisy_span;
};

// Recoverability verdict: span inclusion plus full rank of the noisy state.
RecoverabilityReport check_recoverable(const DensityMatrix& target, const DensityMatrix& noisy,
                                       const HamiltonianSpec& h,
                                       double threshold = tol::mode_threshold);

}  // namespace cqec
