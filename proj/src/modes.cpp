#include "cqec/modes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cqec {

bool ModeSet::contains(long gap) const {
  return std::binary_search(gaps.begin(), gaps.end(), gap);
}

ModeSet mode_set(const DensityMatrix& rho, const HamiltonianSpec& h, double threshold) {
  if (rho.dim() != h.dim()) throw std::invalid_argument("mode_set: dimension mismatch");
  std::set<long> found;
  const auto e = h.energies();
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j) {
      const long gap = e[i] - e[j];
      if (gap != 0 && std::abs(rho.m(i, j)) > threshold) found.insert(gap);
    }
  ModeSet modes;
  modes.gaps.assign(found.begin(), found.end());
  modes.threshold = threshold;
  return modes;
}

ResonantSpan resonant_span(const ModeSet& modes) {
  long g = 0;
  for (long gap : modes.gaps) g = std::gcd(g, std::abs(gap));
  return ResonantSpan{g};
}

bool span_included(const ResonantSpan& target, const ResonantSpan& source) {
  if (source.generator == 0) return target.generator == 0;
  return target.generator % source.generator == 0;
}

RecoverabilityReport check_recoverable(const DensityMatrix& target, const DensityMatrix& noisy,
                                       const HamiltonianSpec& h, double threshold) {
  RecoverabilityReport report;
  const ModeSet target_modes = mode_set(target, h, threshold);
  const ModeSet noisy_modes = mode_set(noisy, h, threshold);
  report.target_span = resonant_span(target_modes);
  report.noisy_span = resonant_span(noisy_modes);
  report.spans_included = span_included(report.target_span, report.noisy_span);

  for (long g : target_modes.gaps)
    if (!noisy_modes.contains(g)) report.missing_gaps.push_back(g);

  Eigen::SelfAdjointEigenSolver<Matrix> es(noisy.m, Eigen::EigenvaluesOnly);
  report.full_rank = es.eigenvalues().minCoeff() > tol::full_rank;
  report.recoverable = report.spans_included && report.full_rank;
  return report;
}

}  // namespace cqec
