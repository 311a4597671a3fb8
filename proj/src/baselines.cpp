#include "cqec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cqec {

double per_qubit_rate(double p, int n_qubits) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("per_qubit_rate: p outside [0, 1]");
  if (n_qubits < 1) throw std::invalid_argument("per_qubit_rate: need at least one qubit");
  return 1.0 - std::pow(1.0 - p, 1.0 / n_qubits);
}

double steane_fidelity(double p_eff) {
  if (p_eff < 0.0 || p_eff > 1.0) throw std::invalid_argument("steane_fidelity: p outside [0, 1]");
  const double q = 1.0 - p_eff;
  return std::pow(q, 7) + 7.0 * p_eff * std::pow(q, 6);
}

double unprotected_fidelity(double p, int d) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("unprotected_fidelity: p outside [0, 1]");
  if (d < 2) throw std::invalid_argument("unprotected_fidelity: dimension must be >= 2");
  return 1.0 - p + p / d;
}

double surface_logical_error(double p_eff, int distance) {
  if (p_eff < 0.0 || p_eff > 1.0)
    throw std::invalid_argument("surface_logical_error: p outside [0, 1]");
  if (distance < 3 || distance % 2 == 0)
    throw std::invalid_argument("surface_logical_error: distance must be odd and >= 3");
  constexpr double p_th = 0.01;
  const double raw = std::pow(p_eff / p_th, 0.5 * (distance + 1));
  return std::clamp(raw, 0.0, 1.0);
}

double finite_copy_infidelity(double c, double n) {
  if (c < 0.0) throw std::invalid_argument("finite_copy_infidelity: C must be nonnegative");
  if (n < 1.0) throw std::invalid_argument("finite_copy_infidelity: need at least one copy");
  return c * c / (4.0 * n) + c / std::sqrt(n);
}

std::int64_t copies_for_target(double c, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("copies_for_target: target must lie in (0, 1)");
  if (c < 0.0) throw std::invalid_argument("copies_for_target: C must be nonnegative");
  if (c == 0.0) return 1;
  // solve (C^2/4) x^2 + C x = eps for x = 1/sqrt(n): x = (2/C)(sqrt(1+eps) - 1)
  const double x = 2.0 * (std::sqrt(1.0 + eps) - 1.0) / c;
  const double n = 1.0 / (x * x);
  double rounded = std::ceil(n);
  // guard against ceil landing one step above the true boundary
  if (rounded > 1.0 && finite_copy_infidelity(c, rounded - 1.0) <= eps) rounded -= 1.0;
  return static_cast<std::int64_t>(std::max(rounded, 1.0));
}

std::int64_t copies_for_target(const BoundInputs& in) {
  return copies_for_target(in.c, in.target_infidelity);
}

double bound_constant(const DensityMatrix& rho0, const HamiltonianSpec& h, double threshold) {
  const int d = rho0.dim();
  const std::vector<long> energies = h.energies();
  if (static_cast<int>(energies.size()) != d)
    throw std::invalid_argument("bound_constant: dimension mismatch");
  double l1 = 0.0;
  double min_coh = -1.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const double mag = std::abs(rho0.m(i, j));
      l1 += mag;
      if (mag > threshold && energies[i] != energies[j])
        min_coh = min_coh < 0.0 ? mag : std::min(min_coh, mag);
    }
  }
  if (min_coh <= 0.0)
    throw std::domain_error("bound_constant: no gap-carrying coherence above threshold");
  return d * l1 / min_coh;
}

double copy_mu(double rho_min_offdiag) {
  if (!(rho_min_offdiag > 0.0)) throw std::domain_error("copy_mu: needs a positive coherence");
  return 1.0 / (rho_min_offdiag * rho_min_offdiag);
}

PowerLawFit power_law_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("power_law_fit: need at least two points");
  const int n = static_cast<int>(points.size());
  RealVector lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(points[i].first > 0.0 && points[i].second > 0.0))
      throw std::invalid_argument("power_law_fit: points must be positive");
    lx(i) = std::log(points[i].first);
    ly(i) = std::log(points[i].second);
  }
  const double mx = lx.mean(), my = ly.mean();
  const double sxx = (lx.array() - mx).square().sum();
  const double sxy = ((lx.array() - mx) * (ly.array() - my)).sum();
  if (sxx <= 0.0) throw std::invalid_argument("power_law_fit: abscissae are degenerate");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.coefficient = std::exp(my - fit.exponent * mx);
  const double sst = (ly.array() - my).square().sum();
  const double ssr = (ly.array() - my - fit.exponent * (lx.array() - mx)).square().sum();
  fit.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
  return fit;
}

}  // namespace cqec
