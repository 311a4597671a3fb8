#include "cqec/purification.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace cqec {

DepolForm::DepolForm(double a_, double b_, StateVector target_)
    : a(a_), b(b_), d(int(target_.amps.size())), target(std::move(target_)) {
  if (a < 0.0 || b < 0.0) throw std::invalid_argument("DepolForm: weights must be nonnegative");
  if (std::abs(a + b - 1.0) > tol::trace)
    throw std::invalid_argument("DepolForm: weights must sum to one");
}

DensityMatrix DepolForm::densify() const {
  const Matrix pure = target.amps * target.amps.adjoint();
  return DensityMatrix(a * pure + (b / d) * Matrix::Identity(d, d));
}

double DepolForm::target_fidelity() const { return a + b / d; }

DensityMatrix swap_gadget(const DensityMatrix& rho) {
  const Matrix squared = rho.m * rho.m;
  const double norm = 1.0 + squared.trace().real();
  return DensityMatrix((rho.m + squared) / norm);
}

DepolForm swap_gadget(const DepolForm& form) {
  const double a = form.a, b = form.b, d = form.d;
  const double tr_sq = a * a + 2.0 * a * b / d + b * b / d;
  const double norm = 1.0 + tr_sq;
  return DepolForm((a + a * a + 2.0 * a * b / d) / norm, (b + b * b / d) / norm, form.target);
}

DensityMatrix recursive_purify(const DensityMatrix& rho, int k) {
  if (k < 0) throw std::invalid_argument("recursive_purify: rounds must be nonnegative");
  DensityMatrix out = rho;
  for (int i = 0; i < k; ++i) out = swap_gadget(out);
  return out;
}

DepolForm recursive_purify(const DepolForm& form, int k) {
  if (k < 0) throw std::invalid_argument("recursive_purify: rounds must be nonnegative");
  DepolForm out = form;
  for (int i = 0; i < k; ++i) out = swap_gadget(out);
  return out;
}

DensityMatrix covariant_swap_gadget(const DensityMatrix& rho, const HamiltonianSpec& h) {
  const int d = int(rho.m.rows());
  if (d != h.dim()) throw std::invalid_argument("covariant_swap_gadget: dimension mismatch");

  std::map<long, std::vector<int>> sectors;
  for (int i = 0; i < d; ++i) sectors[h.energy(i)].push_back(i);

  // gadget formula per sector block, inter-sector blocks carried through,
  // one global trace renormalization at the end
  Matrix out = rho.m;
  for (const auto& [energy, idx] : sectors) {
    const int m = int(idx.size());
    Matrix block(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) block(r, c) = rho.m(idx[r], idx[c]);
    const Matrix squared = block * block;
    const Matrix purified = (block + squared) / (1.0 + squared.trace().real());
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) out(idx[r], idx[c]) = purified(r, c);
  }
  return DensityMatrix(out / out.trace().real());
}

double cpmg_gamma(double gamma, int n_pulses) {
  if (gamma < 0.0) throw std::invalid_argument("cpmg_gamma: rate must be nonnegative");
  if (n_pulses < 0) throw std::invalid_argument("cpmg_gamma: pulse count must be nonnegative");
  return gamma / (n_pulses + 1);
}

double twirl_avg_fidelity(double gamma_eff, int d) {
  double sum = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) sum += std::exp(-gamma_eff * std::abs(i - j));
  return sum / (double(d) * d);
}

double twirl_p_eff(double gamma_eff, int d) {
  const double f_avg = twirl_avg_fidelity(gamma_eff, d);
  return 1.0 - (d * f_avg - 1.0) / (d - 1.0);
}

PipelineReport run_pipeline(const StateVector& target, double gamma, const PipelineConfig& cfg) {
  const int d = int(target.amps.size());
  PipelineReport report;
  report.gamma_eff = cpmg_gamma(gamma, cfg.cpmg_n);
  report.copies = 1L << cfg.swap_rounds;

  if (cfg.p_eff_override || cfg.twirl == TwirlMode::AnalyticExact) {
    report.p_eff = cfg.p_eff_override ? *cfg.p_eff_override : twirl_p_eff(report.gamma_eff, d);
    report.twirled = true;
    const DepolForm purified =
        recursive_purify(DepolForm(1.0 - report.p_eff, report.p_eff, target), cfg.swap_rounds);
    report.f_cat = purified.target_fidelity();
    return report;
  }

  // twirl off: purify the dephased state directly on the ladder spectrum
  const auto h = HamiltonianSpec::linear_ladder(d);
  const DensityMatrix dephased = dephase(pure_density(target), h, report.gamma_eff);
  report.f_cat = fidelity_to_pure(target, recursive_purify(dephased, cfg.swap_rounds));
  return report;
}

}  // namespace cqec
