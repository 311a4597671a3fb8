#include "cqec/noise.hpp"

#include <bit>
#include <cmath>

namespace cqec {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Clamps negative eigenvalues to zero and restores unit trace.  Returns
// whether anything was clamped.
bool project_psd(Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.eigenvalues().minCoeff() >= 0.0) return false;
  RealVector clamped = es.eigenvalues().cwiseMax(0.0);
  clamped /= clamped.sum();
  m = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().adjoint();
  m = 0.5 * (m + m.adjoint());
  return true;
}

}  // namespace

DensityMatrix dephase(const DensityMatrix& rho, const HamiltonianSpec& h, double gamma) {
  require(rho.dim() == h.dim(), "dephase: dimension mismatch");
  require(gamma >= 0.0, "dephase: gamma must be nonnegative");
  const auto e = h.energies();
  Matrix out = rho.m;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) out(i, j) *= std::exp(-gamma * std::abs(double(e[i] - e[j])));
  return DensityMatrix(std::move(out));
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  require(p >= 0.0 && p <= 1.0, "depolarize: p must lie in [0, 1]");
  const int d = rho.dim();
  return DensityMatrix((1.0 - p) * rho.m + p / d * Matrix::Identity(d, d));
}

DensityMatrix amplitude_damp(const DensityMatrix& rho, double gamma_ad) {
  require(gamma_ad >= 0.0 && gamma_ad <= 1.0, "amplitude_damp: gamma must lie in [0, 1]");
  const int d = rho.dim();
  require(std::has_single_bit(static_cast<unsigned>(d)),
          "amplitude_damp: dimension must be a power of two");
  const int n = std::countr_zero(static_cast<unsigned>(d));
  const double keep = std::sqrt(1.0 - gamma_ad);

  Matrix out = rho.m;
  for (int q = 0; q < n; ++q) {
    const long bit = 1L << q;
    Matrix next = Matrix::Zero(d, d);
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j) {
        const bool bi = i & bit, bj = j & bit;
        // E_0 scales |1> amplitudes, E_1 maps |1><1| populations down to |0><0|
        const double f0 = (bi ? keep : 1.0) * (bj ? keep : 1.0);
        next(i, j) += f0 * out(i, j);
        if (bi && bj) next(i & ~bit, j & ~bit) += gamma_ad * out(i, j);
      }
    out = std::move(next);
  }
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

DensityMatrix combined_noise(const DensityMatrix& rho, const HamiltonianSpec& h, double gamma,
                             double p, double gamma_ad) {
  return amplitude_damp(depolarize(dephase(rho, h, gamma), p), gamma_ad);
}

DensityMatrix epsilon_family(const StateVector& target, double epsilon, bool* projected) {
  const int d = target.dim();
  require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon_family: epsilon must lie in [0, 1]");
  for (int i = 0; i < d; ++i)
    require(std::abs(std::abs(target.amps(i)) - 1.0 / std::sqrt(double(d))) < 1e-9,
            "epsilon_family: target must be maximally coherent");

  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) {
        m(i, j) = std::norm(target.amps(i));
      } else {
        const complexd coh = target.amps(i) * std::conj(target.amps(j));
        m(i, j) = epsilon * coh / std::abs(coh);
      }
    }
  bool clamped = false;
  if (epsilon > 1.0 / d + 1e-15) clamped = project_psd(m);
  if (projected) *projected = clamped;
  return DensityMatrix(std::move(m));
}

SelectiveDephaseResult selective_dephase(const DensityMatrix& rho, const HamiltonianSpec& h,
                                         long gap) {
  require(rho.dim() == h.dim(), "selective_dephase: dimension mismatch");
  require(gap != 0, "selective_dephase: gap must be nonzero");
  const auto e = h.energies();
  Matrix m = rho.m;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (std::abs(e[i] - e[j]) == std::abs(gap)) m(i, j) = 0.0;

  SelectiveDephaseResult result;
  result.psd_projected = project_psd(m);
  result.state = DensityMatrix(std::move(m));
  return result;
}

double predicted_dephased_fidelity(double tr_diag_sq, double gamma) {
  if (tr_diag_sq < 0.0 || tr_diag_sq > 1.0)
    throw std::invalid_argument("predicted_dephased_fidelity: Tr[rho_diag^2] outside [0, 1]");
  return tr_diag_sq + std::exp(-gamma) * (1.0 - tr_diag_sq);
}

NoiseSpec NoiseSpec::none() { return NoiseSpec{}; }

NoiseSpec NoiseSpec::dephasing(double gamma) {
  NoiseSpec s;
  s.kind = Kind::Dephasing;
  s.gamma = gamma;
  return s;
}

NoiseSpec NoiseSpec::depolarizing(double p) {
  NoiseSpec s;
  s.kind = Kind::Depolarizing;
  s.p = p;
  return s;
}

NoiseSpec NoiseSpec::amplitude_damping(double gamma_ad) {
  NoiseSpec s;
  s.kind = Kind::AmplitudeDamping;
  s.gamma_ad = gamma_ad;
  return s;
}

NoiseSpec NoiseSpec::combined(double gamma, double p, double gamma_ad) {
  NoiseSpec s;
  s.kind = Kind::Combined;
  s.gamma = gamma;
  s.p = p;
  s.gamma_ad = gamma_ad;
  return s;
}

NoiseSpec NoiseSpec::selective_dephasing(long gap) {
  NoiseSpec s;
  s.kind = Kind::SelectiveDephasing;
  s.gap = gap;
  return s;
}

NoiseSpec NoiseSpec::epsilon_family(double eps) {
  NoiseSpec s;
  s.kind = Kind::EpsilonFamily;
  s.epsilon = eps;
  return s;
}

const char* NoiseSpec::name() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Dephasing: return "dephasing";
    case Kind::Depolarizing: return "depolarizing";
    case Kind::AmplitudeDamping: return "amplitude_damping";
    case Kind::Combined: return "combined";
    case Kind::SelectiveDephasing: return "selective_dephasing";
    case Kind::EpsilonFamily: return "epsilon_family";
  }
  return "unknown";
}

DensityMatrix apply_noise(const DensityMatrix& rho, const HamiltonianSpec& h,
                          const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseSpec::Kind::None: return rho;
    case NoiseSpec::Kind::Dephasing: return dephase(rho, h, spec.gamma);
    case NoiseSpec::Kind::Depolarizing: return depolarize(rho, spec.p);
    case NoiseSpec::Kind::AmplitudeDamping: return amplitude_damp(rho, spec.gamma_ad);
    case NoiseSpec::Kind::Combined:
      return combined_noise(rho, h, spec.gamma, spec.p, spec.gamma_ad);
    case NoiseSpec::Kind::SelectiveDephasing: return selective_dephase(rho, h, spec.gap).state;
    case NoiseSpec::Kind::EpsilonFamily:
      throw std::invalid_argument("apply_noise: epsilon family needs the pure target amplitudes");
  }
  throw std::invalid_argument("apply_noise: unknown channel");
}

DensityMatrix apply_noise(const StateVector& target, const HamiltonianSpec& h,
                          const NoiseSpec& spec) {
  if (spec.kind == NoiseSpec::Kind::EpsilonFamily) return epsilon_family(target, spec.epsilon);
  return apply_noise(pure_density(target), h, spec);
}

}  // namespace cqec
