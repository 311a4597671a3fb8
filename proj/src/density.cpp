#include "cqec/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace cqec {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Checks that dims are positive, keep indices are ascending and in range,
// and that the dims multiply out to the joint dimension.
void check_factoring(Eigen::Index joint_dim, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  long prod = 1;
  for (int d : dims) {
    require(d >= 1, "partial_trace: factor dimensions must be positive");
    prod *= d;
  }
  require(prod == joint_dim, "partial_trace: factor dimensions do not multiply to the joint dimension");
  require(!keep.empty(), "partial_trace: must keep at least one factor");
  int prev = -1;
  for (int k : keep) {
    require(k > prev, "partial_trace: keep indices must be strictly ascending");
    require(k >= 0 && k < static_cast<int>(dims.size()), "partial_trace: keep index out of range");
    prev = k;
  }
}

}  // namespace

StateVector::StateVector(Vector a) : amps(std::move(a)) {
  require(amps.size() > 0, "StateVector: empty amplitude vector");
  require(std::abs(amps.norm() - 1.0) <= 1e-10, "StateVector: amplitudes are not normalized");
}

DensityMatrix::DensityMatrix(Matrix mat) : m(std::move(mat)) {
  require(m.rows() == m.cols() && m.rows() > 0, "DensityMatrix: matrix must be square");
  require((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol::hermiticity,
          "DensityMatrix: matrix is not Hermitian");
  require(std::abs(m.trace().real() - 1.0) <= tol::trace && std::abs(m.trace().imag()) <= tol::trace,
          "DensityMatrix: trace is not 1");
}

DensityMatrix DensityMatrix::checked(Matrix mat) {
  DensityMatrix rho(std::move(mat));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.m, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -tol::psd_slack,
          "DensityMatrix: matrix is not positive semidefinite");
  return rho;
}

DensityMatrix pure_density(const StateVector& psi) {
  return DensityMatrix(psi.amps * psi.amps.adjoint());
}

HamiltonianSpec HamiltonianSpec::qubit_sum_z(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("qubit_sum_z: bad qubit count");
  HamiltonianSpec h;
  h.convention = Convention::QubitSumZ;
  h.dimension = 1 << n_qubits;
  return h;
}

HamiltonianSpec HamiltonianSpec::linear_ladder(int dim) {
  if (dim < 1) throw std::invalid_argument("linear_ladder: bad dimension");
  HamiltonianSpec h;
  h.convention = Convention::LinearLadder;
  h.dimension = dim;
  return h;
}

long HamiltonianSpec::energy(int level) const {
  if (level < 0 || level >= dimension) throw std::invalid_argument("HamiltonianSpec: level out of range");
  if (convention == Convention::LinearLadder) return level;
  const int n = std::countr_zero(static_cast<unsigned>(dimension));
  return n - 2 * std::popcount(static_cast<unsigned>(level));
}

std::vector<long> HamiltonianSpec::energies() const {
  std::vector<long> e(dimension);
  for (int k = 0; k < dimension; ++k) e[k] = energy(k);
  return e;
}

PureEnsemble PureEnsemble::from_density(const DensityMatrix& rho, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.m);
  PureEnsemble ens;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w > cutoff) {
      ens.weights.push_back(w);
      ens.members.push_back(es.eigenvectors().col(i));
    }
  }
  return ens;
}

PureEnsemble PureEnsemble::from_pure(const StateVector& psi) {
  PureEnsemble ens;
  ens.weights.push_back(1.0);
  ens.members.push_back(psi.amps);
  return ens;
}

DensityMatrix PureEnsemble::densify() const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (size_t k = 0; k < members.size(); ++k) sum += weights[k] * (members[k] * members[k].adjoint());
  // renormalize away the weight dropped with near-zero eigenvalues
  sum /= sum.trace().real();
  return DensityMatrix(0.5 * (sum + sum.adjoint()));
}

PureEnsemble PureEnsemble::tensor_pure(const Vector& psi) const {
  PureEnsemble out;
  out.weights = weights;
  out.members.reserve(members.size());
  for (const Vector& v : members) out.members.push_back(tensor(v, psi));
  return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  const Eigen::Index da = a.rows(), db = b.rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index xb = 0; xb < db; ++xb)
    for (Eigen::Index yb = 0; yb < db; ++yb)
      out.block(xb * da, yb * da, da, da) = b(xb, yb) * a;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.m, b.m));
}

Vector tensor(const Vector& a, const Vector& b) {
  const Eigen::Index da = a.size(), db = b.size();
  Vector out(da * db);
  for (Eigen::Index xb = 0; xb < db; ++xb) out.segment(xb * da, da) = b(xb) * a;
  return out;
}

Matrix partial_trace(const Matrix& joint, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  check_factoring(joint.rows(), dims, keep);

  const int nf = static_cast<int>(dims.size());
  std::vector<int> traced;
  for (int f = 0; f < nf; ++f)
    if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);

  // digit strides of each factor in the joint index
  std::vector<long> stride(nf);
  long s = 1;
  for (int f = 0; f < nf; ++f) {
    stride[f] = s;
    s *= dims[f];
  }

  long dim_keep = 1, dim_tr = 1;
  for (int f : keep) dim_keep *= dims[f];
  for (int f : traced) dim_tr *= dims[f];

  // joint index of a (kept, traced) multi-index pair
  auto unpack = [&](long idx, const std::vector<int>& factors) {
    long x = 0;
    for (int f : factors) {
      x += (idx % dims[f]) * stride[f];
      idx /= dims[f];
    }
    return x;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (long t = 0; t < dim_tr; ++t) {
    const long xt = unpack(t, traced);
    for (long i = 0; i < dim_keep; ++i) {
      const long xi = unpack(i, keep) + xt;
      for (long j = 0; j < dim_keep; ++j) out(i, j) += joint(xi, unpack(j, keep) + xt);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& joint, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  Matrix out = partial_trace(joint.m, dims, keep);
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

DensityMatrix reduce(const PureEnsemble& ens, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  check_factoring(ens.dim(), dims, keep);

  const int nf = static_cast<int>(dims.size());
  std::vector<int> traced;
  for (int f = 0; f < nf; ++f)
    if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);

  std::vector<long> stride(nf);
  long s = 1;
  for (int f = 0; f < nf; ++f) {
    stride[f] = s;
    s *= dims[f];
  }

  long dim_keep = 1, dim_tr = 1;
  for (int f : keep) dim_keep *= dims[f];
  for (int f : traced) dim_tr *= dims[f];

  auto unpack = [&](long idx, const std::vector<int>& factors) {
    long x = 0;
    for (int f : factors) {
      x += (idx % dims[f]) * stride[f];
      idx /= dims[f];
    }
    return x;
  };

  // For each member phi, fold it into a dim_keep x dim_tr matrix M with
  // M(i, t) = phi[x(i) + x(t)]; the reduced state gains w * M M^dagger.
  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  Matrix fold(dim_keep, dim_tr);
  for (size_t k = 0; k < ens.members.size(); ++k) {
    const Vector& phi = ens.members[k];
    for (long t = 0; t < dim_tr; ++t) {
      const long xt = unpack(t, traced);
      for (long i = 0; i < dim_keep; ++i) fold(i, t) = phi(unpack(i, keep) + xt);
    }
    out.noalias() += ens.weights[k] * (fold * fold.adjoint());
  }
  out /= out.trace().real();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

Matrix matrix_sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  // eigenvalues at the numerical noise floor are exact zeros, otherwise the
  // square root amplifies their noise from O(eps) to O(sqrt(eps))
  const double cutoff =
      es.eigenvalues().cwiseAbs().maxCoeff() * m.rows() * std::numeric_limits<double>::epsilon();
  RealVector roots(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double l = es.eigenvalues()(i);
    roots(i) = l > cutoff ? std::sqrt(l) : 0.0;
  }
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.dim() == sigma.dim(), "uhlmann_fidelity: dimension mismatch");
  // (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 equals the squared nuclear norm
  // of sqrt(rho) sqrt(sigma); singular values keep the noise linear
  const Matrix t = matrix_sqrt_psd(rho.m) * matrix_sqrt_psd(sigma.m);
  Eigen::BDCSVD<Matrix> svd(t);
  const double tr = svd.singularValues().sum();
  return std::min(tr * tr, 1.0);
}

double fidelity_to_pure(const StateVector& psi, const Matrix& rho) {
  return std::real(psi.amps.dot(rho * psi.amps));
}

double fidelity_to_pure(const StateVector& psi, const DensityMatrix& rho) {
  require(psi.dim() == rho.dim(), "fidelity_to_pure: dimension mismatch");
  return fidelity_to_pure(psi, rho.m);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.dim() == b.dim(), "trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.m - b.m, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double l1_coherence(const Matrix& rho) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return sum;
}

double l1_coherence(const DensityMatrix& rho) { return l1_coherence(rho.m); }

double purity(const DensityMatrix& rho) { return std::real((rho.m * rho.m).trace()); }

double qfi(const DensityMatrix& rho, const HamiltonianSpec& h) {
  require(rho.dim() == h.dim(), "qfi: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.m);
  const RealVector lam = es.eigenvalues().cwiseMax(0.0);
  const int d = rho.dim();

  // generator matrix elements in the eigenbasis of rho
  Matrix hmat(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      complexd acc = 0.0;
      for (int k = 0; k < d; ++k)
        acc += std::conj(es.eigenvectors()(k, i)) * static_cast<double>(h.energy(k)) *
               es.eigenvectors()(k, j);
      hmat(i, j) = acc;
    }

  double f = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double denom = lam(i) + lam(j);
      if (denom <= tol::full_rank) continue;
      const double diff = lam(i) - lam(j);
      f += 2.0 * diff * diff / denom * std::norm(hmat(i, j));
    }
  return f;
}

int coherence_support_size(const DensityMatrix& rho, double threshold) {
  int count = 0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j && std::abs(rho.m(i, j)) > threshold) ++count;
  return count;
}

}  // namespace cqec
