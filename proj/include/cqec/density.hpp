#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqec/types.hpp"

// Core state representations and information measures.
//
// Composite-system convention used throughout the library: tensor(a, b)
// places factor `a` on the least significant digits of the joint basis
// index, x = x_a + dim_a * x_b.  For qubit registers this is little-endian
// bit indexing: qubit q owns bit q of the basis index, and registers listed
// first occupy the low bits.
namespace cqec {

// Normalized pure state.
struct StateVector {
  Vector amps;

  StateVector() = default;
  explicit StateVector(Vector a);

  int dim() const { return static_cast<int>(amps.size()); }
};

// Hermitian, positive semidefinite, unit-trace matrix.  The constructor
// enforces hermiticity and trace cheaply; PSD is checked by the `checked`
// factory (an eigendecomposition) so hot paths can skip it.
struct DensityMatrix {
  Matrix m;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix mat);

  // Full validation, including the PSD eigenvalue check.
  static DensityMatrix checked(Matrix mat);

  int dim() const { return static_cast<int>(m.rows()); }
};

// Projector onto a pure state.
DensityMatrix pure_density(const StateVector& psi);

// Diagonal Hamiltonian with integer spectrum.  Two conventions cover every
// system in the library:
//   QubitSumZ    d = 2^n, E_k = n - 2 popcount(k)  (sum of Pauli Z)
//   LinearLadder E_k = k for k = 0..d-1
struct HamiltonianSpec {
  enum class Convention { QubitSumZ, LinearLadder };

  Convention convention = Convention::QubitSumZ;
  int dimension = 2;

  static HamiltonianSpec qubit_sum_z(int n_qubits);
  static HamiltonianSpec linear_ladder(int dim);

  int dim() const { return dimension; }
  long energy(int level) const;
  std::vector<long> energies() const;
};

// Mixture of pure states, kept as explicit (weight, vector) pairs.  This is
// the fast path for large joint systems: a rank-r state on dimension D costs
// O(r D) per gate instead of O(D^2).
struct PureEnsemble {
  std::vector<double> weights;
  std::vector<Vector> members;

  int dim() const { return members.empty() ? 0 : static_cast<int>(members[0].size()); }
  int rank() const { return static_cast<int>(members.size()); }

  // Spectral decomposition of rho; eigenvalues below cutoff are dropped.
  static PureEnsemble from_density(const DensityMatrix& rho, double cutoff = 1e-14);
  static PureEnsemble from_pure(const StateVector& psi);

  // Sum of w |phi><phi|; only sensible for moderate dimensions.
  DensityMatrix densify() const;

  // Tensors `psi` onto the high digits of every member, matching
  // tensor(member, psi).
  PureEnsemble tensor_pure(const Vector& psi) const;
};

// --- composition and reduction ---------------------------------------------

// Joint state with `a` on the least significant digits.
Matrix tensor(const Matrix& a, const Matrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Vector tensor(const Vector& a, const Vector& b);

// Traces out every factor not listed in `keep`.  `dims` lists factor
// dimensions in composition order (dims[0] = least significant digit);
// `keep` lists factor indices to retain, in ascending order.
Matrix partial_trace(const Matrix& joint, const std::vector<int>& dims,
                     const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& joint, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Reduced state of an ensemble, without densifying the joint system.
DensityMatrix reduce(const PureEnsemble& ens, const std::vector<int>& dims,
                     const std::vector<int>& keep);

// --- measures ---------------------------------------------------------------

// Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// <psi|rho|psi>, the pure-target shortcut for the Uhlmann fidelity.
double fidelity_to_pure(const StateVector& psi, const DensityMatrix& rho);
double fidelity_to_pure(const StateVector& psi, const Matrix& rho);

// 0.5 * trace norm of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Sum of off-diagonal magnitudes in the energy eigenbasis.
double l1_coherence(const DensityMatrix& rho);
double l1_coherence(const Matrix& rho);

double purity(const DensityMatrix& rho);

// Quantum Fisher information of rho with respect to the diagonal generator
// h: 2 sum_{ij} (l_i - l_j)^2 / (l_i + l_j) |<i|H|j>|^2 over eigenpairs of
// rho with l_i + l_j above the rank cutoff.
double qfi(const DensityMatrix& rho, const HamiltonianSpec& h);

// Hermitian principal square root, eigenvalues clamped at zero.
Matrix matrix_sqrt_psd(const Matrix& m);

// Number of off-diagonal entries with |rho_ij| > threshold.
int coherence_support_size(const DensityMatrix& rho, double threshold = tol::mode_threshold);

}  // namespace cqec
