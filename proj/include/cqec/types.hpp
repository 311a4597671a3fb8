#pragma once

#include <complex>
#include <eigen3/Eigen/Dense>

// Shared scalar and matrix aliases for the whole library.  Everything is
// dense, double precision, and column major; Eigen is the only math
// dependency.
namespace cqec {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Centralized numeric tolerances.  Tests and validation use these instead
// of ad hoc constants.
namespace tol {
// max |m - m^dagger| entry for a matrix to count as Hermitian
inline constexpr double hermiticity = 1e-12;
// eigenvalues may undershoot zero by this much and still count as PSD
inline constexpr double psd_slack = 1e-10;
// |trace - 1| allowed for a density matrix
inline constexpr double trace = 1e-12;
// |F(a,b) - F(b,a)| allowed for the fidelity symmetry check
inline constexpr double fidelity_symmetry = 1e-10;
// |rho_ij| above this counts as a populated coherence (mode detection)
inline constexpr double mode_threshold = 1e-14;
// smallest eigenvalue above this counts as full rank
inline constexpr double full_rank = 1e-12;
}  // namespace tol

}  // namespace cqec
