// Analytic error-correction baselines and copy-count estimators: per-qubit
// rate conversion, Steane and surface-code logical fidelity models, the
// finite-copy fidelity bound with its inverse, and the power-law fit used by
// the scaling study.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cqec/density.hpp"
#include "cqec/modes.hpp"

namespace cqec {

// Inputs of the finite-copy bound: the state constant C and the infidelity
// target the copy count must reach.
struct BoundInputs {
  double c = 0.0;
  double target_infidelity = 0.0;
};

// Effective per-qubit rate p_eff = 1 - (1 - p)^(1/n_q).
double per_qubit_rate(double p, int n_qubits);

// Steane [[7,1,3]] logical fidelity: all weight-0 and weight-1 error events
// are corrected, F_L = (1-p)^7 + 7 p (1-p)^6.
double steane_fidelity(double p_eff);

// Fidelity of an unencoded d-level state under depolarizing strength p.
double unprotected_fidelity(double p, int d);

// Surface-code logical error (p/p_th)^((distance+1)/2), p_th = 0.01,
// clipped to [0, 1]; distance must be odd and >= 3.
double surface_logical_error(double p_eff, int distance);

// Finite-copy infidelity bound 1 - F <= C^2/(4n) + C/sqrt(n).
double finite_copy_infidelity(double c, double n);

// Smallest copy count n with finite_copy_infidelity(c, n) <= eps; the exact
// quadratic solution in 1/sqrt(n), rounded up.
std::int64_t copies_for_target(double c, double eps);
std::int64_t copies_for_target(const BoundInputs& in);

// State constant C = d * l1_coherence / min |rho_ij|, minimized over
// off-diagonals that carry a nonzero energy gap and exceed the threshold.
// Throws when no such coherence exists (the bound is undefined).
double bound_constant(const DensityMatrix& rho0, const HamiltonianSpec& h,
                      double threshold = tol::mode_threshold);

// Copy cost of one transformation step, mu = 1/x^2 for the smallest
// off-diagonal magnitude x; throws on x <= 0.
double copy_mu(double rho_min_offdiag);

struct PowerLawFit {
  double coefficient = 0.0;  // a in C = a * d^b
  double exponent = 0.0;     // b
  double r_squared = 0.0;    // on the log-log residuals
};

// Least-squares fit of log C against log d; needs >= 2 distinct positive
// abscissae and positive ordinates.
PowerLawFit power_law_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace cqec
