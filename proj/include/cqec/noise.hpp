#pragma once

#include <optional>

#include "cqec/density.hpp"

// Noise channels.  All channels act in the energy eigenbasis fixed by a
// HamiltonianSpec; the qubit-local amplitude damping additionally assumes a
// power-of-two dimension.
namespace cqec {

// rho_ij <- rho_ij * exp(-gamma |E_i - E_j|).
DensityMatrix dephase(const DensityMatrix& rho, const HamiltonianSpec& h, double gamma);

// (1 - p) rho + p I/d.
DensityMatrix depolarize(const DensityMatrix& rho, double p);

// Per-qubit amplitude damping with Kraus rank 2 on every qubit in turn.
DensityMatrix amplitude_damp(const DensityMatrix& rho, double gamma_ad);

// dephase, then depolarize, then amplitude damp.
DensityMatrix combined_noise(const DensityMatrix& rho, const HamiltonianSpec& h,
                             double gamma = 1.0, double p = 0.15, double gamma_ad = 0.1);

// Diagonal of the target with every off-diagonal forced to magnitude
// epsilon at the target's phases.  The target must be maximally coherent.
// For epsilon > 1/d the construction loses positivity and is clamped back
// to the PSD cone; `projected` records whether that happened.
DensityMatrix epsilon_family(const StateVector& target, double epsilon,
                             bool* projected = nullptr);

struct SelectiveDephaseResult {
  DensityMatrix state;
  // whether clamping negative eigenvalues was needed after zeroing the gap
  bool psd_projected = false;
};

// Extinguishes every coherence at energy distance |gap|, re-projecting onto
// the PSD cone when the surgical edit leaves the matrix indefinite.
SelectiveDephaseResult selective_dephase(const DensityMatrix& rho, const HamiltonianSpec& h,
                                         long gap);

// Predicted fidelity of a dephased state against its pure source when every
// populated gap is treated as decaying at the single rate gamma:
// Tr[rho_diag^2] + e^{-gamma} (1 - Tr[rho_diag^2]).
double predicted_dephased_fidelity(double tr_diag_sq, double gamma);

// Declarative channel description for experiment configs.
struct NoiseSpec {
  enum class Kind {
    None,
    Dephasing,
    Depolarizing,
    AmplitudeDamping,
    Combined,
    SelectiveDephasing,
    EpsilonFamily
  };

  Kind kind = Kind::None;
  double gamma = 0.0;
  double p = 0.0;
  double gamma_ad = 0.0;
  long gap = 0;
  double epsilon = 0.0;

  static NoiseSpec none();
  static NoiseSpec dephasing(double gamma);
  static NoiseSpec depolarizing(double p);
  static NoiseSpec amplitude_damping(double gamma_ad);
  static NoiseSpec combined(double gamma = 1.0, double p = 0.15, double gamma_ad = 0.1);
  static NoiseSpec selective_dephasing(long gap);
  static NoiseSpec epsilon_family(double eps);

  const char* name() const;
};

// Applies `spec` to a pure target state (EpsilonFamily needs the amplitudes,
// every other channel only needs the projector).
DensityMatrix apply_noise(const StateVector& target, const HamiltonianSpec& h,
                          const NoiseSpec& spec);
DensityMatrix apply_noise(const DensityMatrix& rho, const HamiltonianSpec& h,
                          const NoiseSpec& spec);

}  // namespace cqec
