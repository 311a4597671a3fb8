// Swap-test purification: the two-copy gadget omega = (rho + rho^2)/(1 + Tr rho^2),
// its closed-form fast path on depolarized states, a covariant per-energy-sector
// variant, CPMG pulse scaling, and the exact analytic twirl, composed into the
// DD -> twirl -> recursive-swap pipeline.
#pragma once

#include <optional>

#include "cqec/density.hpp"
#include "cqec/noise.hpp"

namespace cqec {

// a * |psi><psi| + b * I/d with a + b = 1; closed under the swap gadget
struct DepolForm {
  double a;
  double b;
  int d;
  StateVector target;

  DepolForm(double a_, double b_, StateVector target_);

  DensityMatrix densify() const;
  double target_fidelity() const;  // a + b/d
};

DensityMatrix swap_gadget(const DensityMatrix& rho);
DepolForm swap_gadget(const DepolForm& form);

// k-fold gadget composition; consumes 2^k identically prepared copies
DensityMatrix recursive_purify(const DensityMatrix& rho, int k);
DepolForm recursive_purify(const DepolForm& form, int k);

// one concrete reading of sector-wise symmetrization: the gadget formula is
// applied to each degenerate-energy sector's diagonal block, inter-sector
// blocks are carried through at their input values, and a final global trace
// renormalization restores trace 1; no coherence is ever created between
// distinct sectors
DensityMatrix covariant_swap_gadget(const DensityMatrix& rho, const HamiltonianSpec& h);

// equally spaced pi-pulse echo: gamma_eff = gamma / (n_pulses + 1)
double cpmg_gamma(double gamma, int n_pulses);

// average fidelity of the dephasing channel on the ladder spectrum 0..d-1
double twirl_avg_fidelity(double gamma_eff, int d);

// depolarizing probability of the exactly twirled dephasing channel
double twirl_p_eff(double gamma_eff, int d);

enum class TwirlMode { AnalyticExact, Off };

struct PipelineConfig {
  int cpmg_n = 0;       // pi-pulses in the echo stage
  int swap_rounds = 0;  // k; copies consumed = 2^k
  TwirlMode twirl = TwirlMode::AnalyticExact;
  std::optional<double> p_eff_override;  // bypass the twirl formula
};

struct PipelineReport {
  double gamma_eff = 0.0;
  double p_eff = 0.0;  // 0 when the twirl stage is off
  double f_cat = 0.0;
  long copies = 1;
  bool twirled = false;
};

// stage 1: CPMG rescales gamma; stage 2: twirl (or override) yields a
// depolarized form; stage 3: recursive swap purification.  With the twirl
// off, the dephased state is purified densely on the ladder spectrum.
PipelineReport run_pipeline(const StateVector& target, double gamma, const PipelineConfig& cfg);

}  // namespace cqec
