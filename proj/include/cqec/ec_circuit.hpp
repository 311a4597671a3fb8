#pragma once

#include <array>
#include <vector>

#include "cqec/density.hpp"

// Energy-conserving two-qubit gates and the three-layer circuit ansatz.
//
// Qubit layout on the joint index (little-endian, qubit q owns bit q):
// system qubits 0..nS-1, catalyst qubits nS..nS+nC-1, ancilla qubits after
// that.  A gate on (a, b) is written in the ordered basis |b_a b_b> with
// qubit a on the high bit of the 4-dim gate space.
namespace cqec {

struct ECGate {
  int qubit_a = 0;
  int qubit_b = 0;
  double theta = 0.0;
  int layer = 0;  // 1 = system-catalyst, 2 = catalyst-ancilla, 3 = system-ancilla
};

struct ECCircuit {
  int n_system = 1;
  int n_catalyst = 1;
  int n_ancilla = 2;
  int repetitions = 1;
  std::vector<ECGate> gates;

  int total_qubits() const { return n_system + n_catalyst + n_ancilla; }
  long total_dim() const { return 1L << total_qubits(); }

  // factor dimensions (system, catalyst, ancilla) for partial traces
  std::vector<int> register_dims() const;
};

// The 4x4 energy-conserving rotation: identity on |00> and |11>, a
// -i sin(theta) beam splitter on the degenerate {|01>, |10>} pair.
Eigen::Matrix4cd ec_gate_matrix(double theta);

// Number of angles consumed by build_layered.
int layered_param_count(int n_system, int n_catalyst, int n_ancilla, int repetitions = 1);

// Five-gate (1, 1, 2) circuit: one system-catalyst gate, two
// catalyst-ancilla gates, two system-ancilla gates.
ECCircuit build_minimal(const std::array<double, 5>& thetas);

// All-pairs three-layer ansatz, repeated `repetitions` times: layer 1 is
// system x catalyst, layer 2 catalyst x ancilla, layer 3 system x ancilla,
// with angles consumed in loop order (first register outer).
ECCircuit build_layered(int n_system, int n_catalyst, int n_ancilla,
                        const std::vector<double>& thetas, int repetitions = 1);

// In-place gate application to a statevector on n qubits.
void apply_ec_gate(Vector& amps, double theta, int qubit_a, int qubit_b);

// U rho U^dagger via per-gate kernels; no full unitary is formed.
Matrix apply(const ECCircuit& circuit, const Matrix& rho);
DensityMatrix apply(const ECCircuit& circuit, const DensityMatrix& rho);
PureEnsemble apply(const ECCircuit& circuit, const PureEnsemble& ens);

// Dense circuit unitary, for covariance checks and small-system tests.
Matrix unitary_matrix(const ECCircuit& circuit);

// Frobenius norm of [U, H] for the diagonal generator h.
double covariance_defect(const Matrix& u, const HamiltonianSpec& h);
double covariance_defect(const ECCircuit& circuit);

// Sum-of-Z generator on every qubit of the joint register.
HamiltonianSpec total_hamiltonian(const ECCircuit& circuit);

}  // namespace cqec
