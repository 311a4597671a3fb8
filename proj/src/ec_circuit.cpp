#include "cqec/ec_circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace cqec {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<int> ECCircuit::register_dims() const {
  return {1 << n_system, 1 << n_catalyst, 1 << n_ancilla};
}

Eigen::Matrix4cd ec_gate_matrix(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Identity();
  g(1, 1) = c;
  g(2, 2) = c;
  g(1, 2) = complexd(0.0, -s);
  g(2, 1) = complexd(0.0, -s);
  return g;
}

int layered_param_count(int n_system, int n_catalyst, int n_ancilla, int repetitions) {
  return repetitions * (n_system * n_catalyst + n_catalyst * n_ancilla + n_system * n_ancilla);
}

ECCircuit build_minimal(const std::array<double, 5>& thetas) {
  return build_layered(1, 1, 2, {thetas.begin(), thetas.end()});
}

ECCircuit build_layered(int n_system, int n_catalyst, int n_ancilla,
                        const std::vector<double>& thetas, int repetitions) {
  require(n_system >= 1 && n_catalyst >= 1 && n_ancilla >= 1,
          "build_layered: all registers need at least one qubit");
  require(repetitions >= 1 && repetitions <= 3, "build_layered: repetitions must lie in 1..3");
  const int expected = layered_param_count(n_system, n_catalyst, n_ancilla, repetitions);
  require(static_cast<int>(thetas.size()) == expected,
          "build_layered: angle count does not match the gate pattern");

  ECCircuit circuit;
  circuit.n_system = n_system;
  circuit.n_catalyst = n_catalyst;
  circuit.n_ancilla = n_ancilla;
  circuit.repetitions = repetitions;
  circuit.gates.reserve(expected);

  const int c0 = n_system, a0 = n_system + n_catalyst;
  size_t next = 0;
  for (int rep = 0; rep < repetitions; ++rep) {
    for (int s = 0; s < n_system; ++s)
      for (int c = 0; c < n_catalyst; ++c)
        circuit.gates.push_back({s, c0 + c, thetas[next++], 1});
    for (int c = 0; c < n_catalyst; ++c)
      for (int a = 0; a < n_ancilla; ++a)
        circuit.gates.push_back({c0 + c, a0 + a, thetas[next++], 2});
    for (int s = 0; s < n_system; ++s)
      for (int a = 0; a < n_ancilla; ++a)
        circuit.gates.push_back({s, a0 + a, thetas[next++], 3});
  }
  return circuit;
}

void apply_ec_gate(Vector& amps, double theta, int qubit_a, int qubit_b) {
  require(qubit_a != qubit_b, "apply_ec_gate: gate qubits must differ");
  const long dim = amps.size();
  const long ba = 1L << qubit_a, bb = 1L << qubit_b;
  require(ba < dim && bb < dim, "apply_ec_gate: qubit index out of range");
  const double c = std::cos(theta);
  const complexd is(0.0, -std::sin(theta));

  // walk indices with both gate bits clear; only the degenerate middle
  // block {|01>, |10>} mixes
  for (long x = 0; x < dim; ++x) {
    if (x & (ba | bb)) continue;
    const long x01 = x | bb, x10 = x | ba;
    const complexd v01 = amps(x01), v10 = amps(x10);
    amps(x01) = c * v01 + is * v10;
    amps(x10) = is * v01 + c * v10;
  }
}

namespace {

// rho <- G rho G^dagger for one gate, column kernel then conjugated
// column kernel on the adjoint side
void conjugate_gate(Matrix& rho, double theta, int qa, int qb) {
  const long dim = rho.rows();
  const long ba = 1L << qa, bb = 1L << qb;
  const double c = std::cos(theta);
  const complexd is(0.0, -std::sin(theta));

  for (long x = 0; x < dim; ++x) {
    if (x & (ba | bb)) continue;
    const long x01 = x | bb, x10 = x | ba;
    // left multiply: mix rows x01 and x10
    const auto r01 = rho.row(x01).eval();
    const auto r10 = rho.row(x10).eval();
    rho.row(x01) = c * r01 + is * r10;
    rho.row(x10) = is * r01 + c * r10;
  }
  for (long x = 0; x < dim; ++x) {
    if (x & (ba | bb)) continue;
    const long x01 = x | bb, x10 = x | ba;
    // right multiply by G^dagger: mix columns with conjugated coefficients
    const auto c01 = rho.col(x01).eval();
    const auto c10 = rho.col(x10).eval();
    rho.col(x01) = c * c01 + std::conj(is) * c10;
    rho.col(x10) = std::conj(is) * c01 + c * c10;
  }
}

}  // namespace

Matrix apply(const ECCircuit& circuit, const Matrix& rho) {
  require(rho.rows() == circuit.total_dim(), "apply: state dimension does not match the circuit");
  Matrix out = rho;
  for (const ECGate& g : circuit.gates) conjugate_gate(out, g.theta, g.qubit_a, g.qubit_b);
  return out;
}

DensityMatrix apply(const ECCircuit& circuit, const DensityMatrix& rho) {
  Matrix out = apply(circuit, rho.m);
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

PureEnsemble apply(const ECCircuit& circuit, const PureEnsemble& ens) {
  require(ens.dim() == circuit.total_dim(), "apply: ensemble dimension does not match the circuit");
  PureEnsemble out = ens;
  for (Vector& member : out.members)
    for (const ECGate& g : circuit.gates) apply_ec_gate(member, g.theta, g.qubit_a, g.qubit_b);
  return out;
}

Matrix unitary_matrix(const ECCircuit& circuit) {
  const long dim = circuit.total_dim();
  Matrix u = Matrix::Identity(dim, dim);
  for (long col = 0; col < dim; ++col) {
    Vector v = u.col(col);
    for (const ECGate& g : circuit.gates) apply_ec_gate(v, g.theta, g.qubit_a, g.qubit_b);
    u.col(col) = v;
  }
  return u;
}

double covariance_defect(const Matrix& u, const HamiltonianSpec& h) {
  require(u.rows() == h.dim(), "covariance_defect: dimension mismatch");
  Matrix uh = u;
  Matrix hu = u;
  for (int k = 0; k < h.dim(); ++k) {
    const double e = double(h.energy(k));
    uh.col(k) *= e;
    hu.row(k) *= e;
  }
  return (uh - hu).norm();
}

double covariance_defect(const ECCircuit& circuit) {
  return covariance_defect(unitary_matrix(circuit), total_hamiltonian(circuit));
}

HamiltonianSpec total_hamiltonian(const ECCircuit& circuit) {
  return HamiltonianSpec::qubit_sum_z(circuit.total_qubits());
}

}  // namespace cqec
