#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cqec/ec_circuit.hpp"
#include "test_helpers.hpp"

using namespace cqec;

namespace {

// independent embedding oracle: U_full(x, y) = G(g_x, g_y) when the
// spectator bits agree, with g the 2-bit gate index (qubit a high)
Matrix embed_gate(const Eigen::Matrix4cd& g, int qa, int qb, int n_qubits) {
  const long dim = 1L << n_qubits;
  const long ba = 1L << qa, bb = 1L << qb;
  Matrix u = Matrix::Zero(dim, dim);
  for (long x = 0; x < dim; ++x)
    for (long y = 0; y < dim; ++y) {
      if ((x & ~(ba | bb)) != (y & ~(ba | bb))) continue;
      const int gx = 2 * ((x & ba) != 0) + ((x & bb) != 0);
      const int gy = 2 * ((y & ba) != 0) + ((y & bb) != 0);
      u(x, y) = g(gx, gy);
    }
  return u;
}

std::vector<double> random_angles(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 2.0 * M_PI);
  std::vector<double> out(count);
  for (double& t : out) t = dist(rng);
  return out;
}

}  // namespace

TEST_CASE("ec gate matrix structure") {
  Eigen::Matrix4cd g = ec_gate_matrix(0.7);
  CHECK((g * g.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(g(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(g(3, 3) - 1.0) < 1e-15);
  CHECK(std::abs(g(1, 1) - std::cos(0.7)) < 1e-15);
  CHECK(std::abs(g(1, 2) - complexd(0.0, -std::sin(0.7))) < 1e-15);

  // theta = 0 is the identity, theta = pi/2 the i-phased swap
  CHECK((ec_gate_matrix(0.0) - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::Matrix4cd iswap = ec_gate_matrix(M_PI / 2);
  CHECK(std::abs(iswap(1, 2) - complexd(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(iswap(1, 1)) < 1e-15);
}

TEST_CASE("ec gate commutes with the two-qubit energy generator") {
  Eigen::Matrix4cd g = ec_gate_matrix(1.1);
  Eigen::Matrix4cd h = Eigen::Vector4cd(2.0, 0.0, 0.0, -2.0).asDiagonal();
  CHECK((g * h - h * g).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("minimal circuit equals the (1,1,2) layered ansatz") {
  std::array<double, 5> t{0.1, 0.2, 0.3, 0.4, 0.5};
  ECCircuit minimal = build_minimal(t);
  ECCircuit layered = build_layered(1, 1, 2, {0.1, 0.2, 0.3, 0.4, 0.5});
  REQUIRE(minimal.gates.size() == 5);
  REQUIRE(layered.gates.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(minimal.gates[i].qubit_a == layered.gates[i].qubit_a);
    CHECK(minimal.gates[i].qubit_b == layered.gates[i].qubit_b);
    CHECK(minimal.gates[i].theta == layered.gates[i].theta);
    CHECK(minimal.gates[i].layer == layered.gates[i].layer);
  }
  // wiring: (S,C) (C,A0) (C,A1) (S,A0) (S,A1)
  CHECK(minimal.gates[0].qubit_a == 0);
  CHECK(minimal.gates[0].qubit_b == 1);
  CHECK(minimal.gates[1].qubit_a == 1);
  CHECK(minimal.gates[1].qubit_b == 2);
  CHECK(minimal.gates[2].qubit_b == 3);
  CHECK(minimal.gates[3].qubit_a == 0);
  CHECK(minimal.gates[3].qubit_b == 2);
  CHECK(minimal.gates[4].qubit_b == 3);
  CHECK(minimal.gates[0].layer == 1);
  CHECK(minimal.gates[1].layer == 2);
  CHECK(minimal.gates[4].layer == 3);
}

TEST_CASE("gate counts scale with the layer products") {
  std::mt19937_64 rng(5);
  CHECK(layered_param_count(1, 1, 2) == 5);
  CHECK(layered_param_count(2, 2, 2) == 12);
  CHECK(layered_param_count(3, 3, 2) == 21);
  CHECK(layered_param_count(2, 2, 2, 3) == 36);
  CHECK(build_layered(2, 2, 2, random_angles(36, rng), 3).gates.size() == 36);
  CHECK_THROWS_AS(build_layered(2, 2, 2, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(build_layered(0, 1, 2, {}), std::invalid_argument);
}

TEST_CASE("circuit unitary matches the embedding oracle") {
  std::mt19937_64 rng(7);
  ECCircuit circuit = build_minimal({0.3, 1.2, 2.1, 0.7, 1.9});
  Matrix expected = Matrix::Identity(16, 16);
  for (const ECGate& g : circuit.gates)
    expected = embed_gate(ec_gate_matrix(g.theta), g.qubit_a, g.qubit_b, 4) * expected;
  CHECK((unitary_matrix(circuit) - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("dense application equals conjugation by the circuit unitary") {
  std::mt19937_64 rng(11);
  ECCircuit circuit = build_layered(2, 2, 2, random_angles(12, rng));
  DensityMatrix rho = testutil::random_density(64, rng, 5);
  Matrix u = unitary_matrix(circuit);
  CHECK((apply(circuit, rho).m - u * rho.m * u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ensemble application agrees with the dense path") {
  std::mt19937_64 rng(13);
  ECCircuit circuit = build_layered(2, 2, 2, random_angles(12, rng));
  DensityMatrix rho = testutil::random_density(64, rng, 6);
  PureEnsemble ens = PureEnsemble::from_density(rho);
  CHECK((apply(circuit, ens).densify().m - apply(circuit, rho).m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random layered circuits commute with the total energy") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    ECCircuit circuit = build_layered(1, 1, 2, random_angles(5, rng));
    CHECK(covariance_defect(circuit) <= 1e-12);
  }
  for (int trial = 0; trial < 5; ++trial) {
    ECCircuit circuit = build_layered(2, 2, 2, random_angles(12, rng));
    CHECK(covariance_defect(circuit) <= 1e-12);
  }
}

TEST_CASE("total excitation is preserved by the circuit") {
  std::mt19937_64 rng(19);
  ECCircuit circuit = build_layered(1, 1, 2, random_angles(5, rng));
  auto h = total_hamiltonian(circuit);
  Matrix hmat = Matrix::Zero(16, 16);
  for (int k = 0; k < 16; ++k) hmat(k, k) = double(h.energy(k));
  DensityMatrix rho = testutil::random_density(16, rng);
  const double before = (hmat * rho.m).trace().real();
  const double after = (hmat * apply(circuit, rho).m).trace().real();
  CHECK(before == doctest::Approx(after).epsilon(1e-12));
}

TEST_CASE("a non-conserving gate breaks covariance detectably") {
  // splice a Hadamard-like 4x4 block into an otherwise covariant circuit
  std::mt19937_64 rng(23);
  ECCircuit circuit = build_minimal({0.4, 0.9, 1.3, 0.2, 2.2});
  Matrix u = unitary_matrix(circuit);
  Eigen::Matrix4cd had = Eigen::Matrix4cd::Identity();
  const double s = 1.0 / std::sqrt(2.0);
  had(0, 0) = s;
  had(0, 1) = s;
  had(1, 0) = s;
  had(1, 1) = -s;
  Matrix spoiled = embed_gate(had, 0, 1, 4) * u;
  CHECK(covariance_defect(spoiled, total_hamiltonian(circuit)) > 0.1);
}

TEST_CASE("gate application rejects aliased qubits") {
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  CHECK_THROWS_AS(apply_ec_gate(v, 0.3, 1, 1), std::invalid_argument);
}
