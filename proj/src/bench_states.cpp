#include "cqec/bench_states.hpp"

#include <cmath>
#include <eigen3/Eigen/Eigenvalues>
#include <numbers>

#include "cqec/optim.hpp"

namespace cqec {

namespace {

constexpr complexd kI{0.0, 1.0};

Matrix pauli(char axis) {
  Matrix p(2, 2);
  switch (axis) {
    case 'x': p << 0, 1, 1, 0; break;
    case 'y': p << 0, -kI, kI, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

// axis on the given qubit of a 3-qubit register, identity elsewhere
Matrix single_site(char axis, int qubit) {
  Matrix op = Matrix::Identity(1, 1);
  for (int q = 0; q < 3; ++q) op = tensor(op, q == qubit ? pauli(axis) : Matrix::Identity(2, 2));
  return op;
}

struct HamiltonianTerm {
  double coeff;
  Matrix op;
};

// Heisenberg chain terms: XX+YY+ZZ on bonds (0,1), (1,2) plus a Z field.
std::vector<HamiltonianTerm> heisenberg_terms() {
  std::vector<HamiltonianTerm> terms;
  for (int bond = 0; bond < 2; ++bond)
    for (char axis : {'x', 'y', 'z'})
      terms.push_back({1.0, single_site(axis, bond) * single_site(axis, bond + 1)});
  for (int q = 0; q < 3; ++q) terms.push_back({0.5, single_site('z', q)});
  return terms;
}

// e^{-iHt} psi through the spectral decomposition of Hermitian H.
Vector evolve(const Matrix& h, double t, const Vector& psi) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Vector in_basis = eig.eigenvectors().adjoint() * psi;
  Vector rotated(in_basis.size());
  for (int k = 0; k < in_basis.size(); ++k)
    rotated(k) = std::exp(-kI * eig.eigenvalues()(k) * t) * in_basis(k);
  return eig.eigenvectors() * rotated;
}

Vector uniform_amps(int d) { return Vector::Constant(d, 1.0 / std::sqrt(double(d))); }

// Two-site Hubbard surrogate on occupation bits (1up, 1dn, 2up, 2dn), with
// Jordan-Wigner signs for the hops.
Matrix hubbard_two_site(double hop, double interaction) {
  Matrix h = Matrix::Zero(16, 16);
  for (int b = 0; b < 16; ++b) {
    const int n0 = (b >> 0) & 1, n1 = (b >> 1) & 1, n2 = (b >> 2) & 1, n3 = (b >> 3) & 1;
    h(b, b) += interaction * (n0 * n1 + n2 * n3);
    if (n0 != n2) {  // spin-up hop crosses mode 1
      const double sign = n1 ? -1.0 : 1.0;
      h(b ^ 0b0101, b) += -hop * sign;
    }
    if (n1 != n3) {  // spin-down hop crosses mode 2
      const double sign = n2 ? -1.0 : 1.0;
      h(b ^ 0b1010, b) += -hop * sign;
    }
  }
  return h;
}

}  // namespace

int benchmark_dimension(Benchmark name) {
  switch (name) {
    case Benchmark::QKAN: return 4;
    case Benchmark::QDrift: return 8;
    case Benchmark::CFQPE: return 16;
    case Benchmark::Regev: return 64;
    case Benchmark::TTNCrypto: return 8;
  }
  throw std::invalid_argument("unknown benchmark");
}

std::string benchmark_name(Benchmark name) {
  switch (name) {
    case Benchmark::QKAN: return "qkan";
    case Benchmark::QDrift: return "qdrift";
    case Benchmark::CFQPE: return "cfqpe";
    case Benchmark::Regev: return "regev";
    case Benchmark::TTNCrypto: return "ttn";
  }
  throw std::invalid_argument("unknown benchmark");
}

std::optional<Benchmark> benchmark_from_name(const std::string& name) {
  for (Benchmark b : {Benchmark::QKAN, Benchmark::QDrift, Benchmark::CFQPE, Benchmark::Regev,
                      Benchmark::TTNCrypto})
    if (benchmark_name(b) == name) return b;
  return std::nullopt;
}

StateVector qkan_state(bool truncated) {
  Vector v(4);
  v << 1.0, 0.5, -0.5, truncated ? 0.0 : -1.0;
  v.normalize();
  return StateVector(v);
}

StateVector qdrift_state(std::uint64_t seed, bool exact) {
  const auto terms = heisenberg_terms();
  const Vector init = uniform_amps(8);
  if (exact) {
    Matrix h = Matrix::Zero(8, 8);
    for (const auto& term : terms) h += term.coeff * term.op;
    return StateVector(evolve(h, 1.0, init));
  }
  double lambda = 0.0;
  for (const auto& term : terms) lambda += term.coeff;
  const double tau = lambda * 1.0 / 80;  // rotation angle per sampled gate
  const double c = std::cos(tau), s = std::sin(tau);
  SplitMix64 rng(seed);
  Vector v = init;
  for (int gate = 0; gate < 80; ++gate) {
    double pick = rng.uniform() * lambda;
    int j = 0;
    while (j + 1 < int(terms.size()) && pick >= terms[j].coeff) pick -= terms[j].coeff, ++j;
    v = (c * v - kI * s * (terms[j].op * v)).eval();  // e^{-i tau P} = cos - i sin P
  }
  v.normalize();
  return StateVector(v);
}

Vector cfqpe_time_series() {
  const Matrix h = hubbard_two_site(1.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Vector overlaps = eig.eigenvectors().adjoint() * uniform_amps(16);
  Vector series(16);
  for (int j = 0; j < 16; ++j) {
    complexd f = 0.0;
    for (int k = 0; k < 16; ++k)
      f += std::norm(overlaps(k)) * std::exp(-kI * eig.eigenvalues()(k) * (0.4 * j));
    series(j) = f;
  }
  return series;
}

StateVector cfqpe_state() {
  Vector v = cfqpe_time_series();
  v.normalize();
  return StateVector(v);
}

StateVector regev_grid_state() {
  Vector v = Vector::Zero(64);
  int residue2[8], residue7[8];
  for (int x = 0, p2 = 1, p7 = 1; x < 8; ++x) {
    residue2[x] = p2;
    residue7[x] = p7;
    p2 = p2 * 2 % 15;
    p7 = p7 * 7 % 15;
  }
  for (int x2 = 0; x2 < 8; ++x2)
    for (int x1 = 0; x1 < 8; ++x1)
      if (residue2[x1] * residue7[x2] % 15 == 1)
        v(x1 + 8 * x2) = std::exp(-std::numbers::pi * (x1 * x1 + x2 * x2) / 4.0);
  v.normalize();
  return StateVector(v);
}

StateVector regev_state() {
  const Vector grid = regev_grid_state().amps;
  const double w = 2.0 * std::numbers::pi / 8.0;
  Vector out = Vector::Zero(64);
  for (int k2 = 0; k2 < 8; ++k2)
    for (int k1 = 0; k1 < 8; ++k1) {
      complexd acc = 0.0;
      for (int x2 = 0; x2 < 8; ++x2)
        for (int x1 = 0; x1 < 8; ++x1)
          acc += std::exp(kI * (w * (k1 * x1 + k2 * x2))) * grid(x1 + 8 * x2);
      out(k1 + 8 * k2) = acc / 8.0;
    }
  out.normalize();
  return StateVector(out);
}

StateVector ttn_state(int plaintext_len, std::uint64_t seed) {
  bool valid = false;
  for (int len : {5, 10, 15, 20, 25, 30}) valid |= plaintext_len == len;
  if (!valid) throw std::invalid_argument("ttn_state: plaintext length must be one of 5..30 by 5");

  const auto angle = [&](int layer, int qubit) {
    const double raw = std::sin(double(seed) + 31.0 * layer + 7.0 * qubit) * plaintext_len / 30.0;
    return 2.0 * std::numbers::pi * (raw - std::floor(raw));
  };
  const auto rotate = [](Vector& v, int qubit, const Matrix& gate) {
    const int bit = 1 << qubit;
    for (int x = 0; x < 8; ++x)
      if (!(x & bit)) {
        const complexd lo = v(x), hi = v(x | bit);
        v(x) = gate(0, 0) * lo + gate(0, 1) * hi;
        v(x | bit) = gate(1, 0) * lo + gate(1, 1) * hi;
      }
  };
  const auto cnot = [](Vector& v, int control, int target) {
    const int cb = 1 << control, tb = 1 << target;
    for (int x = 0; x < 8; ++x)
      if ((x & cb) && !(x & tb)) std::swap(v(x), v(x | tb));
  };

  Vector v = Vector::Zero(8);
  v(0) = 1.0;
  for (int block = 0; block < 2; ++block) {
    for (int q = 0; q < 3; ++q) {
      const double th = angle(2 * block, q);
      Matrix ry(2, 2);
      ry << std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2);
      rotate(v, q, ry);
    }
    cnot(v, 0, 1);
    cnot(v, 1, 2);
    for (int q = 0; q < 3; ++q) {
      const double th = angle(2 * block + 1, q);
      Matrix rz(2, 2);
      rz << std::exp(-kI * th / 2.0), 0.0, 0.0, std::exp(kI * th / 2.0);
      rotate(v, q, rz);
    }
  }
  v.normalize();
  return StateVector(v);
}

StateVector benchmark_state(const BenchmarkSpec& spec) {
  switch (spec.name) {
    case Benchmark::QKAN: return qkan_state(true);
    case Benchmark::QDrift: return qdrift_state(spec.seed, false);
    case Benchmark::CFQPE: return cfqpe_state();
    case Benchmark::Regev: return regev_state();
    case Benchmark::TTNCrypto: return ttn_state(15, spec.seed);
  }
  throw std::invalid_argument("unknown benchmark");
}

}  // namespace cqec
