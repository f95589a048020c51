#include "mbqc/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace mbqc {

namespace {
const cd kI(0.0, 1.0);

Eigen::Matrix2cd pauli2(char axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, -kI, kI, 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    case 'i': m.setIdentity(); break;
    default: throw std::invalid_argument("bad axis");
  }
  return m;
}
}  // namespace

MatC pauli_string(int n, const std::vector<std::pair<int, char>>& ops) {
  std::vector<char> axes(n, 'i');
  for (auto [q, a] : ops) {
    if (q < 0 || q >= n) throw std::invalid_argument("qubit out of range");
    axes[q] = a;
  }
  // Little-endian: qubit 0 owns bit 0, so it is the innermost kron factor and
  // higher qubits wrap around it as the slower-varying blocks.
  MatC m = pauli2(axes[0]);
  for (int q = 1; q < n; ++q) {
    MatC next(m.rows() * 2, m.cols() * 2);
    Eigen::Matrix2cd p = pauli2(axes[q]);
    next.block(0, 0, m.rows(), m.cols()) = m * p(0, 0);
    next.block(0, m.cols(), m.rows(), m.cols()) = m * p(0, 1);
    next.block(m.rows(), 0, m.rows(), m.cols()) = m * p(1, 0);
    next.block(m.rows(), m.cols(), m.rows(), m.cols()) = m * p(1, 1);
    m = std::move(next);
  }
  return m;
}

MatC pauli_rotation_matrix(int n,
                           const std::vector<std::pair<int, char>>& ops,
                           double theta) {
  const long d = 1L << n;
  MatC p = pauli_string(n, ops);
  return std::cos(theta / 2) * MatC::Identity(d, d) -
         kI * std::sin(theta / 2) * p;
}

MatC kitaev_hamiltonian(const KitaevParams& p) {
  if (p.N < 2 || p.N > 12) throw std::invalid_argument("N out of range");
  const long d = 1L << p.N;
  MatC h = MatC::Zero(d, d);
  for (int j = 0; j + 1 < p.N; ++j)
    h -= p.w * pauli_string(p.N, {{j, 'x'}, {j + 1, 'x'}});
  for (int k = 0; k < p.N; ++k)
    h -= p.w * p.g_mu * pauli_string(p.N, {{k, 'z'}});
  return h;
}

MatC hubbard_hamiltonian(const HubbardParams& p) {
  const int n = 2 * p.N;
  if (p.N < 2 || n > 12) throw std::invalid_argument("N out of range");
  const long d = 1L << n;
  const double U = 2.0 * p.w * p.g_U;
  MatC h = MatC::Zero(d, d);
  for (int k = 0; k + 2 < n; ++k) {
    h += (p.w / 2) * pauli_string(n, {{k, 'x'}, {k + 1, 'z'}, {k + 2, 'x'}});
    h += (p.w / 2) * pauli_string(n, {{k, 'y'}, {k + 1, 'z'}, {k + 2, 'y'}});
  }
  const MatC id = MatC::Identity(d, d);
  for (int j = 0; j < p.N; ++j) {
    MatC za = pauli_string(n, {{2 * j, 'z'}});
    MatC zb = pauli_string(n, {{2 * j + 1, 'z'}});
    h += (U / 4) * (id + za) * (id + zb);
  }
  return h;
}

MatC kitaev_trotter_step(const KitaevParams& p, double phi) {
  const long d = 1L << p.N;
  MatC step = MatC::Identity(d, d);
  // Written order: product of R_xx factors, then product of R_z factors;
  // the leftmost factor acts last.
  for (int k = 0; k < p.N; ++k)
    step = pauli_rotation_matrix(p.N, {{k, 'z'}}, -2 * p.g_mu * phi) * step;
  for (int j = 0; j + 1 < p.N; ++j)
    step = pauli_rotation_matrix(p.N, {{j, 'x'}, {j + 1, 'x'}}, -2 * phi) * step;
  return step;
}

MatC hubbard_trotter_step(const HubbardParams& p, double phi) {
  const int n = 2 * p.N;
  const long d = 1L << n;
  MatC step = MatC::Identity(d, d);
  for (int k = 0; k + 2 < n; ++k) {
    step = pauli_rotation_matrix(n, {{k, 'y'}, {k + 1, 'z'}, {k + 2, 'y'}},
                                 phi) * step;
    step = pauli_rotation_matrix(n, {{k, 'x'}, {k + 1, 'z'}, {k + 2, 'x'}},
                                 phi) * step;
  }
  for (int j = 0; j < p.N; ++j) {
    step = pauli_rotation_matrix(n, {{2 * j + 1, 'z'}}, p.g_U * phi) * step;
    step = pauli_rotation_matrix(n, {{2 * j, 'z'}}, p.g_U * phi) * step;
    step = pauli_rotation_matrix(n, {{2 * j, 'z'}, {2 * j + 1, 'z'}},
                                 p.g_U * phi) * step;
  }
  return step;
}

MatC matrix_power(const MatC& m, long e) {
  MatC base = m;
  MatC acc = MatC::Identity(m.rows(), m.cols());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

ExactEvolver::ExactEvolver(const MatC& H, const VecC& psi0) : psi0_(psi0) {
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  Eigen::SelfAdjointEigenSolver<MatC> es(H);
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
  coeffs_ = evecs_.adjoint() * psi0_;
}

VecC ExactEvolver::state_at(double t) const {
  VecC phased = coeffs_;
  for (long j = 0; j < phased.size(); ++j)
    phased[j] *= std::exp(-kI * evals_[j] * t);
  return evecs_ * phased;
}

cd ExactEvolver::overlap_at(double t) const {
  cd acc(0, 0);
  for (long j = 0; j < coeffs_.size(); ++j)
    acc += std::norm(coeffs_[j]) * std::exp(-kI * evals_[j] * t);
  return acc;
}

GroundState ground_state(const MatC& H) {
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  Eigen::SelfAdjointEigenSolver<MatC> es(H);
  VecC v = es.eigenvectors().col(0);
  // Deterministic phase: first amplitude of significant magnitude made
  // real and positive.
  for (long i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-9) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      break;
    }
  return {es.eigenvalues()[0], v};
}

VecC trotter_evolve_kitaev(const KitaevParams& p, const TrotterPlan& plan,
                           const VecC& psi) {
  MatC step = kitaev_trotter_step(p, plan.phi_M(p.w));
  return matrix_power(step, plan.M) * psi;
}

VecC trotter_evolve_hubbard(const HubbardParams& p, const TrotterPlan& plan,
                            const VecC& psi) {
  const double phi = plan.phi_M(p.w);
  MatC step = hubbard_trotter_step(p, plan.phi_M(p.w));
  // The gate product realizes the interaction term only up to the identity
  // part of (U/4)(I+Z)(I+Z); restore that phase so the evolution is
  // phase-coherent against exp(-iHt).
  const cd phase = std::exp(cd(0, -p.N * p.g_U * phi / 2));
  return std::pow(phase, double(plan.M)) * (matrix_power(step, plan.M) * psi);
}

Statevector to_statevector(const VecC& v,
                           const std::vector<QubitLabel>& labels) {
  std::vector<cd> amps(v.data(), v.data() + v.size());
  return Statevector::from_amplitudes(labels, std::move(amps));
}

VecC to_eigen(const Statevector& s) {
  VecC v(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) v[i] = s.amps()[i];
  return v;
}

}  // namespace mbqc
