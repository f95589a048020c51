// Ground truth: dense qubit Hamiltonians for the fermionic chains, exact
// propagators via eigendecomposition, and the gate-level Trotter circuits.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "mbqc/statevec.hpp"

namespace mbqc {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

struct KitaevParams {
  int N = 2;        // chain sites (one qubit each)
  double w = 1.0;   // hopping/pairing energy, the unit of energy
  double g_mu = 0;  // mu / (2w)
};

struct HubbardParams {
  int N = 2;       // lattice sites (2N spin-orbitals / qubits)
  double w = 1.0;  // hopping energy
  double g_U = 0;  // U / (2w)
};

struct TrotterPlan {
  double t = 0;  // time in units of 1/w
  long M = 1;    // Trotter steps
  double phi_M(double w) const { return w * t / double(M); }
};

// Pauli string helper: op = prod over (qubit index 0-based, axis) acting on
// n qubits, little-endian (qubit i owns bit i), matching Statevector order.
MatC pauli_string(int n, const std::vector<std::pair<int, char>>& ops);
// exp(-i theta/2 * P) for the Pauli string P.
MatC pauli_rotation_matrix(int n,
                           const std::vector<std::pair<int, char>>& ops,
                           double theta);

// H = -w sum_j X_j X_{j+1} - (mu/2) sum_k Z_k with mu = 2 w g_mu.
MatC kitaev_hamiltonian(const KitaevParams& p);
// H = (w/2) sum_k (X_k Z_{k+1} X_{k+2} + Y_k Z_{k+1} Y_{k+2})
//   + (U/4) sum_j (I + Z_{2j-1})(I + Z_{2j}),  U = 2 w g_U.
MatC hubbard_hamiltonian(const HubbardParams& p);

// One first-order Trotter step: prod_j R_xx^{(j,j+1)}(-2 phi) *
// prod_k R_z^{(k)}(-2 g_mu phi).
MatC kitaev_trotter_step(const KitaevParams& p, double phi);
// prod_j [R_zz(g_U phi) R_z R_z] * prod_k [R_xzx(phi) R_yzy(phi)].
MatC hubbard_trotter_step(const HubbardParams& p, double phi);

MatC matrix_power(const MatC& m, long e);

// Phase-coherent exact evolution of a fixed initial state.
class ExactEvolver {
 public:
  ExactEvolver(const MatC& H, const VecC& psi0);
  VecC state_at(double t) const;
  cd overlap_at(double t) const;  // <psi0| e^{-iHt} |psi0>
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

 private:
  Eigen::VectorXd evals_;
  MatC evecs_;
  VecC psi0_;
  VecC coeffs_;  // evecs^dag psi0
};

struct GroundState {
  double energy;
  VecC state;
};
GroundState ground_state(const MatC& H);

// Trotterized evolution to time t with M steps (step^M applied to psi).
VecC trotter_evolve_kitaev(const KitaevParams& p, const TrotterPlan& plan,
                           const VecC& psi);
VecC trotter_evolve_hubbard(const HubbardParams& p, const TrotterPlan& plan,
                            const VecC& psi);

// Conversions between Eigen vectors and the statevector engine
// (labels 1..n, qubit i <-> bit i-1).
Statevector to_statevector(const VecC& v, const std::vector<QubitLabel>& labels);
VecC to_eigen(const Statevector& s);

}  // namespace mbqc
