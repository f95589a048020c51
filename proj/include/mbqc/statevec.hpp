// Dense complex statevector over a dynamic register of labeled qubits.
// Qubits are attached lazily and removed when measured, so large measurement
// patterns can be simulated with only the live frontier in memory.
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbqc {

using QubitLabel = std::int64_t;
using cd = std::complex<double>;

// Raised when a forced measurement outcome has (numerically) zero probability.
struct ImpossibleBranch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How a projective measurement picks its outcome.
struct MeasureMode {
  enum Kind { Sample, Forced } kind = Sample;
  int forced_outcome = 0;            // 0/1 (xy) or +1/-1 mapped to 0/1 (pauli)
  std::mt19937_64* rng = nullptr;    // required for Sample

  static MeasureMode sample(std::mt19937_64& gen) { return {Sample, 0, &gen}; }
  static MeasureMode forced(int s) { return {Forced, s, nullptr}; }
};

struct MeasureResult {
  int outcome = 0;     // s in {0,1}; for Pauli measurements s=0 means +1
  double prob = 1.0;   // Born probability of the realized outcome
};

// Little-endian bit convention: the i-th label in the register owns bit i of
// every amplitude index.  The order is deterministic: attach order.
class Statevector {
 public:
  Statevector() = default;

  static Statevector plus_register(const std::vector<QubitLabel>& labels);
  static Statevector from_amplitudes(std::vector<QubitLabel> labels,
                                     std::vector<cd> amps);

  std::size_t num_qubits() const { return labels_.size(); }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<QubitLabel>& labels() const { return labels_; }
  const std::vector<cd>& amps() const { return amps_; }
  bool has_qubit(QubitLabel q) const;
  double norm() const;

  void attach_plus(QubitLabel q);
  void apply_cz(QubitLabel j, QubitLabel k);
  // axes entries are 'x', 'y' or 'z'; implements exp(-i theta/2 * P).
  void apply_pauli_rotation(const std::vector<char>& axes,
                            const std::vector<QubitLabel>& sites, double theta);
  void apply_pauli(QubitLabel q, char axis);
  // Arbitrary single-qubit unitary, row-major 2x2: {u00, u01, u10, u11}.
  void apply_single(QubitLabel q, const cd m[4]);

  // Measurement in the x-y plane basis (|0> + (-1)^s e^{i phibar} |1>)/sqrt(2).
  // The measured qubit is removed from the register.
  MeasureResult measure_xy(QubitLabel q, double phibar, MeasureMode mode);
  // Pauli measurement; outcome 0 <-> eigenvalue +1.
  MeasureResult measure_pauli(QubitLabel q, char axis, MeasureMode mode);

  cd overlap(const Statevector& other) const;  // <this|other>, same label order
  // Reorders the register (and amplitudes) to the given label permutation.
  void permute_to(const std::vector<QubitLabel>& new_order);

  // One line per basis state: bitstring<TAB>re<TAB>im (bit i = label i).
  std::string debug_dump() const;

 private:
  int index_of(QubitLabel q) const;  // throws on unknown label
  MeasureResult project_out(QubitLabel q, const cd bra0, const cd bra1,
                            MeasureMode mode, bool renorm_half_basis);

  std::vector<QubitLabel> labels_;
  std::vector<cd> amps_;
};

}  // namespace mbqc
