// Runs measurement patterns on the statevector engine: sampled, forced, or
// exhaustive branch enumeration, with adaptive angle evaluation and final
// byproduct correction.  Also evaluates the symbolic target program and
// re-derives dependency sets from it by Pauli-frame propagation.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mbqc/oracle.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/statevec.hpp"

namespace mbqc {

struct OutcomeRecord {
  std::vector<Site> order;   // measurement order
  std::map<Site, int> s;     // site -> outcome bit
};

struct ExecutionMode {
  enum Kind { Sample, Forced, EnumerateAll } kind = Sample;
  std::uint64_t seed = 0;
  std::map<Site, int> forced;

  static ExecutionMode sample(std::uint64_t seed) {
    return {Sample, seed, {}};
  }
  static ExecutionMode force(std::map<Site, int> outcomes) {
    return {Forced, 0, std::move(outcomes)};
  }
};

struct ExecutionResult {
  Statevector corrected;  // byproduct applied, register in `outputs` order
  Statevector raw;        // pre-correction, same register order
  OutcomeRecord outcomes;
  double probability = 1.0;
  std::string byproduct_word;  // e.g. "X(0:5:1) Z(0:5:3)"
  std::size_t peak_live = 0;   // max simultaneously live qubits
};

// psi_in's i-th register qubit is loaded onto p.inputs[i].
ExecutionResult execute(const MeasurementPattern& p, const Statevector& psi_in,
                        const ExecutionMode& mode);

// Depth-first enumeration of every outcome branch with nonzero probability.
void execute_enumerate(const MeasurementPattern& p, const Statevector& psi_in,
                       const std::function<void(const ExecutionResult&)>& sink);

// Deterministic target unitary of the pattern's symbolic program, acting on
// |inputs| logical qubits (qubit 1 = least significant bit).
MatC target_unitary(const MeasurementPattern& p);

// Independent reconstruction of adaptive dependency sets and byproduct
// exponents by pushing the program's byproduct injections left through the
// rotations (X through a z-type rotation flips its angle, and vice versa).
struct RederiveReport {
  bool ok = true;
  std::string diff;  // human-readable mismatch description, empty when ok
  std::map<std::string, SiteSet> angle_deps;  // angle role -> derived deps
  std::vector<ByproductTerm> byproduct;       // derived, per output
};
RederiveReport rederive_dependencies(const MeasurementPattern& p);

// The frame-propagation pass alone: per-role dependency sets of every
// rotation in the program and the final byproduct exponents per logical wire.
struct DerivedDeps {
  std::map<std::string, SiteSet> angle_deps;
  std::vector<ByproductTerm> byproduct;  // index i = logical wire i+1
};
DerivedDeps derive_program_dependencies(int n_wires,
                                        const std::vector<SymOp>& program);

// Perturbs adaptive measurement angles.  Roles map to absolute angle offsets
// in radians; with `symmetric` set, each role's paired partner (per the
// pattern's pairing table, see pattern builders) receives the same offset.
struct ErrorSpec {
  std::map<std::string, double> eps;
  bool symmetric = true;
};
MeasurementPattern inject_errors(const MeasurementPattern& p,
                                 const ErrorSpec& spec);

// Per-branch global phase of the corrected output against the target unitary.
struct PhaseAuditRow {
  std::string branch;  // outcome bits in measurement order
  double probability = 0.0;
  cd phase;            // <target psi | corrected>, fidelity = |phase|
};
struct PhaseAuditReport {
  std::vector<PhaseAuditRow> rows;
  bool phase_constant = true;  // all branch phases equal within 1e-9
};
PhaseAuditReport phase_audit(const MeasurementPattern& p,
                             const Statevector& psi_in);

}  // namespace mbqc
