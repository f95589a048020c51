// Measurement-pattern intermediate representation: sites on block-local
// (row, col) grids, adaptive angle expressions with outcome-parity dependency
// sets, byproduct bookkeeping, and a symbolic gate program used both as the
// execution target and for independent re-derivation of the dependency sets.
#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/graph.hpp"
#include "mbqc/local_unitary.hpp"

namespace mbqc {

struct Site {
  int block = 0;
  int row = 0;
  int col = 0;

  // Injective for row, col < 1000; ordering matches (block, row, col).
  QubitLabel label() const {
    return QubitLabel(block) * 1000000 + row * 1000 + col;
  }
  static Site from_label(QubitLabel l) {
    return {int(l / 1000000), int(l / 1000 % 1000), int(l % 1000)};
  }
  std::string str() const;           // "block:row:col"
  static Site parse(const std::string& token);

  auto operator<=>(const Site&) const = default;
};

using SiteSet = std::set<Site>;

// sign * (-1)^{parity of dep outcomes} * (phi_coeff * phi_M + const_term).
struct AngleExpr {
  int sign = 1;
  double phi_coeff = 0.0;
  double const_term = 0.0;  // radians
  SiteSet deps;

  double eval(double phi_M, const std::map<Site, int>& outcomes) const;
  bool operator==(const AngleExpr&) const = default;
};

enum class Role { Input, Body, Output };

struct PatternNode {
  Site site;
  Role role = Role::Body;
  bool pauli_x = false;             // measured in the x basis
  std::optional<AngleExpr> angle;   // measured adaptively in the x-y plane
  int round = 0;                    // 0 = unmeasured (outputs)
  std::string angle_role;           // names the adaptive angle, e.g. "phi_1,2"

  bool measured() const { return pauli_x || angle.has_value(); }
};

// Outcome-parity exponents of the Z and X byproducts on one output qubit.
struct ByproductTerm {
  SiteSet z_deps;
  SiteSet x_deps;
  bool operator==(const ByproductTerm&) const = default;
};

// One element of the symbolic target-gate program, in temporal order
// (earlier entries act on the state first).  Rot entries carry the
// deterministic target angle plus the intrinsic outcome dependencies of the
// measurement implementing them; Byp entries are byproduct injections.
struct SymOp {
  enum Kind { Rot, Swap, Byp } kind = Rot;
  std::string axes;         // Rot: "z", "zz", "xzx", ...
  std::vector<int> qubits;  // logical wires, 1-based
  std::string role;         // Rot: which adaptive angle drives it
  double base = 0.0;        // Rot: deterministic angle (radians)
  SiteSet deps;             // Rot: intrinsic deps; Byp: exponent deps
  char pauli = 'x';         // Byp: 'x' or 'z'
};

class MeasurementPattern {
 public:
  std::vector<PatternNode> nodes;  // sorted by site
  std::set<std::pair<Site, Site>> edges;
  std::vector<Site> inputs;   // inputs[i] receives logical qubit i+1
  std::vector<Site> outputs;  // outputs[i] carries logical qubit i+1
  std::vector<ByproductTerm> byproduct;  // per output
  double phi_M = 0.0;
  std::string target;        // human-readable descriptor
  std::vector<SymOp> program;
  // Accumulated local corrections on surviving sites (compactified patterns);
  // applied after a site's entangling edges, before its measurement.
  LocalUnitaryWord residual;

  const PatternNode* find(const Site& s) const;
  PatternNode* find(const Site& s);
  std::size_t measured_count() const;
  std::size_t adaptive_count() const;
  int max_round() const;
  void sort_nodes();
  void validate() const;  // throws std::invalid_argument on broken invariants

  std::string to_text() const;
  static MeasurementPattern from_text(const std::string& text);
};

// Connects every nearest-neighbor site pair within each block.
void add_grid_edges(MeasurementPattern& p);

// Builders.  Angles are reduced into (-2pi, 2pi).
MeasurementPattern rzz_pattern(double theta);
MeasurementPattern rzzz_pattern(double theta);
MeasurementPattern euler_leg(double alpha, double beta, double gamma);
MeasurementPattern kitaev_pattern(int N, long M, double g_mu, double phi_M);
MeasurementPattern hubbard_pattern(int N, long M, double g_U, double phi_M);

// Removes every x-measured body node from the pattern by graph-state
// compactification with all outcomes pinned to +.  The tracked local
// corrections land in `residual`; the removed sites disappear from angle and
// byproduct dependency sets (a pinned outcome carries no parity).  The
// distinguished neighbor of an x-removal must never be an input site: inputs
// hold the loaded state rather than |+>, so the removal rules do not apply to
// them.  LargestLabel guarantees this because inputs sit at the lowest row of
// their wire, hence it is fixed here rather than exposed as a parameter.
MeasurementPattern compactify_pattern(const MeasurementPattern& p);

enum class Model { Kitaev, Hubbard };
enum class Representation { Slcs, Ccs, Circuit };

// Measured-site count for one model/representation at chain length N over M
// repeated steps.
long count_resources(Model model, Representation repr, int N, long M);

enum class Regime { MbqcFavorable, CbqcFavorable, Tie };

// Compares per-step wall time T_M ~ N_m * dt_m against T_C ~ N_g * dt_g,
// with dt_ratio = dt_g / dt_m.
Regime runtime_regime(double N_m, double N_g, double dt_ratio);

}  // namespace mbqc
