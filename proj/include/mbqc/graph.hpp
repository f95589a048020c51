// Graph-state algebra: stabilizers, local complementation, and removal of
// Pauli-measured qubits with tracked local-unitary corrections.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <utility>
#include <vector>

#include "mbqc/local_unitary.hpp"
#include "mbqc/statevec.hpp"

namespace mbqc {

class Graph {
 public:
  Graph() = default;

  void add_vertex(QubitLabel v);
  void add_edge(QubitLabel a, QubitLabel b);  // adds vertices if needed
  void remove_vertex(QubitLabel v);           // drops incident edges
  void toggle_edge(QubitLabel a, QubitLabel b);
  bool has_vertex(QubitLabel v) const;
  bool has_edge(QubitLabel a, QubitLabel b) const;
  std::set<QubitLabel> neighbors(QubitLabel v) const;

  const std::set<QubitLabel>& vertices() const { return verts_; }
  const std::set<std::pair<QubitLabel, QubitLabel>>& edges() const {
    return edges_;
  }

  bool operator==(const Graph&) const = default;

  // Text format: `v <label>` lines, then `e <label> <label>` lines.
  std::string to_text() const;
  static Graph from_text(const std::string& text);

 private:
  std::set<QubitLabel> verts_;
  std::set<std::pair<QubitLabel, QubitLabel>> edges_;  // (min,max)
};

Statevector cluster_state(const Graph& g);
// <state| X_j Prod_{k in N_j} Z_k |state>
double check_stabilizer(const Graph& g, const Statevector& state, QubitLabel j);

Graph local_complement(const Graph& g, QubitLabel j);
// Word U with cluster_state(local_complement(g,j)) = U cluster_state(g)
// up to global phase: sqrt(-iX_j) * Prod_{l in N_j} sqrt(+iZ_l).
LocalUnitaryWord lc_unitary(const Graph& g, QubitLabel j);

// Moves a Pauli projector P_{axis,m} through one generator U:
// P_{axis,m} U = U P_{axis',m'}.  m is +-1.
struct PropagatedProjector {
  char axis;
  int m;
};
PropagatedProjector propagate_projector(char axis, int m, Gen g);

// Which neighbor plays the distinguished role for an x-basis removal.
enum class SpecialNeighborPolicy { SmallestLabel, LargestLabel };

struct CompactificationResult {
  Graph graph;                   // the compactified cluster state's graph
  LocalUnitaryWord corrections;  // applied to cluster_state(graph)
  // (site, axis measured after propagation, outcome sign flipped?)
  struct Rewrite {
    QubitLabel site;
    char axis;
    bool flipped;
  };
  std::vector<Rewrite> rewrites;
};

// Removes `site` (measured in the given Pauli basis with outcome m = +-1)
// from the cluster state described by (g, prior corrections), per the
// graph-state Pauli-measurement rules.  The incoming projector is first
// propagated through any prior corrections recorded on `site`.
CompactificationResult project_and_compactify(
    const Graph& g, QubitLabel site, char axis, int m,
    SpecialNeighborPolicy policy = SpecialNeighborPolicy::SmallestLabel,
    const LocalUnitaryWord& prior = {});

CompactificationResult compactify_sequence(
    const Graph& g, const std::vector<QubitLabel>& sites,
    const std::vector<char>& axes, const std::vector<int>& outcomes,
    SpecialNeighborPolicy policy = SpecialNeighborPolicy::SmallestLabel);

}  // namespace mbqc
