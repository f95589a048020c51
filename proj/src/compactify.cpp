#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "mbqc/graph.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

MeasurementPattern compactify_pattern(const MeasurementPattern& p) {
  const auto policy = SpecialNeighborPolicy::LargestLabel;
  p.validate();

  Graph g;
  for (const auto& n : p.nodes) g.add_vertex(n.site.label());
  for (const auto& [a, b] : p.edges) g.add_edge(a.label(), b.label());

  // Remove the x-measured body nodes in measurement order; the wire entries
  // (inputs) keep their x measurement, and everything adaptive survives.
  std::vector<const PatternNode*> gone;
  for (const auto& n : p.nodes)
    if (n.role == Role::Body && n.pauli_x) gone.push_back(&n);
  std::sort(gone.begin(), gone.end(),
            [](const PatternNode* a, const PatternNode* b) {
              return std::tie(a->round, a->site) < std::tie(b->round, b->site);
            });

  std::vector<QubitLabel> sites;
  std::set<Site> removed;
  for (const PatternNode* n : gone) {
    sites.push_back(n->site.label());
    removed.insert(n->site);
  }
  const std::vector<char> axes(sites.size(), 'x');
  const std::vector<int> outcomes(sites.size(), +1);
  CompactificationResult res =
      compactify_sequence(g, sites, axes, outcomes, policy);

  auto prune = [&](const SiteSet& s) {
    SiteSet kept;
    for (const Site& d : s)
      if (!removed.count(d)) kept.insert(d);
    return kept;
  };

  MeasurementPattern out;
  for (const auto& n : p.nodes) {
    if (removed.count(n.site)) continue;
    PatternNode m = n;
    if (m.angle) m.angle->deps = prune(m.angle->deps);
    out.nodes.push_back(std::move(m));
  }
  if (res.graph.vertices().size() != out.nodes.size())
    throw std::logic_error("compactified graph lost a surviving site");
  for (const auto& [a, b] : res.graph.edges())
    out.edges.insert({std::min(Site::from_label(a), Site::from_label(b)),
                      std::max(Site::from_label(a), Site::from_label(b))});

  out.inputs = p.inputs;
  out.outputs = p.outputs;
  for (const auto& t : p.byproduct)
    out.byproduct.push_back({prune(t.z_deps), prune(t.x_deps)});
  out.phi_M = p.phi_M;
  out.target = p.target;
  out.program = p.program;
  out.residual = p.residual.after(res.corrections);

  out.sort_nodes();
  out.validate();
  return out;
}

}  // namespace mbqc
