#include "mbqc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mbqc {

void Graph::add_vertex(QubitLabel v) { verts_.insert(v); }

void Graph::add_edge(QubitLabel a, QubitLabel b) {
  if (a == b) throw std::invalid_argument("no self-loops");
  verts_.insert(a);
  verts_.insert(b);
  edges_.insert({std::min(a, b), std::max(a, b)});
}

void Graph::remove_vertex(QubitLabel v) {
  verts_.erase(v);
  for (auto it = edges_.begin(); it != edges_.end();)
    it = (it->first == v || it->second == v) ? edges_.erase(it) : std::next(it);
}

void Graph::toggle_edge(QubitLabel a, QubitLabel b) {
  if (a == b) throw std::invalid_argument("no self-loops");
  auto e = std::make_pair(std::min(a, b), std::max(a, b));
  if (!edges_.erase(e)) edges_.insert(e);
}

bool Graph::has_vertex(QubitLabel v) const { return verts_.count(v) != 0; }

bool Graph::has_edge(QubitLabel a, QubitLabel b) const {
  return edges_.count({std::min(a, b), std::max(a, b)}) != 0;
}

std::set<QubitLabel> Graph::neighbors(QubitLabel v) const {
  std::set<QubitLabel> n;
  for (const auto& [a, b] : edges_) {
    if (a == v) n.insert(b);
    if (b == v) n.insert(a);
  }
  return n;
}

std::string Graph::to_text() const {
  std::ostringstream os;
  for (QubitLabel v : verts_) os << "v " << v << "\n";
  for (const auto& [a, b] : edges_) os << "e " << a << " " << b << "\n";
  return os.str();
}

Graph Graph::from_text(const std::string& text) {
  Graph g;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag.empty() || tag[0] == '#') continue;
    if (tag == "v") {
      QubitLabel v;
      if (!(ls >> v)) throw std::invalid_argument("bad vertex line: " + line);
      g.add_vertex(v);
    } else if (tag == "e") {
      QubitLabel a, b;
      if (!(ls >> a >> b)) throw std::invalid_argument("bad edge line: " + line);
      g.add_edge(a, b);
    } else {
      throw std::invalid_argument("unknown line tag: " + line);
    }
  }
  return g;
}

Statevector cluster_state(const Graph& g) {
  if (g.vertices().empty()) throw std::invalid_argument("empty graph");
  std::vector<QubitLabel> labels(g.vertices().begin(), g.vertices().end());
  Statevector s = Statevector::plus_register(labels);
  for (const auto& [a, b] : g.edges()) s.apply_cz(a, b);
  return s;
}

double check_stabilizer(const Graph& g, const Statevector& state,
                        QubitLabel j) {
  Statevector k = state;
  k.apply_pauli(j, 'x');
  for (QubitLabel n : g.neighbors(j)) k.apply_pauli(n, 'z');
  return state.overlap(k).real();
}

Graph local_complement(const Graph& g, QubitLabel j) {
  if (!g.has_vertex(j)) throw std::invalid_argument("unknown vertex");
  Graph out = g;
  const std::set<QubitLabel> nb = g.neighbors(j);
  std::vector<QubitLabel> n(nb.begin(), nb.end());
  for (std::size_t a = 0; a < n.size(); ++a)
    for (std::size_t b = a + 1; b < n.size(); ++b) out.toggle_edge(n[a], n[b]);
  return out;
}

LocalUnitaryWord lc_unitary(const Graph& g, QubitLabel j) {
  if (!g.has_vertex(j)) throw std::invalid_argument("unknown vertex");
  LocalUnitaryWord w;
  w.push_last(j, Gen::SqrtXm);
  for (QubitLabel l : g.neighbors(j)) w.push_last(l, Gen::SqrtZp);
  return w;
}

PropagatedProjector propagate_projector(char axis, int m, Gen g) {
  if (m != 1 && m != -1) throw std::invalid_argument("m must be +-1");
  // Solve P_{a,m} U = U P_{a',m'}: sigma_{a'} m' = U^dag sigma_a U m.
  const Mat2 u = gen_matrix(g);
  const Mat2 conj = mat_mul(mat_dagger(u), mat_mul(pauli_matrix(axis), u));
  for (char b : {'x', 'y', 'z'}) {
    const Mat2 p = pauli_matrix(b);
    for (int sgn : {+1, -1}) {
      double err = 0.0;
      for (int k = 0; k < 4; ++k) err += std::abs(conj[k] - double(sgn) * p[k]);
      if (err < 1e-9) return {b, m * sgn};
    }
  }
  throw std::invalid_argument("generator does not map Paulis to Paulis");
}

namespace {

QubitLabel pick_special(const std::set<QubitLabel>& n,
                        SpecialNeighborPolicy policy) {
  return policy == SpecialNeighborPolicy::SmallestLabel ? *n.begin()
                                                        : *n.rbegin();
}

}  // namespace

CompactificationResult project_and_compactify(const Graph& g, QubitLabel site,
                                              char axis, int m,
                                              SpecialNeighborPolicy policy,
                                              const LocalUnitaryWord& prior) {
  if (!g.has_vertex(site)) throw std::invalid_argument("unknown site");
  if (m != 1 && m != -1) throw std::invalid_argument("m must be +-1");

  CompactificationResult res;

  // Move the projector through corrections already sitting on this qubit.
  char a = axis;
  int mm = m;
  auto it = prior.seq.find(site);
  if (it != prior.seq.end()) {
    for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit) {
      auto p = propagate_projector(a, mm, *rit);
      a = p.axis;
      mm = p.m;
    }
    if (a != axis || mm != m) res.rewrites.push_back({site, a, mm != m});
  }

  const std::set<QubitLabel> nj = g.neighbors(site);
  LocalUnitaryWord unew;
  Graph gout = g;

  if (a == 'z' || (a == 'x' && nj.empty())) {
    // Isolated x-measured qubits factor out exactly like z-measured ones.
    gout.remove_vertex(site);
    if (a == 'z' && mm == -1)
      for (QubitLabel l : nj) unew.push_last(l, Gen::Z);
  } else if (a == 'y') {
    gout = local_complement(g, site);
    gout.remove_vertex(site);
    for (QubitLabel l : nj)
      unew.push_last(l, mm == +1 ? Gen::SqrtZm : Gen::SqrtZp);
  } else if (a == 'x') {
    const QubitLabel k = pick_special(nj, policy);
    const std::set<QubitLabel> nk = g.neighbors(k);
    Graph g1 = local_complement(g, k);
    Graph g2 = local_complement(g1, site);
    g2.remove_vertex(site);
    gout = local_complement(g2, k);
    if (mm == +1) {
      unew.push_last(k, Gen::SqrtYp);
      for (QubitLabel l : nj)
        if (l != k && !nk.count(l)) unew.push_last(l, Gen::Z);
    } else {
      unew.push_last(k, Gen::SqrtYm);
      for (QubitLabel l : nk)
        if (l != site && !nj.count(l)) unew.push_last(l, Gen::Z);
    }
  } else {
    throw std::invalid_argument("axis must be x, y or z");
  }

  LocalUnitaryWord prior_rest = prior;
  prior_rest.erase(site);
  res.graph = std::move(gout);
  res.corrections = prior_rest.after(unew);  // unew acts first
  return res;
}

CompactificationResult compactify_sequence(const Graph& g,
                                           const std::vector<QubitLabel>& sites,
                                           const std::vector<char>& axes,
                                           const std::vector<int>& outcomes,
                                           SpecialNeighborPolicy policy) {
  if (sites.size() != axes.size() || sites.size() != outcomes.size())
    throw std::invalid_argument("sites/axes/outcomes must align");
  CompactificationResult res;
  res.graph = g;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    CompactificationResult step;
    try {
      step = project_and_compactify(res.graph, sites[i], axes[i], outcomes[i],
                                    policy, res.corrections);
    } catch (const std::exception& e) {
      throw std::runtime_error("compactification step " + std::to_string(i) +
                               " (site " + std::to_string(sites[i]) +
                               "): " + e.what());
    }
    res.graph = std::move(step.graph);
    res.corrections = std::move(step.corrections);
    for (auto& r : step.rewrites) res.rewrites.push_back(r);
  }
  return res;
}

}  // namespace mbqc
