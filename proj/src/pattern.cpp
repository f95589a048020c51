#include "mbqc/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mbqc {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double reduce_angle(double a) { return std::fmod(a, kTwoPi); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// Nearest-neighbor edges on the per-block (row, col) grid.
void add_grid_edges(MeasurementPattern& p) {
  std::set<Site> sites;
  for (const auto& n : p.nodes) sites.insert(n.site);
  for (const Site& s : sites)
    for (Site t : {Site{s.block, s.row + 1, s.col},
                   Site{s.block, s.row, s.col + 1}})
      if (sites.count(t)) p.edges.insert({s, t});
}

namespace {

PatternNode xnode(Site s, Role role) {
  PatternNode n;
  n.site = s;
  n.role = role;
  n.pauli_x = true;
  n.round = 1;
  return n;
}

PatternNode adaptive_node(Site s, int round, AngleExpr e, std::string role) {
  PatternNode n;
  n.site = s;
  n.role = Role::Body;
  n.angle = std::move(e);
  n.round = round;
  n.angle_role = std::move(role);
  return n;
}

PatternNode output_node(Site s) {
  PatternNode n;
  n.site = s;
  n.role = Role::Output;
  return n;
}

}  // namespace

std::string Site::str() const {
  return std::to_string(block) + ":" + std::to_string(row) + ":" +
         std::to_string(col);
}

Site Site::parse(const std::string& token) {
  Site s;
  if (std::sscanf(token.c_str(), "%d:%d:%d", &s.block, &s.row, &s.col) != 3)
    throw std::invalid_argument("bad site token: " + token);
  return s;
}

double AngleExpr::eval(double phi_M,
                       const std::map<Site, int>& outcomes) const {
  int parity = 0;
  for (const Site& d : deps) {
    auto it = outcomes.find(d);
    if (it == outcomes.end())
      throw std::invalid_argument("angle depends on unmeasured site " +
                                  d.str());
    parity ^= (it->second & 1);
  }
  double mag = phi_coeff * phi_M + const_term;
  return (parity ? -sign : sign) * mag;
}

// Nodes are kept sorted by site, so lookups bisect.
const PatternNode* MeasurementPattern::find(const Site& s) const {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), s,
      [](const PatternNode& n, const Site& x) { return n.site < x; });
  return (it != nodes.end() && it->site == s) ? &*it : nullptr;
}

PatternNode* MeasurementPattern::find(const Site& s) {
  auto it = std::lower_bound(
      nodes.begin(), nodes.end(), s,
      [](const PatternNode& n, const Site& x) { return n.site < x; });
  return (it != nodes.end() && it->site == s) ? &*it : nullptr;
}

std::size_t MeasurementPattern::measured_count() const {
  std::size_t c = 0;
  for (const auto& n : nodes)
    if (n.measured()) ++c;
  return c;
}

std::size_t MeasurementPattern::adaptive_count() const {
  std::size_t c = 0;
  for (const auto& n : nodes)
    if (n.angle) ++c;
  return c;
}

int MeasurementPattern::max_round() const {
  int r = 0;
  for (const auto& n : nodes) r = std::max(r, n.round);
  return r;
}

void MeasurementPattern::sort_nodes() {
  std::sort(nodes.begin(), nodes.end(),
            [](const PatternNode& a, const PatternNode& b) {
              return a.site < b.site;
            });
}

void MeasurementPattern::validate() const {
  std::set<Site> seen;
  for (const auto& n : nodes) {
    if (!seen.insert(n.site).second)
      throw std::invalid_argument("duplicate site " + n.site.str());
    if (n.pauli_x && n.angle)
      throw std::invalid_argument("node is both x-basis and adaptive: " +
                                  n.site.str());
    if (n.measured() != (n.round > 0))
      throw std::invalid_argument("round/basis mismatch at " + n.site.str());
    if (n.role == Role::Output && n.measured())
      throw std::invalid_argument("output site is measured: " + n.site.str());
    if (n.role != Role::Output && !n.measured())
      throw std::invalid_argument("non-output site unmeasured: " +
                                  n.site.str());
  }
  auto measured_before = [&](const Site& d, int round) {
    const PatternNode* m = find(d);
    return m && m->measured() && m->round < round;
  };
  for (const auto& n : nodes)
    if (n.angle)
      for (const Site& d : n.angle->deps)
        if (!measured_before(d, n.round))
          throw std::invalid_argument("angle at " + n.site.str() +
                                      " depends on " + d.str() +
                                      " which is not measured earlier");
  if (inputs.size() != outputs.size())
    throw std::invalid_argument("input/output count mismatch");
  for (const Site& s : inputs) {
    const PatternNode* n = find(s);
    if (!n || n->role != Role::Input)
      throw std::invalid_argument("bad input site " + s.str());
  }
  for (const Site& s : outputs) {
    const PatternNode* n = find(s);
    if (!n || n->role != Role::Output)
      throw std::invalid_argument("bad output site " + s.str());
  }
  if (byproduct.size() != outputs.size())
    throw std::invalid_argument("byproduct term per output required");
  for (const auto& t : byproduct)
    for (const SiteSet* ss : {&t.z_deps, &t.x_deps})
      for (const Site& d : *ss) {
        const PatternNode* m = find(d);
        if (!m || !m->measured())
          throw std::invalid_argument("byproduct depends on unmeasured " +
                                      d.str());
      }
  for (const auto& [a, b] : edges)
    if (!find(a) || !find(b))
      throw std::invalid_argument("edge references unknown site");
}

MeasurementPattern rzz_pattern(double theta) {
  const double th = reduce_angle(theta);
  MeasurementPattern p;
  auto S = [](int r, int c) { return Site{0, r, c}; };

  p.inputs = {S(1, 1), S(1, 3)};
  p.outputs = {S(5, 1), S(5, 3)};
  p.nodes.push_back(xnode(S(1, 1), Role::Input));
  p.nodes.push_back(xnode(S(1, 3), Role::Input));
  for (auto [r, c] : {std::pair{2, 1}, {2, 3}, {3, 1}, {3, 2}, {3, 3},
                      {4, 1}, {4, 3}})
    p.nodes.push_back(xnode(S(r, c), Role::Body));
  AngleExpr phi{-1, 0.0, th, {S(2, 1), S(2, 3), S(3, 2)}};
  p.nodes.push_back(adaptive_node(S(2, 2), 2, phi, "phi_1,2"));
  p.nodes.push_back(output_node(S(5, 1)));
  p.nodes.push_back(output_node(S(5, 3)));
  p.sort_nodes();
  add_grid_edges(p);

  // The byproduct exponents are derived on the input side of the implemented
  // gate; pushing the word through the swap exchanges the two wires, so the
  // exponents listed for logical qubit 1 land on the output carrying qubit 2.
  p.byproduct = {
      {{S(1, 3), S(2, 2), S(3, 1)}, {S(2, 3), S(3, 2), S(4, 1)}},
      {{S(1, 1), S(2, 2), S(3, 3)}, {S(2, 1), S(3, 2), S(4, 3)}},
  };
  p.target = "rzz(" + fmt17(th) + ")*swap(1,2)";
  p.program.push_back({SymOp::Swap, "", {1, 2}, "", 0.0, {}, 'x'});
  p.program.push_back({SymOp::Rot, "zz", {1, 2}, "phi_1,2", th, phi.deps, 'x'});
  for (int q = 0; q < 2; ++q) {
    p.program.push_back(
        {SymOp::Byp, "", {q + 1}, "", 0.0, p.byproduct[q].x_deps, 'x'});
    p.program.push_back(
        {SymOp::Byp, "", {q + 1}, "", 0.0, p.byproduct[q].z_deps, 'z'});
  }
  p.validate();
  return p;
}

MeasurementPattern rzzz_pattern(double theta) {
  const double th = reduce_angle(theta);
  MeasurementPattern p;
  auto S = [](int r, int c) { return Site{0, r, c}; };

  p.inputs = {S(1, 1), S(1, 3), S(1, 5)};
  p.outputs = {S(7, 1), S(7, 3), S(7, 5)};
  for (int c : {1, 3, 5}) p.nodes.push_back(xnode(S(1, c), Role::Input));
  for (int r = 2; r <= 6; ++r)
    for (int c = 1; c <= 5; ++c) {
      if (r == 6 && (c == 2 || c == 4)) continue;
      if (r == 3 && c == 3) continue;  // the adaptive site
      p.nodes.push_back(xnode(S(r, c), Role::Body));
    }
  AngleExpr phi{-1, 0.0, th,
                {S(2, 1), S(2, 3), S(2, 5), S(4, 1), S(4, 5), S(5, 2),
                 S(5, 4)}};
  p.nodes.push_back(adaptive_node(S(3, 3), 2, phi, "phi_1,2,3"));
  for (int c : {1, 3, 5}) p.nodes.push_back(output_node(S(7, c)));
  p.sort_nodes();
  add_grid_edges(p);

  // As in the two-qubit case, the swap of wires 1 and 3 inside the target
  // gate exchanges those wires' byproduct exponents; wire 2 is idle.
  p.byproduct = {
      {{S(1, 5), S(2, 4), S(3, 3), S(4, 2), S(5, 1)},
       {S(2, 5), S(3, 4), S(4, 3), S(5, 2), S(6, 1)}},
      {{S(1, 3), S(2, 2), S(2, 4), S(3, 1), S(3, 3), S(3, 5), S(4, 2),
        S(4, 4), S(5, 3)},
       {S(2, 3), S(3, 2), S(3, 4), S(4, 1), S(4, 3), S(4, 5), S(5, 2),
        S(5, 4), S(6, 3)}},
      {{S(1, 1), S(2, 2), S(3, 3), S(4, 4), S(5, 5)},
       {S(2, 1), S(3, 2), S(4, 3), S(5, 4), S(6, 5)}},
  };
  p.target = "rzzz(" + fmt17(th) + ")*swap(1,3)";
  p.program.push_back({SymOp::Swap, "", {1, 3}, "", 0.0, {}, 'x'});
  p.program.push_back(
      {SymOp::Rot, "zzz", {1, 2, 3}, "phi_1,2,3", th, phi.deps, 'x'});
  for (int q = 0; q < 3; ++q) {
    p.program.push_back(
        {SymOp::Byp, "", {q + 1}, "", 0.0, p.byproduct[q].x_deps, 'x'});
    p.program.push_back(
        {SymOp::Byp, "", {q + 1}, "", 0.0, p.byproduct[q].z_deps, 'z'});
  }
  p.validate();
  return p;
}

MeasurementPattern euler_leg(double alpha, double beta, double gamma) {
  const double a = reduce_angle(alpha), b = reduce_angle(beta),
               g = reduce_angle(gamma);
  MeasurementPattern p;
  auto S = [](int r) { return Site{0, r, 1}; };

  p.inputs = {S(1)};
  p.outputs = {S(5)};
  p.nodes.push_back(xnode(S(1), Role::Input));
  AngleExpr e1{-1, 0.0, a, {S(1)}};
  AngleExpr e2{-1, 0.0, b, {S(2)}};
  AngleExpr e3{-1, 0.0, g, {S(1), S(3)}};
  p.nodes.push_back(adaptive_node(S(2), 2, e1, "psi_1"));
  p.nodes.push_back(adaptive_node(S(3), 3, e2, "psi_2"));
  p.nodes.push_back(adaptive_node(S(4), 4, e3, "psi_3"));
  p.nodes.push_back(output_node(S(5)));
  add_grid_edges(p);

  p.byproduct = {{{S(1), S(3)}, {S(2), S(4)}}};
  p.target = "rx(" + fmt17(g) + ")*rz(" + fmt17(b) + ")*rx(" + fmt17(a) + ")";
  p.program.push_back({SymOp::Rot, "x", {1}, "psi_1", a, e1.deps, 'x'});
  p.program.push_back({SymOp::Rot, "z", {1}, "psi_2", b, e2.deps, 'x'});
  p.program.push_back({SymOp::Rot, "x", {1}, "psi_3", g, e3.deps, 'x'});
  p.program.push_back(
      {SymOp::Byp, "", {1}, "", 0.0, p.byproduct[0].x_deps, 'x'});
  p.program.push_back(
      {SymOp::Byp, "", {1}, "", 0.0, p.byproduct[0].z_deps, 'z'});
  p.validate();
  return p;
}

long count_resources(Model model, Representation repr, int N, long M) {
  if (N < 2 || M < 1) throw std::invalid_argument("need N >= 2, M >= 1");
  long per_step = 0;
  if (model == Model::Kitaev)
    per_step = repr == Representation::Slcs ? 17L * N - 10 : 7L * N - 1;
  else
    per_step = repr == Representation::Slcs ? 156L * N - 144 : 34L * N - 32;
  return per_step * M;
}

Regime runtime_regime(double N_m, double N_g, double dt_ratio) {
  if (N_m <= 0 || N_g <= 0 || dt_ratio <= 0)
    throw std::invalid_argument("inputs must be positive");
  const double r = N_m / (N_g * dt_ratio);  // T_M / T_C
  if (std::abs(r - 1.0) < 1e-9) return Regime::Tie;
  return r < 1.0 ? Regime::MbqcFavorable : Regime::CbqcFavorable;
}

}  // namespace mbqc
