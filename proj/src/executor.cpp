#include "mbqc/executor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mbqc {

namespace {

std::vector<const PatternNode*> measurement_schedule(
    const MeasurementPattern& p) {
  std::vector<const PatternNode*> order;
  for (const auto& n : p.nodes)
    if (n.measured()) order.push_back(&n);
  std::sort(order.begin(), order.end(),
            [](const PatternNode* a, const PatternNode* b) {
              return std::tie(a->round, a->site) < std::tie(b->round, b->site);
            });
  return order;
}

struct Walk {
  Statevector st;
  std::set<QubitLabel> attached;
  std::set<std::pair<QubitLabel, QubitLabel>> edges_done;
  OutcomeRecord rec;
  double prob = 1.0;
  std::size_t peak = 0;
};

Walk start_walk(const MeasurementPattern& p, const Statevector& psi_in) {
  if (psi_in.num_qubits() != p.inputs.size())
    throw std::invalid_argument("input state size does not match pattern");
  std::vector<QubitLabel> labels;
  for (const Site& s : p.inputs) labels.push_back(s.label());
  Walk w;
  w.st = Statevector::from_amplitudes(labels, psi_in.amps());
  w.attached.insert(labels.begin(), labels.end());
  w.peak = w.st.num_qubits();
  return w;
}

void attach(Walk& w, QubitLabel q) {
  if (w.attached.insert(q).second) w.st.attach_plus(q);
}

// Applies every pattern edge whose endpoints are both live.
void settle_edges(const MeasurementPattern& p, Walk& w) {
  for (const auto& [a, b] : p.edges) {
    auto key = std::make_pair(a.label(), b.label());
    if (w.edges_done.count(key)) continue;
    if (!w.attached.count(key.first) || !w.attached.count(key.second))
      continue;
    w.st.apply_cz(key.first, key.second);
    w.edges_done.insert(key);
  }
  w.peak = std::max(w.peak, w.st.num_qubits());
}

void apply_residual(const MeasurementPattern& p, Walk& w, QubitLabel q) {
  if (!p.residual.seq.count(q)) return;
  const Mat2 m = p.residual.matrix(q);
  const cd mm[4] = {m[0], m[1], m[2], m[3]};
  w.st.apply_single(q, mm);
}

// Attaches the node's neighborhood, entangles, and measures it.
void measure_node(const MeasurementPattern& p, Walk& w, const PatternNode& n,
                  MeasureMode mode) {
  const QubitLabel q = n.site.label();
  attach(w, q);
  for (const auto& [a, b] : p.edges) {
    if (a.label() == q) attach(w, b.label());
    if (b.label() == q) attach(w, a.label());
  }
  settle_edges(p, w);
  apply_residual(p, w, q);
  const double angle = n.pauli_x ? 0.0 : n.angle->eval(p.phi_M, w.rec.s);
  MeasureResult r = w.st.measure_xy(q, angle, mode);
  w.rec.order.push_back(n.site);
  w.rec.s[n.site] = r.outcome;
  w.prob *= r.prob;
}

ExecutionResult finish_walk(const MeasurementPattern& p, Walk w) {
  for (const Site& s : p.outputs) attach(w, s.label());
  settle_edges(p, w);
  if (w.edges_done.size() != p.edges.size())
    throw std::logic_error("pattern edges left unapplied");
  for (const Site& s : p.outputs) apply_residual(p, w, s.label());

  ExecutionResult res;
  std::vector<QubitLabel> out_labels;
  for (const Site& s : p.outputs) out_labels.push_back(s.label());
  res.raw = w.st;
  res.raw.permute_to(out_labels);

  std::string word;
  for (std::size_t i = 0; i < p.outputs.size(); ++i) {
    int xpar = 0, zpar = 0;
    for (const Site& d : p.byproduct[i].x_deps) xpar ^= w.rec.s.at(d);
    for (const Site& d : p.byproduct[i].z_deps) zpar ^= w.rec.s.at(d);
    if (xpar) {
      w.st.apply_pauli(out_labels[i], 'x');
      word += (word.empty() ? "" : " ") + ("X(" + p.outputs[i].str() + ")");
    }
    if (zpar) {
      w.st.apply_pauli(out_labels[i], 'z');
      word += (word.empty() ? "" : " ") + ("Z(" + p.outputs[i].str() + ")");
    }
  }
  w.st.permute_to(out_labels);
  res.corrected = std::move(w.st);
  res.outcomes = std::move(w.rec);
  res.probability = w.prob;
  res.byproduct_word = std::move(word);
  res.peak_live = w.peak;
  return res;
}

}  // namespace

ExecutionResult execute(const MeasurementPattern& p, const Statevector& psi_in,
                        const ExecutionMode& mode) {
  p.validate();
  if (mode.kind == ExecutionMode::EnumerateAll)
    throw std::invalid_argument("use execute_enumerate for enumeration");
  std::mt19937_64 rng(mode.seed);
  Walk w = start_walk(p, psi_in);
  for (const PatternNode* n : measurement_schedule(p)) {
    MeasureMode mm = MeasureMode::sample(rng);
    if (mode.kind == ExecutionMode::Forced) {
      auto it = mode.forced.find(n->site);
      if (it == mode.forced.end())
        throw std::invalid_argument("no forced outcome for " + n->site.str());
      mm = MeasureMode::forced(it->second);
    }
    measure_node(p, w, *n, mm);
  }
  return finish_walk(p, std::move(w));
}

void execute_enumerate(
    const MeasurementPattern& p, const Statevector& psi_in,
    const std::function<void(const ExecutionResult&)>& sink) {
  p.validate();
  const auto schedule = measurement_schedule(p);
  std::function<void(Walk, std::size_t)> dfs = [&](Walk w, std::size_t i) {
    if (i == schedule.size()) {
      sink(finish_walk(p, std::move(w)));
      return;
    }
    for (int s : {0, 1}) {
      Walk branch = w;
      try {
        measure_node(p, branch, *schedule[i], MeasureMode::forced(s));
      } catch (const ImpossibleBranch&) {
        continue;
      }
      dfs(std::move(branch), i + 1);
    }
  };
  dfs(start_walk(p, psi_in), 0);
}

MatC target_unitary(const MeasurementPattern& p) {
  const int n = int(p.inputs.size());
  const long d = 1L << n;
  MatC u = MatC::Identity(d, d);
  for (const auto& op : p.program) {
    switch (op.kind) {
      case SymOp::Rot: {
        std::vector<std::pair<int, char>> ops;
        for (std::size_t i = 0; i < op.qubits.size(); ++i)
          ops.push_back({op.qubits[i] - 1, op.axes.at(i)});
        u = pauli_rotation_matrix(n, ops, op.base) * u;
        break;
      }
      case SymOp::Swap: {
        const int a = op.qubits.at(0) - 1, b = op.qubits.at(1) - 1;
        MatC s = MatC::Zero(d, d);
        for (long v = 0; v < d; ++v) {
          long bit_a = (v >> a) & 1, bit_b = (v >> b) & 1;
          long t = (v & ~(1L << a) & ~(1L << b)) | (bit_a << b) | (bit_b << a);
          s(t, v) = 1.0;
        }
        u = s * u;
        break;
      }
      case SymOp::Byp:
        break;  // byproducts do not enter the deterministic target
    }
  }
  return u;
}

namespace {

void sym_diff(SiteSet& into, const SiteSet& other) {
  for (const Site& s : other)
    if (!into.erase(s)) into.insert(s);
}

std::string set_str(const SiteSet& ss) {
  std::string out = "{";
  for (const Site& s : ss) out += s.str() + " ";
  return out + "}";
}

}  // namespace

DerivedDeps derive_program_dependencies(int n_wires,
                                        const std::vector<SymOp>& program) {
  // Pauli frame per wire, 1-based
  std::vector<SiteSet> fx(n_wires + 1), fz(n_wires + 1);
  DerivedDeps out;

  for (const auto& op : program) {
    switch (op.kind) {
      case SymOp::Swap:
        std::swap(fx[op.qubits.at(0)], fx[op.qubits.at(1)]);
        std::swap(fz[op.qubits.at(0)], fz[op.qubits.at(1)]);
        break;
      case SymOp::Byp:
        sym_diff(op.pauli == 'x' ? fx[op.qubits.at(0)] : fz[op.qubits.at(0)],
                 op.deps);
        break;
      case SymOp::Rot: {
        SiteSet deps = op.deps;
        for (std::size_t i = 0; i < op.qubits.size(); ++i) {
          const int q = op.qubits[i];
          const char a = op.axes.at(i);
          if (a == 'z' || a == 'y') sym_diff(deps, fx[q]);
          if (a == 'x' || a == 'y') sym_diff(deps, fz[q]);
        }
        if (!op.role.empty()) {
          auto [it, fresh] = out.angle_deps.insert({op.role, deps});
          if (!fresh)
            throw std::invalid_argument("duplicate rotation role " + op.role);
        }
        break;
      }
    }
  }
  for (int q = 1; q <= n_wires; ++q) out.byproduct.push_back({fz[q], fx[q]});
  return out;
}

RederiveReport rederive_dependencies(const MeasurementPattern& p) {
  const int n = int(p.inputs.size());
  RederiveReport rep;
  DerivedDeps derived = derive_program_dependencies(n, p.program);
  rep.angle_deps = std::move(derived.angle_deps);
  rep.byproduct = std::move(derived.byproduct);

  // Compare against the transcribed pattern fields.
  for (const auto& node : p.nodes) {
    if (!node.angle) continue;
    auto it = rep.angle_deps.find(node.angle_role);
    if (it == rep.angle_deps.end()) {
      rep.diff += "no program rotation for role " + node.angle_role + "\n";
    } else if (it->second != node.angle->deps) {
      rep.diff += "role " + node.angle_role + ": transcribed " +
                  set_str(node.angle->deps) + " derived " +
                  set_str(it->second) + "\n";
    }
  }
  for (std::size_t i = 0; i < p.byproduct.size(); ++i) {
    if (rep.byproduct[i].z_deps != p.byproduct[i].z_deps)
      rep.diff += "output " + p.outputs[i].str() + " Z: transcribed " +
                  set_str(p.byproduct[i].z_deps) + " derived " +
                  set_str(rep.byproduct[i].z_deps) + "\n";
    if (rep.byproduct[i].x_deps != p.byproduct[i].x_deps)
      rep.diff += "output " + p.outputs[i].str() + " X: transcribed " +
                  set_str(p.byproduct[i].x_deps) + " derived " +
                  set_str(rep.byproduct[i].x_deps) + "\n";
  }
  rep.ok = rep.diff.empty();
  return rep;
}

MeasurementPattern inject_errors(const MeasurementPattern& p,
                                 const ErrorSpec& spec) {
  MeasurementPattern out = p;
  for (const auto& [role, eps] : spec.eps) {
    bool hit = false;
    for (auto& n : out.nodes)
      if (n.angle && n.angle_role == role) {
        n.angle->const_term += eps;
        hit = true;
      }
    if (!hit) throw std::invalid_argument("no adaptive angle with role " + role);
  }
  return out;
}

PhaseAuditReport phase_audit(const MeasurementPattern& p,
                             const Statevector& psi_in) {
  std::vector<QubitLabel> out_labels;
  for (const Site& s : p.outputs) out_labels.push_back(s.label());
  const Statevector expected =
      to_statevector(target_unitary(p) * to_eigen(psi_in), out_labels);

  PhaseAuditReport rep;
  execute_enumerate(p, psi_in, [&](const ExecutionResult& r) {
    PhaseAuditRow row;
    for (const Site& s : r.outcomes.order)
      row.branch += char('0' + r.outcomes.s.at(s));
    row.probability = r.probability;
    row.phase = expected.overlap(r.corrected);
    rep.rows.push_back(row);
  });
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (std::abs(rep.rows[i].phase - rep.rows[0].phase) > 1e-9)
      rep.phase_constant = false;
  return rep;
}

}  // namespace mbqc
