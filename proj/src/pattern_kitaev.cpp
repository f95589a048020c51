// Measurement pattern for M Trotter steps of the transverse-field XX chain
// (N sites, field ratio g_mu).  One block per nearest-neighbor bond and step:
// a 13-row two-column strip whose middle rows embed the two-qubit zz-rotation
// pattern and whose outer rows carry the single-qubit Euler legs.  Blocks
// chain left-top to right-bottom; consecutive cores share their boundary site
// and each step's outputs become the next step's inputs.
#include <cmath>
#include <stdexcept>
#include <string>

#include "mbqc/executor.hpp"
#include "mbqc/pattern.hpp"

namespace mbqc {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string q_role(const char* stem, int q, int b) {
  return std::string(stem) + "_q" + std::to_string(q) + "@" + std::to_string(b);
}

PatternNode x_at(Site s, Role role, int round) {
  PatternNode n;
  n.site = s;
  n.role = role;
  n.pauli_x = true;
  n.round = round;
  return n;
}

PatternNode adaptive_at(Site s, int round, AngleExpr e, std::string role) {
  PatternNode n;
  n.site = s;
  n.angle = std::move(e);
  n.round = round;
  n.angle_role = std::move(role);
  return n;
}

PatternNode output_at(Site s) {
  PatternNode n;
  n.site = s;
  n.role = Role::Output;
  return n;
}

}  // namespace

MeasurementPattern kitaev_pattern(int N, long M, double g_mu, double phi_M) {
  if (N < 2 || M < 1) throw std::invalid_argument("need N >= 2, M >= 1");
  // The bond rotation R_xx is conjugated into R_zz by y-axis quarter turns,
  // realized as x-z-x Euler triples with these angles; the on-site z-rotation
  // R_z(-2 g_mu phi_M) merges into the adjacent x-rotation slot.
  const double alpha = -M_PI / 2, beta = M_PI / 2, gamma = M_PI / 2;
  const int bps = N - 1;  // blocks per step

  MeasurementPattern p;
  p.phi_M = phi_M;
  auto K = [](int b, int r, int c) { return Site{b, r, c}; };

  auto add_byp = [&](int wire, char pauli, SiteSet deps) {
    p.program.push_back({SymOp::Byp, "", {wire}, "", 0.0, std::move(deps),
                         pauli});
  };
  auto add_rot = [&](const std::string& axes, std::vector<int> wires,
                     std::string role, double base, SiteSet intrinsic = {}) {
    p.program.push_back({SymOp::Rot, axes, std::move(wires), std::move(role),
                         base, std::move(intrinsic), 'x'});
  };

  for (long m = 1; m <= M; ++m) {
    for (int j = 1; j < N; ++j) {
      const int b = int((m - 1) * bps + j);
      const int base = (b - 1) * 12;
      const bool first_bond = (j == 1), last_bond = (j == N - 1);
      const int wj = j, wk = j + 1;

      // Pre-leg (rows 1-4): R_x(alpha), R_z(beta), R_x(2 g_mu phi_M + gamma).
      // Present for the incoming wire only where the chain starts a step
      // (column 1, first bond) or where a new logical qubit enters (column 3).
      auto pre_leg = [&](int c, int wire, int q) {
        p.nodes.push_back(
            x_at(K(b, 1, c), m == 1 ? Role::Input : Role::Body, base + 1));
        p.nodes.push_back(adaptive_at(K(b, 2, c), base + 2,
                                      {-1, 0.0, alpha, {}},
                                      q_role("psi_-1", q, b)));
        p.nodes.push_back(adaptive_at(K(b, 3, c), base + 3,
                                      {-1, 0.0, beta, {}},
                                      q_role("psi_-2", q, b)));
        p.nodes.push_back(adaptive_at(K(b, 4, c), base + 4,
                                      {-1, 2.0 * g_mu, gamma, {}},
                                      q_role("phi", q, b)));
        add_byp(wire, 'x', {K(b, 2, c)});
        add_byp(wire, 'z', {K(b, 1, c)});
        add_rot("x", {wire}, q_role("psi_-1", q, b), alpha);
        add_byp(wire, 'z', {K(b, 3, c)});
        add_rot("z", {wire}, q_role("psi_-2", q, b), beta);
        add_byp(wire, 'x', {K(b, 4, c)});
        add_rot("x", {wire}, q_role("phi", q, b), 2.0 * g_mu * phi_M + gamma);
      };
      if (first_bond) pre_leg(1, wj, j);
      pre_leg(3, wk, j + 1);

      // Core (rows 5-9): the embedded two-qubit zz-rotation pattern.  Site
      // (5,1) doubles as the previous core's exit on interior bonds, and the
      // exit (9,1) is owned by the next block except on the last bond.
      for (int c : {1, 3}) {
        for (int r : {5, 6, 7, 8})
          p.nodes.push_back(x_at(K(b, r, c), Role::Body, base + 5));
      }
      p.nodes.push_back(x_at(K(b, 7, 2), Role::Body, base + 5));
      p.nodes.push_back(adaptive_at(K(b, 6, 2), base + 6, {1, 2.0, 0.0, {}},
                                    "phi_" + std::to_string(j) + "," +
                                        std::to_string(j + 1) + "@" +
                                        std::to_string(b)));
      p.nodes.push_back(x_at(K(b, 9, 3), Role::Body, base + 7));
      if (last_bond) p.nodes.push_back(x_at(K(b, 9, 1), Role::Body, base + 7));
      if (!first_bond) p.edges.insert({K(b - 1, 8, 1), K(b, 5, 1)});

      add_byp(wk, 'x', {K(b, 6, 3), K(b, 7, 2), K(b, 8, 1)});
      add_byp(wk, 'z', {K(b, 5, 3), K(b, 6, 2), K(b, 7, 1)});
      add_byp(wj, 'x', {K(b, 6, 1), K(b, 7, 2), K(b, 8, 3)});
      add_byp(wj, 'z', {K(b, 5, 1), K(b, 6, 2), K(b, 7, 3)});
      p.program.push_back({SymOp::Swap, "", {wj, wk}, "", 0.0, {}, 'x'});
      add_rot("zz", {wj, wk},
              "phi_" + std::to_string(j) + "," + std::to_string(j + 1) + "@" +
                  std::to_string(b),
              -2.0 * phi_M, {K(b, 7, 2), K(b, 8, 1), K(b, 8, 3)});

      // Post-leg (rows 9-13): R_x(-gamma), R_z(-beta), R_x(-alpha).  The core
      // swap crossed the wires, so column 3 continues logical qubit j (on
      // program wire k until the closing swap below) and column 1, present on
      // the last bond only, continues qubit j+1.
      auto post_leg = [&](int c, int wire, int q) {
        p.nodes.push_back(adaptive_at(K(b, 10, c), base + 8,
                                      {-1, 0.0, -gamma, {}},
                                      q_role("psi_3", q, b)));
        p.nodes.push_back(adaptive_at(K(b, 11, c), base + 9,
                                      {-1, 0.0, -beta, {}},
                                      q_role("psi_2", q, b)));
        p.nodes.push_back(adaptive_at(K(b, 12, c), base + 10,
                                      {-1, 0.0, -alpha, {}},
                                      q_role("psi_1", q, b)));
        if (m == M) p.nodes.push_back(output_at(K(b, 13, c)));
        add_byp(wire, 'x', {K(b, 10, c)});
        add_byp(wire, 'z', {K(b, 9, c)});
        add_rot("x", {wire}, q_role("psi_3", q, b), -gamma);
        add_byp(wire, 'z', {K(b, 11, c)});
        add_rot("z", {wire}, q_role("psi_2", q, b), -beta);
        add_byp(wire, 'x', {K(b, 12, c)});
        add_rot("x", {wire}, q_role("psi_1", q, b), -alpha);
      };
      post_leg(3, wk, j);
      if (last_bond) post_leg(1, wj, j + 1);
      p.program.push_back({SymOp::Swap, "", {wj, wk}, "", 0.0, {}, 'x'});

      // Step boundary: last step's leg ends feed this step's leg starts.
      if (m > 1) {
        if (first_bond)
          p.edges.insert({K(int((m - 2) * bps + 1), 12, 3), K(b, 1, 1)});
        const int q = j + 1;
        Site prev = q < N ? K(int((m - 2) * bps + q), 12, 3)
                          : K(int((m - 1) * bps), 12, 1);
        p.edges.insert({prev, K(b, 1, 3)});
      }
    }
  }

  p.inputs.push_back(K(1, 1, 1));
  for (int q = 2; q <= N; ++q) p.inputs.push_back(K(q - 1, 1, 3));
  const int last_base = int((M - 1) * bps);
  for (int q = 1; q < N; ++q) p.outputs.push_back(K(last_base + q, 13, 3));
  p.outputs.push_back(K(last_base + N - 1, 13, 1));

  p.sort_nodes();
  add_grid_edges(p);

  // Adaptive dependency sets and byproduct exponents follow from pushing the
  // program's byproduct injections left through the rotations.
  DerivedDeps derived = derive_program_dependencies(N, p.program);
  for (auto& n : p.nodes)
    if (n.angle) n.angle->deps = derived.angle_deps.at(n.angle_role);
  p.byproduct = std::move(derived.byproduct);

  p.target = "kitaev(N=" + std::to_string(N) + ",M=" + std::to_string(M) +
             ",g_mu=" + fmt17(g_mu) + ",phi_M=" + fmt17(phi_M) + ")";
  p.validate();
  return p;
}

}  // namespace mbqc
