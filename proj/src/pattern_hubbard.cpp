// Measurement pattern for M Trotter steps of the Hubbard chain (N sites, two
// spin orbitals per site, interaction ratio g_U).  One block per orbital pair
// and step, laid out on a 46-row, 7-column grid (plus the output row 47).
// Each block chains four embedded three-qubit zz-rotation cores (rows 5-11,
// 15-21 on columns 1-5 and rows 23-29, 33-39 on columns 3-7) with single-qubit
// Euler legs between them, and closes with a two-qubit zz-rotation core on the
// odd/even orbital pair (rows 43-47, columns 1-3).  The last block of every
// step carries a second closing two-qubit core on columns 5-7 for the final
// pair.  Blocks cascade left-top to right-bottom; within a step each block
// hands two wires to the next block, and each step's exits feed the next
// step's entries.
#include <array>
#include <cmath>
#include <initializer_list>
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

std::string q_role(const char* stem, int w, int b) {
  return std::string(stem) + "_q" + std::to_string(w) + "@" + std::to_string(b);
}

std::string pair_role(const char* stem, std::initializer_list<int> ws, int b) {
  std::string r(stem);
  const char* sep = "_";
  for (int w : ws) {
    r += sep + std::to_string(w);
    sep = ",";
  }
  return r + "@" + std::to_string(b);
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

struct SlotSpec {
  AngleExpr expr;
  std::string role;
  char axis;    // 'x' or 'z'
  double base;  // deterministic rotation the slot realizes
};

}  // namespace

MeasurementPattern hubbard_pattern(int N, long M, double g_U, double phi_M) {
  if (N < 2 || M < 1) throw std::invalid_argument("need N >= 2, M >= 1");
  // The three-qubit xzx / yzy rotations are conjugated into zzz rotations by
  // y- and x-axis quarter turns, expanded into x-z-x Euler triples with these
  // angles; the on-site z-rotations R_z(g_U phi_M) merge into adjacent
  // x-rotation slots where possible.
  const double alpha = -M_PI / 2, beta = M_PI / 2, gamma = M_PI / 2,
               lambda = -M_PI / 2;
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
  // psi^r in {+-alpha, +-beta, +-gamma, +-lambda} for r = +-1..+-4; a slot
  // measuring psibar^r = P psi^r realizes the rotation by -psi^r.
  auto psival = [&](int r) {
    const double v[5] = {0.0, alpha, beta, gamma, lambda};
    return r > 0 ? v[r] : -v[-r];
  };
  auto psi = [&](int r) { return AngleExpr{1, 0.0, psival(r), {}}; };

  for (long m = 1; m <= M; ++m) {
    for (int j = 1; j < N; ++j) {
      const int blk = int((m - 1) * bps + j);
      const int base = (blk - 1) * 24;
      const bool Wb = (j == N - 1);  // last block of the step
      const bool step1 = (m == 1);
      const int wa = 2 * j - 1, wb = 2 * j, wc = 2 * j + 1, wd = 2 * j + 2;

      // A kept entry site followed by an x-z-x triple of adaptive slots.
      auto leg3 = [&](int c, int r0, Role entry_role, int entry_round,
                      std::array<int, 3> rounds, int wire,
                      std::array<SlotSpec, 3> ss) {
        p.nodes.push_back(x_at(K(blk, r0, c), entry_role, base + entry_round));
        for (int i = 0; i < 3; ++i) {
          Site s = K(blk, r0 + 1 + i, c);
          p.nodes.push_back(
              adaptive_at(s, base + rounds[i], ss[i].expr, ss[i].role));
          if (ss[i].axis == 'x') {
            add_byp(wire, 'x', {s});
            if (i == 0) add_byp(wire, 'z', {K(blk, r0, c)});
            add_rot("x", {wire}, ss[i].role, ss[i].base);
          } else {
            add_byp(wire, 'z', {s});
            add_rot("z", {wire}, ss[i].role, ss[i].base);
          }
        }
      };

      // A kept site at row 21 plus one x-rotation slot at row 22.
      auto slot1 = [&](int c, Role entry_role, int wire, AngleExpr e,
                       std::string role, double rb) {
        p.nodes.push_back(x_at(K(blk, 21, c), entry_role, base + 10));
        p.nodes.push_back(
            adaptive_at(K(blk, 22, c), base + 12, std::move(e), role));
        add_byp(wire, 'x', {K(blk, 22, c)});
        add_byp(wire, 'z', {K(blk, 21, c)});
        add_rot("x", {wire}, role, rb);
      };

      // Rows 39-42: two plain sites padding the wire, one z-rotation slot
      // realizing R_z(g_U phi_M), one more plain site before the closing core.
      auto zseg = [&](int c, int wire, std::string role) {
        p.nodes.push_back(x_at(K(blk, 39, c), Role::Body, base + 18));
        p.nodes.push_back(x_at(K(blk, 40, c), Role::Body, base + 18));
        p.nodes.push_back(adaptive_at(K(blk, 41, c), base + 21,
                                      AngleExpr{-1, g_U, 0.0, {}}, role));
        p.nodes.push_back(x_at(K(blk, 42, c), Role::Body, base + 22));
        add_byp(wire, 'z', {K(blk, 39, c)});
        add_byp(wire, 'x', {K(blk, 40, c)});
        add_byp(wire, 'z', {K(blk, 41, c)});
        add_rot("z", {wire}, role, g_U * phi_M);
        add_byp(wire, 'x', {K(blk, 42, c)});
      };

      // Embedded three-qubit zz-rotation core at rows R..R+6, cols C..C+4.
      // wL/wR are the wires entering the left/right column; they leave on the
      // opposite columns.  The row R+6 exit sites are owned by whatever
      // follows.
      auto core3 = [&](int R, int C, int wL, int wM, int wR, int xr, int ar,
                       const std::string& role) {
        for (int rc : {0, 2, 4})
          for (int rr = 0; rr < 6; ++rr)
            if (!(rr == 2 && rc == 2))
              p.nodes.push_back(
                  x_at(K(blk, R + rr, C + rc), Role::Body, base + xr));
        for (int rc : {1, 3})
          for (int rr = 1; rr < 5; ++rr)
            p.nodes.push_back(
                x_at(K(blk, R + rr, C + rc), Role::Body, base + xr));
        p.nodes.push_back(adaptive_at(K(blk, R + 2, C + 2), base + ar,
                                      AngleExpr{-1, 1.0, 0.0, {}}, role));
        auto E = [&](std::initializer_list<std::pair<int, int>> rcs) {
          SiteSet s;
          for (auto [r, c] : rcs) s.insert(K(blk, R + r - 1, C + c - 1));
          return s;
        };
        add_byp(wL, 'x', E({{2, 1}, {3, 2}, {4, 3}, {5, 4}, {6, 5}}));
        add_byp(wL, 'z', E({{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}));
        add_byp(wM, 'x', E({{2, 3}, {3, 2}, {3, 4}, {4, 1}, {4, 3}, {4, 5},
                            {5, 2}, {5, 4}, {6, 3}}));
        add_byp(wM, 'z', E({{1, 3}, {2, 2}, {2, 4}, {3, 1}, {3, 3}, {3, 5},
                            {4, 2}, {4, 4}, {5, 3}}));
        add_byp(wR, 'x', E({{2, 5}, {3, 4}, {4, 3}, {5, 2}, {6, 1}}));
        add_byp(wR, 'z', E({{1, 5}, {2, 4}, {3, 3}, {4, 2}, {5, 1}}));
        add_rot("zzz", {wL, wM, wR}, role, phi_M,
                E({{4, 3}, {5, 2}, {5, 4}, {6, 1}, {6, 3}, {6, 5}}));
      };

      // Embedded two-qubit zz-rotation core at rows 43-47, cols C..C+2.
      auto core2 = [&](int C, int wL, int wR, const std::string& role) {
        for (int rc : {0, 2})
          for (int rr = 0; rr < 4; ++rr)
            p.nodes.push_back(
                x_at(K(blk, 43 + rr, C + rc), Role::Body, base + 23));
        p.nodes.push_back(x_at(K(blk, 45, C + 1), Role::Body, base + 23));
        p.nodes.push_back(adaptive_at(K(blk, 44, C + 1), base + 24,
                                      AngleExpr{-1, g_U, 0.0, {}}, role));
        auto E = [&](std::initializer_list<std::pair<int, int>> rcs) {
          SiteSet s;
          for (auto [r, c] : rcs) s.insert(K(blk, 42 + r, C + c - 1));
          return s;
        };
        add_byp(wL, 'x', E({{2, 1}, {3, 2}, {4, 3}}));
        add_byp(wL, 'z', E({{1, 1}, {2, 2}, {3, 3}}));
        add_byp(wR, 'x', E({{2, 3}, {3, 2}, {4, 1}}));
        add_byp(wR, 'z', E({{1, 3}, {2, 2}, {3, 1}}));
        add_rot("zz", {wL, wR}, role, g_U * phi_M,
                E({{3, 2}, {4, 1}, {4, 3}}));
      };

      // Stage 1: pre-legs R_x(alpha) R_z(beta) R_x(gamma) on wires a and c.
      const Role a_entry = (step1 && j == 1) ? Role::Input : Role::Body;
      const Role fresh = step1 ? Role::Input : Role::Body;
      for (auto [col, w, er] : {std::tuple{1, wa, a_entry},
                                std::tuple{5, wc, fresh}})
        leg3(col, 1, er, 1, {2, 3, 4}, w,
             {SlotSpec{psi(-1), q_role("psi_-1", w, blk), 'x', alpha},
              SlotSpec{psi(-2), q_role("psi_-2", w, blk), 'z', beta},
              SlotSpec{psi(-3), q_role("psi_-3", w, blk), 'x', gamma}});

      // Stage 2: first zzz core on (a, b, c); wire b enters here.
      core3(5, 1, wa, wb, wc, 5, 6, pair_role("phi-", {wa, wb, wc}, blk));

      // Stage 3: mid legs R_x(-gamma) R_z(-beta) R_x(-lambda-alpha); the core
      // crossing moved wire a to column 5 and wire c to column 1.
      for (auto [col, w] : {std::pair{5, wa}, {1, wc}})
        leg3(col, 11, Role::Body, 5, {7, 8, 9}, w,
             {SlotSpec{psi(3), q_role("psi_3", w, blk), 'x', -gamma},
              SlotSpec{psi(2), q_role("psi_2", w, blk), 'z', -beta},
              SlotSpec{AngleExpr{1, 0.0, lambda + alpha, {}},
                       q_role("chi_+", w, blk), 'x', -(lambda + alpha)}});

      // Stage 4: second zzz core on (a, b, c); crosses a and c back.
      core3(15, 1, wc, wb, wa, 10, 11, pair_role("phi+", {wa, wb, wc}, blk));

      // Stage 5: lone x-rotation slots on all four wires; wire d enters here.
      slot1(1, Role::Body, wa, psi(-4), q_role("psi_-4", wa, blk), lambda);
      slot1(3, Role::Body, wb, psi(4), q_role("psi_4", wb, blk), -lambda);
      slot1(5, Role::Body, wc, psi(-4), q_role("psi_-4", wc, blk), lambda);
      slot1(7, fresh, wd, psi(4), q_role("psi_4", wd, blk), -lambda);

      // Stage 6: first zzz core on (b, c, d).
      core3(23, 3, wb, wc, wd, 13, 14, pair_role("phi-", {wb, wc, wd}, blk));

      // Stage 7: legs R_x(lambda+alpha) R_z(beta) R_x(gamma); the core
      // crossing moved wire b to column 7 and wire d to column 3.
      for (auto [col, w] : {std::pair{7, wb}, {3, wd}})
        leg3(col, 29, Role::Body, 13, {15, 16, 17}, w,
             {SlotSpec{AngleExpr{-1, 0.0, lambda + alpha, {}},
                       q_role("chi_-", w, blk), 'x', lambda + alpha},
              SlotSpec{psi(-2), q_role("psi_-2", w, blk), 'z', beta},
              SlotSpec{psi(-3), q_role("psi_-3", w, blk), 'x', gamma}});

      // Stage 8: second zzz core on (b, c, d); crosses b and d back.
      core3(33, 3, wd, wc, wb, 18, 19, pair_role("phi+", {wb, wc, wd}, blk));

      // Stage 9: closing legs and the on-site interaction cores.  The merged
      // slot R_x(-g_U phi_M - gamma) absorbs one on-site z-rotation.
      const AngleExpr phip{1, g_U, gamma, {}};
      const double mg = -(g_U * phi_M + gamma);
      if (!Wb) {
        leg3(7, 39, Role::Body, 18, {20, 21, 22}, wd,
             {SlotSpec{psi(3), q_role("psi_3", wd, blk), 'x', -gamma},
              SlotSpec{psi(2), q_role("psi_2", wd, blk), 'z', -beta},
              SlotSpec{psi(1), q_role("psi_1", wd, blk), 'x', -alpha}});
      } else {
        leg3(7, 39, Role::Body, 18, {20, 21, 22}, wd,
             {SlotSpec{phip, q_role("phi_+", wd, blk), 'x', mg},
              SlotSpec{psi(2), q_role("psi_2", wd, blk), 'z', -beta},
              SlotSpec{psi(1), q_role("psi_1", wd, blk), 'x', -alpha}});
        zseg(5, wc, q_role("phi_-", wc, blk));
        core2(5, wc, wd, pair_role("phi", {wc, wd}, blk));
      }
      leg3(3, 39, Role::Body, 18, {20, 21, 22}, wb,
           {SlotSpec{phip, q_role("phi_+", wb, blk), 'x', mg},
            SlotSpec{psi(2), q_role("psi_2", wb, blk), 'z', -beta},
            SlotSpec{psi(1), q_role("psi_1", wb, blk), 'x', -alpha}});
      zseg(1, wa, q_role("phi_-", wa, blk));
      core2(1, wa, wb, pair_role("phi", {wa, wb}, blk));

      if (m == M) {
        p.nodes.push_back(output_at(K(blk, 47, 3)));  // wire a
        p.nodes.push_back(output_at(K(blk, 47, 1)));  // wire b
        if (Wb) {
          p.nodes.push_back(output_at(K(blk, 47, 7)));  // wire c
          p.nodes.push_back(output_at(K(blk, 47, 5)));  // wire d
        }
      }

      // Wire segments that skip rows connect through explicit long edges.
      p.edges.insert({K(blk, 10, 3), K(blk, 15, 3)});
      p.edges.insert({K(blk, 22, 1), K(blk, 39, 1)});
      p.edges.insert({K(blk, 28, 5), K(blk, 33, 5)});
      if (!Wb) {
        p.edges.insert({K(blk, 38, 5), K(blk + 1, 1, 1)});   // wire c onward
        p.edges.insert({K(blk, 42, 7), K(blk + 1, 5, 3)});   // wire d onward
      }
      if (m > 1) {  // step boundary: previous exits feed this step's entries
        const int prev = int((m - 2) * bps);
        if (j == 1) {
          p.edges.insert({K(prev + 1, 46, 3), K(blk, 1, 1)});
          p.edges.insert({K(prev + 1, 46, 1), K(blk, 5, 3)});
        }
        Site pc = j < N - 1 ? K(prev + j + 1, 46, 3) : K(prev + j, 46, 7);
        Site pd = j < N - 1 ? K(prev + j + 1, 46, 1) : K(prev + j, 46, 5);
        p.edges.insert({pc, K(blk, 1, 5)});
        p.edges.insert({pd, K(blk, 21, 7)});
      }
    }
  }

  // Wire b of the first block enters inside the first core.
  p.sort_nodes();
  if (PatternNode* n = p.find(K(1, 5, 3))) n->role = Role::Input;

  p.inputs.push_back(K(1, 1, 1));
  p.inputs.push_back(K(1, 5, 3));
  for (int j = 1; j < N; ++j) {
    p.inputs.push_back(K(j, 1, 5));
    p.inputs.push_back(K(j, 21, 7));
  }
  const int last = int((M - 1) * bps);
  p.outputs.resize(2 * N);
  for (int j = 1; j < N; ++j) {
    p.outputs[2 * j - 2] = K(last + j, 47, 3);
    p.outputs[2 * j - 1] = K(last + j, 47, 1);
  }
  p.outputs[2 * N - 2] = K(last + N - 1, 47, 7);
  p.outputs[2 * N - 1] = K(last + N - 1, 47, 5);

  add_grid_edges(p);

  // Adaptive dependency sets and byproduct exponents follow from pushing the
  // program's byproduct injections left through the rotations.
  DerivedDeps derived = derive_program_dependencies(2 * N, p.program);
  for (auto& n : p.nodes)
    if (n.angle) n.angle->deps = derived.angle_deps.at(n.angle_role);
  p.byproduct = std::move(derived.byproduct);

  p.target = "hubbard(N=" + std::to_string(N) + ",M=" + std::to_string(M) +
             ",g_U=" + fmt17(g_U) + ",phi_M=" + fmt17(phi_M) + ")";
  p.validate();
  return p;
}

}  // namespace mbqc
