#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "mbqc/executor.hpp"
#include "mbqc/oracle.hpp"
#include "mbqc/pattern.hpp"

using namespace mbqc;

namespace {

VecC random_state(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  VecC v(1L << n);
  for (long i = 0; i < v.size(); ++i) v[i] = cd(d(rng), d(rng));
  v /= v.norm();
  return v;
}

Statevector load(const VecC& v, int n) {
  std::vector<QubitLabel> labels;
  for (int i = 0; i < n; ++i) labels.push_back(i);
  return to_statevector(v, labels);
}

// 1 - |<a|b>|; corrected outputs may differ by a branch global phase only.
double infid(const VecC& a, const Statevector& b) {
  VecC bv = to_eigen(b);
  return std::abs(1.0 - std::abs((a.adjoint() * bv)(0, 0)));
}

std::size_t removable(const MeasurementPattern& p) {
  std::size_t n = 0;
  for (const auto& node : p.nodes)
    if (node.role == Role::Body && node.pauli_x) ++n;
  return n;
}

}  // namespace

TEST_CASE("two-qubit phase-gate pattern shrinks to five qubits") {
  const auto p = rzz_pattern(0.37);
  const auto c = compactify_pattern(p);
  c.validate();
  CHECK(p.nodes.size() == 12);
  CHECK(p.measured_count() == 10);
  CHECK(c.nodes.size() == 5);
  CHECK(c.measured_count() == 3);
  CHECK(c.adaptive_count() == 1);
  CHECK(removable(c) == 0);
  CHECK(c.inputs == p.inputs);
  CHECK(c.outputs == p.outputs);
  CHECK(!c.residual.empty());

  // Pinned sites vanish from the surviving dependency sets.
  for (const auto& n : c.nodes)
    if (n.angle)
      for (const Site& d : n.angle->deps) CHECK(c.find(d) != nullptr);
  for (const auto& t : c.byproduct)
    for (const SiteSet* ss : {&t.z_deps, &t.x_deps})
      for (const Site& d : *ss) CHECK(c.find(d) != nullptr);
}

TEST_CASE("compacted phase-gate patterns stay target-equivalent on every "
          "branch") {
  int rep = 0;
  for (double theta : {0.0, 0.37, -2.5}) {
    const auto c = compactify_pattern(rzz_pattern(theta));
    const VecC psi = random_state(2, 100 + rep++);
    const VecC tgt = target_unitary(c) * psi;
    const Statevector in = load(psi, 2);
    double ptot = 0.0;
    int branches = 0;
    execute_enumerate(c, in, [&](const ExecutionResult& r) {
      CHECK(infid(tgt, r.corrected) < 1e-10);
      ptot += r.probability;
      ++branches;
    });
    CHECK(branches == 8);  // 2 pinned-free inputs + 1 adaptive site
    CHECK(ptot == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("three-qubit phase-gate pattern compacts and still runs") {
  const auto p = rzzz_pattern(-0.81);
  const auto c = compactify_pattern(p);
  CHECK(c.nodes.size() == 7);
  CHECK(c.measured_count() == 4);
  CHECK(c.adaptive_count() == 1);
  const VecC psi = random_state(3, 11);
  const VecC tgt = target_unitary(c) * psi;
  const Statevector in = load(psi, 3);
  double ptot = 0.0;
  execute_enumerate(c, in, [&](const ExecutionResult& r) {
    CHECK(infid(tgt, r.corrected) < 1e-10);
    ptot += r.probability;
  });
  CHECK(ptot == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compacted chain pattern equals the original on every branch") {
  const auto p = kitaev_pattern(2, 1, 0.4, 0.23);
  const auto c = compactify_pattern(p);
  const VecC psi = random_state(2, 21);
  const Statevector in = load(psi, 2);
  // The original's corrected output is branch-independent up to global
  // phase, so one sampled branch serves as the reference for all of them.
  const auto ref = execute(p, in, ExecutionMode::sample(7));
  const VecC refv = to_eigen(ref.corrected);
  double ptot = 0.0;
  int branches = 0;
  execute_enumerate(c, in, [&](const ExecutionResult& r) {
    CHECK(infid(refv, r.corrected) < 1e-10);
    ptot += r.probability;
    ++branches;
  });
  CHECK(branches == 1 << 15);
  CHECK(ptot == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("adaptive cores survive with the published counts") {
  for (int N : {2, 3, 4})
    for (long M : {1L, 2L}) {
      const auto c = compactify_pattern(kitaev_pattern(N, M, 0.4, 0.1));
      CHECK(long(c.adaptive_count()) ==
            count_resources(Model::Kitaev, Representation::Ccs, N, M));
      CHECK(c.measured_count() == c.adaptive_count() + c.inputs.size());
      CHECK(removable(c) == 0);
    }
  for (auto [N, M] : std::vector<std::pair<int, long>>{{2, 1}, {2, 3}, {3, 2}}) {
    const auto c = compactify_pattern(hubbard_pattern(N, M, 0.7, 0.1));
    CHECK(long(c.adaptive_count()) ==
          count_resources(Model::Hubbard, Representation::Ccs, N, M));
    CHECK(c.measured_count() == c.adaptive_count() + c.inputs.size());
    CHECK(removable(c) == 0);
  }
}

TEST_CASE("compacted interacting-chain pattern matches its target") {
  const auto c = compactify_pattern(hubbard_pattern(2, 1, 0.7, 0.31));
  const VecC psi = random_state(4, 31);
  const VecC tgt = target_unitary(c) * psi;
  const Statevector in = load(psi, 4);
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto r = execute(c, in, ExecutionMode::sample(seed));
    CHECK(infid(tgt, r.corrected) < 1e-10);
  }
}

TEST_CASE("compaction is idempotent and serializes") {
  const auto c = compactify_pattern(kitaev_pattern(2, 1, 0.4, 0.23));
  const auto c2 = compactify_pattern(c);
  CHECK(c2.to_text() == c.to_text());

  const auto back = MeasurementPattern::from_text(c.to_text());
  back.validate();
  CHECK(back.to_text() == c.to_text());
  const VecC psi = random_state(2, 41);
  const Statevector in = load(psi, 2);
  const auto a = execute(c, in, ExecutionMode::sample(9));
  const auto b = execute(back, in, ExecutionMode::sample(9));
  CHECK(infid(to_eigen(a.corrected), b.corrected) < 1e-12);
}
