#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mbqc/executor.hpp"
#include "mbqc/pattern.hpp"

using namespace mbqc;

namespace {
Site S(int r, int c) { return Site{0, r, c}; }
}  // namespace

TEST_CASE("two-qubit rotation pattern structure") {
  auto p = rzz_pattern(1.234);
  SUBCASE("census: 12 sites, 10 measured, one adaptive") {
    CHECK(p.nodes.size() == 12);
    CHECK(p.measured_count() == 10);
    CHECK(p.adaptive_count() == 1);
    CHECK(p.edges.size() == 13);
    CHECK(p.max_round() == 2);
  }
  SUBCASE("adaptive angle at (2,2)") {
    const PatternNode* n = p.find(S(2, 2));
    REQUIRE(n);
    REQUIRE(n->angle.has_value());
    CHECK(n->round == 2);
    CHECK(n->angle->sign == -1);
    CHECK(n->angle->const_term == doctest::Approx(1.234));
    CHECK(n->angle->deps == SiteSet{S(2, 1), S(2, 3), S(3, 2)});
  }
  SUBCASE("byproduct exponents (wires exchanged by the swap)") {
    CHECK(p.byproduct[0].z_deps == SiteSet{S(1, 3), S(2, 2), S(3, 1)});
    CHECK(p.byproduct[0].x_deps == SiteSet{S(2, 3), S(3, 2), S(4, 1)});
    CHECK(p.byproduct[1].z_deps == SiteSet{S(1, 1), S(2, 2), S(3, 3)});
    CHECK(p.byproduct[1].x_deps == SiteSet{S(2, 1), S(3, 2), S(4, 3)});
  }
  SUBCASE("angle evaluation flips with dep parity") {
    const AngleExpr& e = *p.find(S(2, 2))->angle;
    std::map<Site, int> s{{S(2, 1), 0}, {S(2, 3), 0}, {S(3, 2), 0}};
    CHECK(e.eval(0.0, s) == doctest::Approx(-1.234));
    s[S(2, 3)] = 1;
    CHECK(e.eval(0.0, s) == doctest::Approx(1.234));
    s[S(3, 2)] = 1;
    CHECK(e.eval(0.0, s) == doctest::Approx(-1.234));
  }
  SUBCASE("angles reduce into (-2pi, 2pi)") {
    auto q = rzz_pattern(1.234 + 2 * M_PI);
    CHECK(q.find(S(2, 2))->angle->const_term == doctest::Approx(1.234));
    auto r = rzz_pattern(-1.234 - 2 * M_PI);
    CHECK(r.find(S(2, 2))->angle->const_term == doctest::Approx(-1.234));
  }
}

TEST_CASE("three-qubit rotation pattern structure") {
  auto p = rzzz_pattern(0.7);
  SUBCASE("census: 29 sites, 26 measured, central area 23") {
    CHECK(p.nodes.size() == 29);
    CHECK(p.measured_count() == 26);
    CHECK(p.adaptive_count() == 1);
    int central = 0;
    for (const auto& n : p.nodes)
      if (n.role == Role::Body) ++central;
    CHECK(central == (2 * 3 - 1) * (2 * 3 - 1) - (3 - 1));
  }
  SUBCASE("adaptive angle at (3,3)") {
    const PatternNode* n = p.find(S(3, 3));
    REQUIRE(n);
    REQUIRE(n->angle.has_value());
    CHECK(n->angle->deps == SiteSet{S(2, 1), S(2, 3), S(2, 5), S(4, 1),
                                    S(4, 5), S(5, 2), S(5, 4)});
  }
  SUBCASE("byproduct exponents, middle output") {
    CHECK(p.byproduct[1].z_deps ==
          SiteSet{S(1, 3), S(2, 2), S(2, 4), S(3, 1), S(3, 3), S(3, 5),
                  S(4, 2), S(4, 4), S(5, 3)});
    CHECK(p.byproduct[1].x_deps ==
          SiteSet{S(2, 3), S(3, 2), S(3, 4), S(4, 1), S(4, 3), S(4, 5),
                  S(5, 2), S(5, 4), S(6, 3)});
  }
}

TEST_CASE("single-qubit rotation leg structure") {
  auto p = euler_leg(0.3, -0.8, 1.1);
  CHECK(p.nodes.size() == 5);
  CHECK(p.measured_count() == 4);
  CHECK(p.adaptive_count() == 3);
  auto at = [&](int r) { return p.find(Site{0, r, 1}); };
  CHECK(at(2)->angle->deps == SiteSet{Site{0, 1, 1}});
  CHECK(at(3)->angle->deps == SiteSet{Site{0, 2, 1}});
  CHECK(at(4)->angle->deps == SiteSet{Site{0, 1, 1}, Site{0, 3, 1}});
  CHECK(p.byproduct[0].z_deps == SiteSet{Site{0, 1, 1}, Site{0, 3, 1}});
  CHECK(p.byproduct[0].x_deps == SiteSet{Site{0, 2, 1}, Site{0, 4, 1}});
}

TEST_CASE("dependency sets re-derive from the symbolic program") {
  for (const auto& p :
       {rzz_pattern(0.9), rzzz_pattern(-1.3), euler_leg(0.2, 0.4, -0.6)}) {
    auto rep = rederive_dependencies(p);
    INFO(rep.diff);
    CHECK(rep.ok);
  }
}

TEST_CASE("serialization round trip") {
  for (const auto& p :
       {rzz_pattern(1.234), rzzz_pattern(0.7), euler_leg(0.1, -2.2, 3.0)}) {
    auto q = MeasurementPattern::from_text(p.to_text());
    CHECK(q.nodes.size() == p.nodes.size());
    CHECK(q.edges == p.edges);
    CHECK(q.inputs == p.inputs);
    CHECK(q.outputs == p.outputs);
    CHECK(q.byproduct == p.byproduct);
    CHECK(q.phi_M == p.phi_M);
    CHECK(q.target == p.target);
    CHECK(q.program.size() == p.program.size());
    for (const auto& n : p.nodes) {
      const PatternNode* m = q.find(n.site);
      REQUIRE(m);
      CHECK(m->role == n.role);
      CHECK(m->round == n.round);
      CHECK(m->pauli_x == n.pauli_x);
      CHECK(m->angle == n.angle);
      CHECK(m->angle_role == n.angle_role);
    }
    // Canonical: serialization is a fixed point.
    CHECK(q.to_text() == p.to_text());
  }
}

TEST_CASE("validation rejects broken patterns") {
  SUBCASE("dependency on a later round") {
    auto p = rzz_pattern(0.5);
    p.find(Site{0, 2, 2})->angle->deps.insert(Site{0, 5, 1});  // an output
    CHECK_THROWS(p.validate());
  }
  SUBCASE("byproduct term count must match outputs") {
    auto p = rzz_pattern(0.5);
    p.byproduct.pop_back();
    CHECK_THROWS(p.validate());
  }
  SUBCASE("duplicate site") {
    auto p = euler_leg(0, 0, 0);
    p.nodes.push_back(p.nodes.front());
    CHECK_THROWS(p.validate());
  }
}

TEST_CASE("resource counts") {
  CHECK(count_resources(Model::Kitaev, Representation::Slcs, 2, 1) == 24);
  CHECK(count_resources(Model::Kitaev, Representation::Slcs, 3, 1) == 41);
  CHECK(count_resources(Model::Kitaev, Representation::Slcs, 4, 1) == 58);
  CHECK(count_resources(Model::Kitaev, Representation::Ccs, 2, 1) == 13);
  CHECK(count_resources(Model::Kitaev, Representation::Ccs, 3, 1) == 20);
  CHECK(count_resources(Model::Kitaev, Representation::Circuit, 4, 1) == 27);
  CHECK(count_resources(Model::Hubbard, Representation::Slcs, 2, 1) == 168);
  CHECK(count_resources(Model::Hubbard, Representation::Slcs, 3, 1) == 324);
  CHECK(count_resources(Model::Hubbard, Representation::Ccs, 2, 5) == 180);
  CHECK(count_resources(Model::Kitaev, Representation::Slcs, 3, 4) == 164);
  CHECK_THROWS(count_resources(Model::Kitaev, Representation::Slcs, 1, 1));
}

TEST_CASE("runtime regime comparison") {
  CHECK(runtime_regime(10, 10, 2.0) == Regime::MbqcFavorable);
  CHECK(runtime_regime(20, 10, 1.0) == Regime::CbqcFavorable);
  CHECK(runtime_regime(27, 27, 1.0) == Regime::Tie);
  CHECK_THROWS(runtime_regime(-1, 1, 1));
}
