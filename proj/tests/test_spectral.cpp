#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mbqc/spectral.hpp"

using namespace mbqc;

namespace {

const double kPi = std::acos(-1.0);

// Overlap series of a sum of poles: sum_j a_j e^{-i E_j t_n}.
std::vector<cd> pole_series(const std::vector<std::pair<double, double>>& poles,
                            const SpectralConfig& cfg) {
  std::vector<cd> ov(cfg.L);
  for (long n = 0; n < cfg.L; ++n) {
    cd acc = 0;
    for (const auto& [E, a] : poles) acc += a * std::exp(cd(0, -E * cfg.t(n)));
    ov[n] = acc;
  }
  return ov;
}

SpectralConfig fig_config() { return {1272, 0.01, 0.02, 1e-2, 1e-2}; }

VecC free_chain_ground_state(int N) {
  return ground_state(kitaev_hamiltonian({N, 1.0, 0.0})).state;
}

}  // namespace

TEST_CASE("config ties the time and frequency grids together") {
  SpectralConfig cfg{46, 0.01, 0.02};
  cfg.validate();
  CHECK(cfg.delta_omega * cfg.delta_t() * double(cfg.L) ==
        doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(cfg.t(3) == doctest::Approx(3 * cfg.delta_t()));
  CHECK(cfg.omega(5) == doctest::Approx(0.05));
  CHECK(cfg.period() == doctest::Approx(0.46));

  CHECK_THROWS_AS((SpectralConfig{1, 0.01, 0.02}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS((SpectralConfig{46, 0.0, 0.02}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS((SpectralConfig{46, 0.01, 0.0}).validate(),
                  std::invalid_argument);
}

TEST_CASE("overlap series starts at one and carries eigenstate phases") {
  const MatC H = kitaev_hamiltonian({2, 1.0, 0.3});
  SpectralConfig cfg{16, 0.05, 0.02};
  Eigen::SelfAdjointEigenSolver<MatC> es(H);
  const double E = es.eigenvalues()[1];
  const VecC u = es.eigenvectors().col(1);

  const auto ov = overlap_series(ExactEvolver(H, u), cfg);
  REQUIRE(long(ov.size()) == cfg.L);
  CHECK(std::abs(ov[0] - cd(1, 0)) < 1e-12);
  for (long n = 0; n < cfg.L; ++n)
    CHECK(std::abs(ov[n] - std::exp(cd(0, -E * cfg.t(n)))) < 1e-12);
}

TEST_CASE("constant overlaps give the closed-form damped peak at zero") {
  SpectralConfig cfg{64, 0.05, 0.03};
  const std::vector<cd> ov(cfg.L, cd(1, 0));
  const auto A = spectral_function(ov, cfg);
  REQUIRE(long(A.size()) == cfg.L);

  // Geometric sum of the damped kernel, with the n=0 sample at half weight.
  for (long m = 0; m < cfg.L; m += 7) {
    const cd z = std::exp(cd(-cfg.eta, cfg.omega(m)) * cfg.delta_t());
    const double closed =
        cfg.delta_t() / kPi * (((1.0 - std::pow(z, cfg.L)) / (1.0 - z)).real() - 0.5);
    CHECK(A[m] == doctest::Approx(closed).epsilon(1e-12));
  }

  const auto peaks = find_peaks(A, cfg);
  REQUIRE(peaks.size() == 1);
  CHECK(folded_distance(peaks[0].omega, 0.0, cfg) < cfg.delta_omega / 2);
}

TEST_CASE("a single pole is one unit-weight peak and the sum rule telescopes") {
  SpectralConfig cfg{128, 0.05, 0.02};
  for (double E : {0.8, 1.237, -1.3}) {
    const auto s = analyze_overlaps(pole_series({{E, 1.0}}, cfg), cfg);
    REQUIRE(s.peaks.size() == 1);
    CHECK(folded_distance(s.peaks[0].omega, E, cfg) < cfg.delta_omega / 2);
    CHECK(s.peaks[0].weight == doctest::Approx(1.0).epsilon(1e-10));
    // Only n=0 survives the m-sum on the conjugate grid, so the deviation is
    // zero to rounding regardless of L or eta.
    CHECK(s.sum_rule_deviation < 1e-12);
  }
  SpectralConfig half{64, 0.05, 0.02};
  const auto s = analyze_overlaps(pole_series({{0.8, 1.0}}, half), half);
  CHECK(s.sum_rule_deviation < 1e-12);
}

TEST_CASE("the transform is linear in the overlap series") {
  SpectralConfig cfg{48, 0.07, 0.04};
  std::mt19937 rng(5);
  std::normal_distribution<double> d;
  std::vector<cd> a(cfg.L), b(cfg.L), ab(cfg.L);
  for (long n = 0; n < cfg.L; ++n) {
    a[n] = cd(d(rng), d(rng));
    b[n] = cd(d(rng), d(rng));
    ab[n] = a[n] + b[n];
  }
  const auto Aa = spectral_function(a, cfg);
  const auto Ab = spectral_function(b, cfg);
  const auto Aab = spectral_function(ab, cfg);
  for (long m = 0; m < cfg.L; ++m)
    CHECK(Aab[m] == doctest::Approx(Aa[m] + Ab[m]).epsilon(1e-11));
}

TEST_CASE("two well-separated poles resolve with the right residues") {
  SpectralConfig cfg{256, 0.02, 0.02};
  const auto s =
      analyze_overlaps(pole_series({{0.9, 0.7}, {2.7, 0.3}}, cfg), cfg);
  REQUIRE(s.peaks.size() == 2);
  CHECK(folded_distance(s.peaks[0].omega, 0.9, cfg) < cfg.delta_omega / 2);
  CHECK(folded_distance(s.peaks[1].omega, 2.7, cfg) < cfg.delta_omega / 2);
  CHECK(s.peaks[0].weight == doctest::Approx(0.7).epsilon(0.03));
  CHECK(s.peaks[1].weight == doctest::Approx(0.3).epsilon(0.03));
  const double total = s.peaks[0].weight + s.peaks[1].weight;
  CHECK(std::abs(total - (1.0 - s.sum_rule_deviation)) <
        2 * s.sum_rule_deviation + 1e-9);
}

TEST_CASE("peak extraction rejects an empty spectrum") {
  SpectralConfig cfg{16, 0.05, 0.02};
  CHECK_THROWS_AS(find_peaks({}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(find_peaks(std::vector<double>(16, 0.0), cfg, 0.0),
                  std::invalid_argument);
}

TEST_CASE("the four-site chain spectrum reproduces exact diagonalization") {
  const KitaevParams p{4, 1.0, 0.4};
  const SpectralConfig cfg = fig_config();
  const MatC H = kitaev_hamiltonian(p);
  const VecC psi = free_chain_ground_state(4);
  const ExactEvolver ev(H, psi);

  const auto s = analyze_overlaps(overlap_series(ev, cfg), cfg);
  CHECK(s.sum_rule_deviation < cfg.delta_F);
  REQUIRE(s.peaks.size() == 6);

  Eigen::SelfAdjointEigenSolver<MatC> es(H);
  const VecC c = es.eigenvectors().adjoint() * psi;

  // Every peak sits on an eigenvalue that actually carries weight...
  for (const Peak& pk : s.peaks) {
    double best = 1e9;
    double cj = 0;
    for (long j = 0; j < es.eigenvalues().size(); ++j) {
      const double d = folded_distance(pk.omega, es.eigenvalues()[j], cfg);
      if (d < best) { best = d; cj = std::norm(c[j]); }
    }
    CHECK(best < cfg.delta_omega);
    CHECK(cj > 1e-3);
    CHECK(pk.weight == doctest::Approx(cj).epsilon(0.02));
  }
  // ...and every eigenvalue with visible weight produces a peak.
  for (long j = 0; j < es.eigenvalues().size(); ++j) {
    if (std::norm(c[j]) < 3e-3) continue;
    double best = 1e9;
    for (const Peak& pk : s.peaks)
      best = std::min(best, folded_distance(pk.omega, es.eigenvalues()[j], cfg));
    CHECK(best < cfg.delta_omega);
  }
  double total = 0;
  for (const Peak& pk : s.peaks) total += pk.weight;
  CHECK(std::abs(total - (1.0 - s.sum_rule_deviation)) < 1e-9);
}

TEST_CASE("halving the broadening does not move the refined centers") {
  const KitaevParams p{4, 1.0, 0.4};
  const MatC H = kitaev_hamiltonian(p);
  const VecC psi = free_chain_ground_state(4);
  SpectralConfig wide = fig_config();
  SpectralConfig sharp = wide;
  sharp.eta = wide.eta / 2;

  const auto a = analyze_overlaps(overlap_series(ExactEvolver(H, psi), wide), wide);
  const auto b = analyze_overlaps(overlap_series(ExactEvolver(H, psi), sharp), sharp);
  REQUIRE(a.peaks.size() <= b.peaks.size());
  for (const Peak& pk : a.peaks) {
    double best = 1e9;
    for (const Peak& qk : b.peaks)
      best = std::min(best, folded_distance(pk.omega, qk.omega, wide));
    CHECK(best < wide.delta_omega / 2);
  }
}

TEST_CASE("gate-level overlaps converge to the exact ones") {
  SpectralConfig cfg{24, 0.05, 0.02};
  const KitaevParams kp{3, 1.0, 0.4};
  const VecC kpsi = free_chain_ground_state(3);
  const auto kx = overlap_series(ExactEvolver(kitaev_hamiltonian(kp), kpsi), cfg);
  const auto kt = overlap_series(kitaev_trotter_overlap_fn(kp, 20000, kpsi), cfg);
  for (long n = 0; n < cfg.L; ++n)
    CHECK(std::abs(kt[n] - kx[n]) < 10 * cfg.delta_T);

  SpectralConfig hcfg{12, 0.1, 0.02};
  const HubbardParams hp{2, 1.0, 0.7};
  const VecC hpsi = ground_state(hubbard_hamiltonian({2, 1.0, 0.0})).state;
  const auto hx =
      overlap_series(ExactEvolver(hubbard_hamiltonian(hp), hpsi), hcfg);
  const auto ht = overlap_series(hubbard_trotter_overlap_fn(hp, 20000, hpsi), hcfg);
  for (long n = 0; n < hcfg.L; ++n)
    CHECK(std::abs(ht[n] - hx[n]) < 10 * hcfg.delta_T);
}

TEST_CASE("the minimum-depth search hits the tabulated extremes") {
  // Degenerate searches first.
  CHECK(min_trotter_steps([](long) { return cd(1, 0); }, cd(1, 0), 1e-2) == 1);
  CHECK_THROWS_AS(
      min_trotter_steps([](long) { return cd(0, 0); }, cd(1, 0), 1e-3, 1 << 6),
      std::runtime_error);

  const SpectralConfig cfg{46, 0.01, 0.02, 1e-2, 1e-2};
  const VecC psi = free_chain_ground_state(4);
  struct Row { double g; long lo; long hi; };
  for (const Row& r : {Row{0.01, 900, 3600}, Row{0.4, 39000, 156000}}) {
    const auto Ms = kitaev_min_trotter_sweep({4, 1.0, r.g}, cfg, psi);
    REQUIRE(long(Ms.size()) == cfg.L);
    CHECK(Ms[0] == 1);
    const long mx = *std::max_element(Ms.begin(), Ms.end());
    CHECK(mx >= r.lo);  // within a factor 2 of the reference extremes
    CHECK(mx <= r.hi);
  }
}

TEST_CASE("precision accounting respects the published bounds") {
  const SpectralConfig cfg{46, 0.01, 0.02, 1e-2, 1e-2};
  const VecC psi = free_chain_ground_state(4);
  for (double g : {0.01, 0.05, 0.1, 0.4}) {
    const auto Ms = kitaev_min_trotter_sweep({4, 1.0, g}, cfg, psi);
    const auto rep = precision_report(Ms, cfg, g);
    REQUIRE(rep.M == Ms);
    REQUIRE(long(rep.chi.size()) == cfg.L);
    for (long n = 0; n < cfg.L; ++n)
      CHECK(rep.chi[n] ==
            doctest::Approx(double(n) / (cfg.delta_omega * double(cfg.L) *
                                         double(Ms[n]))));
    CHECK(rep.max_chi <= 0.14);
    CHECK(rep.min_g_chi >= 2e-4);

    // Doubling every depth halves every angle.
    std::vector<long> twice(Ms);
    for (long& m : twice) m *= 2;
    const auto rep2 = precision_report(twice, cfg, g);
    for (long n = 0; n < cfg.L; ++n)
      CHECK(rep2.chi[n] == doctest::Approx(rep.chi[n] / 2));
    CHECK(rep2.max_chi == doctest::Approx(rep.max_chi / 2));
  }
}

TEST_CASE("matched rotation-frame errors keep the poles in place") {
  const KitaevParams p{4, 1.0, 0.4};
  const SpectralConfig cfg = fig_config();
  const VecC psi = free_chain_ground_state(4);
  const long M = 2000;

  const auto zero =
      error_experiment(p, cfg, psi, ChainAngleErrors::random_z(4, 0, 0, 1, true), M);
  CHECK(zero.max_center_shift < 1e-12);
  CHECK(zero.max_weight_change < 1e-12);
  CHECK(zero.spurious_peaks == 0);

  const auto err = ChainAngleErrors::random_z(4, 0.45, 0.56, 7, true);
  CHECK(err.symmetric());
  const auto sym = error_experiment(p, cfg, psi, err, M);
  CHECK(sym.max_center_shift < cfg.delta_omega);
  CHECK(sym.max_weight_change > 0.01);
  CHECK(sym.spurious_peaks == 0);
  REQUIRE(sym.shifts.size() == sym.clean.peaks.size());

  const auto ind = error_experiment(
      p, cfg, psi, ChainAngleErrors::random_z(4, 0.45, 0.56, 7, false), M);
  CHECK(!ChainAngleErrors::random_z(4, 0.45, 0.56, 7, false).symmetric());
  CHECK((ind.max_center_shift > cfg.delta_omega || ind.spurious_peaks > 0));
}

TEST_CASE("a uniform angle rescale slides each pole to its rescaled energy") {
  const MatC H = kitaev_hamiltonian({4, 1.0, 0.4});
  const VecC psi = free_chain_ground_state(4);
  const SpectralConfig cfg = fig_config();

  const auto id = phi_M_shift_check(H, psi, cfg, 0.0);
  CHECK(id.scale == doctest::Approx(1.0));
  CHECK(id.max_center_mismatch < 1e-9);

  const auto ps = phi_M_shift_check(H, psi, cfg, 0.01);
  CHECK(ps.scale == doctest::Approx(1.01));
  CHECK(ps.max_center_mismatch < cfg.delta_omega);
  CHECK(ps.sum_rule_shifted < cfg.delta_F);
  CHECK(ps.shifted.peaks.size() == ps.clean.peaks.size());
}
