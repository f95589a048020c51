#include "mbqc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace mbqc {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cd kI(0.0, 1.0);
}  // namespace

double SpectralConfig::delta_t() const {
  return 2.0 * kPi / (double(L) * delta_omega);
}

void SpectralConfig::validate() const {
  if (L < 2) throw std::invalid_argument("L must be >= 2");
  if (delta_omega <= 0) throw std::invalid_argument("delta_omega must be > 0");
  if (eta <= 0) throw std::invalid_argument("eta must be > 0");
}

std::vector<cd> overlap_series(const OverlapFn& f, const SpectralConfig& cfg) {
  cfg.validate();
  std::vector<cd> ov(cfg.L);
  for (long n = 0; n < cfg.L; ++n) ov[n] = f(cfg.t(n));
  return ov;
}

std::vector<cd> overlap_series(const ExactEvolver& ev,
                               const SpectralConfig& cfg) {
  cfg.validate();
  std::vector<cd> ov(cfg.L);
  for (long n = 0; n < cfg.L; ++n) ov[n] = ev.overlap_at(cfg.t(n));
  return ov;
}

std::vector<double> spectral_function(const std::vector<cd>& overlaps,
                                      const SpectralConfig& cfg) {
  cfg.validate();
  if (long(overlaps.size()) != cfg.L)
    throw std::invalid_argument("overlap series length != L");
  const double dt = cfg.delta_t();
  std::vector<double> a(cfg.L);
  for (long m = 0; m < cfg.L; ++m) {
    const cd z = std::exp((kI * cfg.omega(m) - cfg.eta) * dt);
    // One-sided transform: the n=0 endpoint carries trapezoidal half
    // weight, which is what makes domega * sum_m A(w_m) a unit sum rule.
    cd zn(1.0, 0.0);
    double acc = -0.5 * overlaps[0].real();
    for (long n = 0; n < cfg.L; ++n) {
      acc += (zn * overlaps[n]).real();
      zn *= z;
    }
    a[m] = dt / kPi * acc;
  }
  return a;
}

double sum_rule(const std::vector<double>& spectrum,
                const SpectralConfig& cfg) {
  double s = 0.0;
  for (double v : spectrum) s += v;
  return std::abs(1.0 - cfg.delta_omega * s);
}

std::vector<Peak> find_peaks(const std::vector<double>& spectrum,
                             const SpectralConfig& cfg,
                             double threshold_fraction) {
  cfg.validate();
  if (spectrum.empty()) throw std::invalid_argument("empty spectrum");
  if (threshold_fraction <= 0 || threshold_fraction >= 1)
    throw std::invalid_argument("threshold_fraction must be in (0,1)");
  const long L = long(spectrum.size());
  const double top = *std::max_element(spectrum.begin(), spectrum.end());
  const double cut = threshold_fraction * top;

  std::vector<Peak> peaks;
  for (long m = 0; m < L; ++m) {
    const double h0 = spectrum[m];
    const double hm = spectrum[(m + L - 1) % L];
    const double hp = spectrum[(m + 1) % L];
    if (h0 < cut || h0 <= hm || h0 < hp) continue;  // cyclic local maximum
    const double denom = hm - 2.0 * h0 + hp;
    const double d = denom < 0 ? 0.5 * (hm - hp) / denom : 0.0;
    double w = std::fmod((double(m) + d) * cfg.delta_omega, cfg.period());
    if (w < 0) w += cfg.period();
    peaks.push_back({w, 0.0});
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.omega < b.omega; });

  // Pole weights: every grid point contributes its mass to the nearest peak
  // center, so the weights add up to the sum-rule total and each isolated
  // Lorentzian recovers its |c_j|^2.
  if (!peaks.empty()) {
    for (long m = 0; m < L; ++m) {
      std::size_t best = 0;
      double bd = -1;
      for (std::size_t j = 0; j < peaks.size(); ++j) {
        const double dj = folded_distance(cfg.omega(m), peaks[j].omega, cfg);
        if (bd < 0 || dj < bd) {
          bd = dj;
          best = j;
        }
      }
      peaks[best].weight += cfg.delta_omega * spectrum[m];
    }
  }
  return peaks;
}

SpectralSeries analyze_overlaps(std::vector<cd> overlaps,
                                const SpectralConfig& cfg,
                                double threshold_fraction) {
  SpectralSeries s;
  s.overlaps = std::move(overlaps);
  s.spectrum = spectral_function(s.overlaps, cfg);
  s.sum_rule_deviation = sum_rule(s.spectrum, cfg);
  s.peaks = find_peaks(s.spectrum, cfg, threshold_fraction);
  return s;
}

double folded_distance(double omega, double energy,
                       const SpectralConfig& cfg) {
  const double p = cfg.period();
  double d = std::fmod(omega - energy, p);
  if (d < 0) d += p;
  return std::min(d, p - d);
}

OverlapFn exact_overlap_fn(const MatC& H, const VecC& psi) {
  auto ev = std::make_shared<ExactEvolver>(H, psi);
  return [ev](double t) { return ev->overlap_at(t); };
}

OverlapFn kitaev_trotter_overlap_fn(const KitaevParams& p, long M,
                                    const VecC& psi) {
  return [p, M, psi](double t) {
    return cd((psi.adjoint() * trotter_evolve_kitaev(p, {t, M}, psi))(0, 0));
  };
}

OverlapFn hubbard_trotter_overlap_fn(const HubbardParams& p, long M,
                                     const VecC& psi) {
  return [p, M, psi](double t) {
    return cd((psi.adjoint() * trotter_evolve_hubbard(p, {t, M}, psi))(0, 0));
  };
}

long min_trotter_steps(const std::function<cd(long)>& trotter_ov, cd exact_ov,
                       double delta_T, long m_max) {
  auto converged = [&](long m) {
    return std::abs(trotter_ov(m) - exact_ov) < delta_T;
  };
  if (converged(1)) return 1;
  long hi = 2;
  while (!converged(hi)) {
    hi *= 2;
    if (hi > m_max)
      throw std::runtime_error("no Trotter convergence below the depth cap");
  }
  long lo = hi / 2;  // known to fail
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (converged(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<long> kitaev_min_trotter_sweep(const KitaevParams& p,
                                           const SpectralConfig& cfg,
                                           const VecC& psi) {
  cfg.validate();
  ExactEvolver ev(kitaev_hamiltonian(p), psi);
  std::vector<long> out(cfg.L);
  for (long n = 0; n < cfg.L; ++n) {
    const double t = cfg.t(n);
    auto trot = [&](long m) {
      return cd((psi.adjoint() * trotter_evolve_kitaev(p, {t, m}, psi))(0, 0));
    };
    out[n] = min_trotter_steps(trot, ev.overlap_at(t), cfg.delta_T);
  }
  return out;
}

PrecisionReport precision_report(const std::vector<long>& M_n,
                                 const SpectralConfig& cfg, double g) {
  PrecisionReport r;
  r.M = M_n;
  r.chi.resize(M_n.size());
  long m_series = 1;
  bool first = true;
  for (std::size_t n = 0; n < M_n.size(); ++n) {
    if (M_n[n] <= 0) throw std::invalid_argument("nonpositive depth");
    m_series = std::max(m_series, M_n[n]);
    r.chi[n] =
        double(n) / (cfg.delta_omega * double(cfg.L) * double(M_n[n]));
    if (n == 0) continue;
    if (first || g * r.chi[n] < r.min_g_chi) r.min_g_chi = g * r.chi[n];
    first = false;
  }
  if (M_n.size() > 1)
    r.max_chi = double(M_n.size() - 1) /
                (cfg.delta_omega * double(cfg.L) * double(m_series));
  return r;
}

ChainAngleErrors ChainAngleErrors::random_z(int N, double lo, double hi,
                                            unsigned seed, bool matched) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  ChainAngleErrors e;
  e.in.resize(N, {0, 0, 0});
  e.out.resize(N, {0, 0, 0});
  for (int j = 0; j < N; ++j) {
    e.in[j][2] = u(rng) * (kPi / 2);
    e.out[j][2] = matched ? e.in[j][2] : u(rng) * (kPi / 2);
  }
  return e;
}

MatC error_frame(int N, const std::vector<std::array<double, 3>>& legs) {
  if (int(legs.size()) != N) throw std::invalid_argument("one leg per qubit");
  const long d = 1L << N;
  MatC u = MatC::Identity(d, d);
  for (int j = 0; j < N; ++j) {
    u = pauli_rotation_matrix(N, {{j, 'x'}}, legs[j][0]) * u;
    u = pauli_rotation_matrix(N, {{j, 'y'}}, -legs[j][1]) * u;
    u = pauli_rotation_matrix(N, {{j, 'z'}}, -legs[j][2]) * u;
  }
  return u;
}

ErrorExperimentResult error_experiment(const KitaevParams& p,
                                       const SpectralConfig& cfg,
                                       const VecC& psi,
                                       const ChainAngleErrors& err, long M,
                                       double threshold_fraction) {
  cfg.validate();
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  const MatC u_in = error_frame(p.N, err.in);
  const MatC u_out_dag = error_frame(p.N, err.out).adjoint();

  auto series = [&](bool perturbed) {
    std::vector<cd> ov(cfg.L);
    for (long n = 0; n < cfg.L; ++n) {
      const double phi = p.w * cfg.t(n) / double(M);
      MatC step = kitaev_trotter_step(p, phi);
      if (perturbed) step = u_out_dag * step * u_in;
      ov[n] = (psi.adjoint() * matrix_power(step, M) * psi)(0, 0);
    }
    return ov;
  };

  ErrorExperimentResult r;
  r.clean = analyze_overlaps(series(false), cfg, threshold_fraction);
  r.perturbed = analyze_overlaps(series(true), cfg, threshold_fraction);

  for (const Peak& c : r.clean.peaks) {
    ErrorExperimentResult::Shift row;
    row.omega_clean = c.omega;
    double best = -1;
    double best_weight = 0;
    for (const Peak& q : r.perturbed.peaks) {
      const double d = folded_distance(q.omega, c.omega, cfg);
      if (best < 0 || d < best) {
        best = d;
        row.omega_perturbed = q.omega;
        best_weight = q.weight;
      }
    }
    if (best < 0) continue;  // no perturbed peaks at all
    row.dweight = best_weight - c.weight;
    r.max_center_shift = std::max(r.max_center_shift, best);
    r.max_weight_change = std::max(r.max_weight_change, std::abs(row.dweight));
    r.shifts.push_back(row);
  }
  Eigen::SelfAdjointEigenSolver<MatC> es(kitaev_hamiltonian(p));
  for (const Peak& q : r.perturbed.peaks) {
    bool near = false;
    for (long j = 0; j < es.eigenvalues().size(); ++j)
      if (folded_distance(q.omega, es.eigenvalues()[j], cfg) <= cfg.eta)
        near = true;
    if (!near) ++r.spurious_peaks;
  }
  return r;
}

PhiShiftReport phi_M_shift_check(const MatC& H, const VecC& psi,
                                 const SpectralConfig& cfg, double delta,
                                 double threshold_fraction) {
  cfg.validate();
  PhiShiftReport r;
  r.scale = 1.0 + delta;
  ExactEvolver ev(H, psi);
  std::vector<cd> clean(cfg.L), shifted(cfg.L);
  for (long n = 0; n < cfg.L; ++n) {
    clean[n] = ev.overlap_at(cfg.t(n));
    shifted[n] = ev.overlap_at(r.scale * cfg.t(n));
  }
  r.clean = analyze_overlaps(std::move(clean), cfg, threshold_fraction);
  r.shifted = analyze_overlaps(std::move(shifted), cfg, threshold_fraction);
  r.sum_rule_shifted = r.shifted.sum_rule_deviation;

  const double p = cfg.period();
  for (const Peak& c : r.clean.peaks) {
    // Unfold to the signed energy of smaller magnitude, then predict where
    // the rescaled pole lands.
    const double e = c.omega <= p / 2 ? c.omega : c.omega - p;
    double best = -1;
    for (const Peak& s : r.shifted.peaks) {
      const double d = folded_distance(s.omega, e * r.scale, cfg);
      if (best < 0 || d < best) best = d;
    }
    if (best >= 0) r.max_center_mismatch = std::max(r.max_center_mismatch, best);
  }
  return r;
}

}  // namespace mbqc
