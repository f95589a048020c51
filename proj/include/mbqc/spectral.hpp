// Time-series eigenvalue estimation: overlap sampling of a phase-coherent
// propagator, damped discrete Fourier transform, sum rule, Lorentzian peak
// extraction, minimum-Trotter-depth search, and measurement-precision
// accounting.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "mbqc/oracle.hpp"

namespace mbqc {

struct SpectralConfig {
  long L = 0;             // samples; grid t_n = n dt, w_m = m domega
  double delta_omega = 0; // frequency step, units of w
  double eta = 0;         // Lorentzian broadening, units of w
  double delta_F = 1e-2;  // sum-rule tolerance
  double delta_T = 1e-2;  // Trotter overlap tolerance

  // delta_omega * delta_t * L = 2 pi exactly.
  double delta_t() const;
  double t(long n) const { return double(n) * delta_t(); }
  double omega(long m) const { return double(m) * delta_omega; }
  double period() const { return double(L) * delta_omega; }  // alias window
  void validate() const;  // throws std::invalid_argument
};

struct Peak {
  double omega = 0;   // refined center, within [0, L*delta_omega)
  double weight = 0;  // eta-deconvolved |<u_j|psi_I>|^2 estimate
};

struct SpectralSeries {
  std::vector<cd> overlaps;      // <psi_I| e^{-iHt_n} |psi_I>, n = 0..L-1
  std::vector<double> spectrum;  // A(w_m), m = 0..L-1
  double sum_rule_deviation = 0;
  std::vector<Peak> peaks;       // sorted by omega
};

// Phase-coherent overlap <psi_I| U(t) |psi_I> as a function of time.
using OverlapFn = std::function<cd(double t)>;

std::vector<cd> overlap_series(const OverlapFn& f, const SpectralConfig& cfg);
std::vector<cd> overlap_series(const ExactEvolver& ev,
                               const SpectralConfig& cfg);

// A(w_m) = (dt/pi) sum_n Re[e^{(i w_m - eta) t_n} overlaps[n]], evaluated
// term by term (the damped kernel is part of the estimator, not a windowing
// convenience).
std::vector<double> spectral_function(const std::vector<cd>& overlaps,
                                      const SpectralConfig& cfg);

// |1 - domega * sum_m spectrum[m]|
double sum_rule(const std::vector<double>& spectrum,
                const SpectralConfig& cfg);

// Cyclic local maxima above threshold_fraction * max, center refined by
// 3-point parabolic interpolation.  Each grid point's mass domega * A(w_m)
// goes to the nearest center, so weights estimate the pole residues and sum
// to the sum-rule total.
std::vector<Peak> find_peaks(const std::vector<double>& spectrum,
                             const SpectralConfig& cfg,
                             double threshold_fraction = 1e-3);

SpectralSeries analyze_overlaps(std::vector<cd> overlaps,
                                const SpectralConfig& cfg,
                                double threshold_fraction = 1e-3);

// Frequencies live on a circle of circumference L*domega; an eigenvalue E
// (possibly negative) appears at its wrapped position.  Distance used when
// matching peaks against eigenvalues.
double folded_distance(double omega, double energy, const SpectralConfig& cfg);

// Ready-made overlap functions.
OverlapFn exact_overlap_fn(const MatC& H, const VecC& psi);
// <psi| step(w t / M)^M |psi> at every requested t.
OverlapFn kitaev_trotter_overlap_fn(const KitaevParams& p, long M,
                                    const VecC& psi);
OverlapFn hubbard_trotter_overlap_fn(const HubbardParams& p, long M,
                                     const VecC& psi);

// Smallest M with |trotter_ov(M) - exact_ov| < delta_T, by doubling then
// bisection on the first crossing (the error is treated as monotone-ish;
// the criterion choice is recorded by callers in run metadata).
long min_trotter_steps(const std::function<cd(long)>& trotter_ov, cd exact_ov,
                       double delta_T, long m_max = 1L << 20);

// Per-time-index minimum depth for the first chain model: M_n such that the
// Trotterized overlap at t_n matches the exact one within cfg.delta_T.
std::vector<long> kitaev_min_trotter_sweep(const KitaevParams& p,
                                           const SpectralConfig& cfg,
                                           const VecC& psi);

// chi_n = n w / (domega L M) is the time-step-n measurement angle in turns.
// A deployed run uses one depth for the whole series, so the largest angle
// is chi_{L-1} at the series-wide depth max_n M_n; the finest angle
// granularity ever needed is governed by the per-index minima.
struct PrecisionReport {
  std::vector<long> M;       // per n
  std::vector<double> chi;   // chi_n at the per-index depth M_n
  double max_chi = 0;        // chi at the last index, series-wide depth
  double min_g_chi = 0;      // g * chi_n minimized over n >= 1
};
PrecisionReport precision_report(const std::vector<long>& M_n,
                                 const SpectralConfig& cfg, double g);

// Per-qubit angle offsets (radians) on the three Euler legs entering a step
// and the three leaving it; `in` maps to the x/y/z rotations of the entering
// frame, `out` to the leaving frame.
struct ChainAngleErrors {
  std::vector<std::array<double, 3>> in;   // size N, {eps_x, eps_y, eps_z}
  std::vector<std::array<double, 3>> out;  // size N
  bool symmetric() const { return in == out; }

  // Offsets on the z-legs only, drawn uniformly from [lo, hi] relative to
  // the quarter-turn baseline (pi/2).  Matched mode copies each entering
  // offset to the leaving one; otherwise both are drawn independently.
  static ChainAngleErrors random_z(int N, double lo, double hi,
                                   unsigned seed, bool matched);
};

// prod_j Rz^{(j)}(-eps_z) Ry^{(j)}(-eps_y) Rx^{(j)}(eps_x)
MatC error_frame(int N, const std::vector<std::array<double, 3>>& legs);

struct ErrorExperimentResult {
  SpectralSeries clean;      // eps = 0 at the same depth M
  SpectralSeries perturbed;  // (out_frame^dag step in_frame)^M overlaps
  struct Shift {
    double omega_clean = 0;
    double omega_perturbed = 0;  // nearest perturbed peak (folded)
    double dweight = 0;          // perturbed - clean weight
  };
  std::vector<Shift> shifts;      // one row per clean peak
  double max_center_shift = 0;    // folded distance, w-units
  double max_weight_change = 0;   // absolute
  // Perturbed peaks farther than one broadening width from every exact
  // eigenvalue; matched errors only redistribute weight among eigenvalues,
  // so anything here means the pole structure itself broke.
  int spurious_peaks = 0;
};
ErrorExperimentResult error_experiment(const KitaevParams& p,
                                       const SpectralConfig& cfg,
                                       const VecC& psi,
                                       const ChainAngleErrors& err, long M,
                                       double threshold_fraction = 1e-3);

// A uniform measurement-angle rescale phi -> (1+delta) phi is a time-axis
// rescale t -> (1+delta) t, so every pole's apparent frequency moves from E
// to E*(1+delta) and nothing else changes.  Verifies that against the exact
// propagator.
struct PhiShiftReport {
  SpectralSeries clean;
  SpectralSeries shifted;
  double scale = 1;                // 1 + delta
  double max_center_mismatch = 0;  // |w_shifted - E_clean*scale|, folded
  double sum_rule_shifted = 0;
};
PhiShiftReport phi_M_shift_check(const MatC& H, const VecC& psi,
                                 const SpectralConfig& cfg, double delta,
                                 double threshold_fraction = 1e-3);

}  // namespace mbqc
