// Command-line front end: pattern building/compactification, execution,
// equivalence verification suites, spectral runs, and precision sweeps.
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 verification failure.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "mbqc/executor.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/oracle.hpp"
#include "mbqc/pattern.hpp"
#include "mbqc/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace mbqc;

namespace {

constexpr const char* kVersion = "1.0.0";

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << text;
}

// Every emitted table starts with the hash of the run configuration so files
// from different runs cannot be mixed silently.
void write_csv(const std::string& path, const std::string& hash,
               const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream ss;
  ss << "# config " << hash << "\n" << header << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) ss << (i ? "," : "") << r[i];
    ss << "\n";
  }
  write_file(path, ss.str());
}

VecC random_input(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  VecC v(1L << n);
  for (long i = 0; i < v.size(); ++i) v[i] = cd(d(rng), d(rng));
  v /= v.norm();
  return v;
}

Statevector load_input(const VecC& v, const std::vector<Site>& inputs) {
  std::vector<QubitLabel> labels;
  for (const Site& s : inputs) labels.push_back(s.label());
  return to_statevector(v, labels);
}

double fidelity(const VecC& target, const Statevector& got) {
  return std::abs((target.adjoint() * to_eigen(got))(0, 0));
}

// ---------------------------------------------------------------- pattern --

MeasurementPattern build_pattern(const std::string& model, int N, long M,
                                 double g, double phi, bool rzz, bool rzzz,
                                 bool euler, double theta,
                                 const std::vector<double>& abc) {
  const int picked = int(rzz) + int(rzzz) + int(euler) + int(!model.empty());
  if (picked != 1)
    throw std::invalid_argument(
        "pick exactly one of --rzz, --rzzz, --euler, --model");
  if (rzz) return rzz_pattern(theta);
  if (rzzz) return rzzz_pattern(theta);
  if (euler) return euler_leg(abc[0], abc[1], abc[2]);
  if (model == "kitaev") return kitaev_pattern(N, M, g, phi);
  if (model == "hubbard") return hubbard_pattern(N, M, g, phi);
  throw std::invalid_argument("unknown model " + model);
}

int cmd_pattern_count(const std::string& model, int N, long M) {
  const Model m = model == "kitaev" ? Model::Kitaev : Model::Hubbard;
  std::printf("model %s N %d M %ld\n", model.c_str(), N, M);
  std::printf("SLCS    %ld\n", count_resources(m, Representation::Slcs, N, M));
  std::printf("CCS     %ld\n", count_resources(m, Representation::Ccs, N, M));
  std::printf("circuit %ld\n",
              count_resources(m, Representation::Circuit, N, M));
  return 0;
}

int cmd_resources(int N, long M) {
  std::printf("N %d M %ld\n", N, M);
  std::printf("%-8s %10s %10s\n", "", "kitaev", "hubbard");
  const std::pair<const char*, Representation> rows[] = {
      {"SLCS", Representation::Slcs},
      {"CCS", Representation::Ccs},
      {"circuit", Representation::Circuit}};
  for (const auto& [name, repr] : rows)
    std::printf("%-8s %10ld %10ld\n", name,
                count_resources(Model::Kitaev, repr, N, M),
                count_resources(Model::Hubbard, repr, N, M));
  return 0;
}

// ---------------------------------------------------------------- execute --

int cmd_execute(const std::string& in, unsigned exec_seed, unsigned input_seed,
                bool enumerate, const std::string& out) {
  const auto p = MeasurementPattern::from_text(read_file(in));
  p.validate();
  const int n = int(p.inputs.size());
  const VecC psi = random_input(n, input_seed);
  const VecC tgt = target_unitary(p) * psi;
  const Statevector loaded = load_input(psi, p.inputs);

  json j;
  j["pattern"] = p.target;
  j["qubits"] = p.nodes.size();
  j["measured"] = p.measured_count();
  j["input_seed"] = input_seed;
  if (enumerate) {
    if (p.measured_count() > 20)
      throw std::invalid_argument("pattern too large to enumerate");
    double worst = 1.0, ptot = 0.0;
    long branches = 0;
    std::size_t live = 0;
    execute_enumerate(p, loaded, [&](const ExecutionResult& r) {
      worst = std::min(worst, fidelity(tgt, r.corrected));
      ptot += r.probability;
      live = std::max(live, r.peak_live);
      ++branches;
    });
    j["mode"] = "enumerate";
    j["branches"] = branches;
    j["total_probability"] = ptot;
    j["min_fidelity"] = worst;
    j["peak_live_qubits"] = live;
  } else {
    const auto r = execute(p, loaded, ExecutionMode::sample(exec_seed));
    std::string bits;
    for (const Site& s : r.outcomes.order) bits += char('0' + r.outcomes.s.at(s));
    j["mode"] = "sample";
    j["seed"] = exec_seed;
    j["outcomes"] = bits;
    j["branch_probability"] = r.probability;
    j["fidelity"] = fidelity(tgt, r.corrected);
    j["byproduct"] = r.byproduct_word;
    j["peak_live_qubits"] = r.peak_live;
  }
  j["config_hash"] = fnv1a_hex(j.dump());
  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

// ------------------------------------------------------------- compactify --

int cmd_compactify_graph(const std::string& in, const std::string& sites_csv,
                         const std::string& axes, const std::string& signs,
                         const std::string& policy_name,
                         const std::string& out) {
  const Graph g = Graph::from_text(read_file(in));
  std::vector<QubitLabel> sites;
  std::stringstream ss(sites_csv);
  for (std::string tok; std::getline(ss, tok, ',');)
    sites.push_back(std::stoll(tok));
  if (sites.size() != axes.size() || sites.size() != signs.size())
    throw std::invalid_argument("--sites, --axes, --outcomes lengths differ");
  std::vector<char> ax(axes.begin(), axes.end());
  std::vector<int> m;
  for (char c : signs) {
    if (c != '+' && c != '-')
      throw std::invalid_argument("--outcomes must be a string of + and -");
    m.push_back(c == '+' ? +1 : -1);
  }
  const auto policy = policy_name == "largest"
                          ? SpecialNeighborPolicy::LargestLabel
                          : SpecialNeighborPolicy::SmallestLabel;
  const auto res = compactify_sequence(g, sites, ax, m, policy);
  if (!out.empty()) write_file(out, res.graph.to_text());
  std::cout << res.graph.to_text();
  std::cout << "corrections: " << res.corrections.str() << "\n";
  return 0;
}

// ----------------------------------------------------------------- verify --

json verify_branch_suite(const MeasurementPattern& p, unsigned input_seed,
                         bool exhaustive, int sampled_branches,
                         double min_fid) {
  const VecC psi = random_input(int(p.inputs.size()), input_seed);
  const VecC tgt = target_unitary(p) * psi;
  const Statevector loaded = load_input(psi, p.inputs);
  double worst = 1.0;
  long branches = 0;
  std::size_t live = 0;
  if (exhaustive) {
    execute_enumerate(p, loaded, [&](const ExecutionResult& r) {
      worst = std::min(worst, fidelity(tgt, r.corrected));
      live = std::max(live, r.peak_live);
      ++branches;
    });
  } else {
    for (int s = 0; s < sampled_branches; ++s) {
      const auto r = execute(p, loaded, ExecutionMode::sample(s));
      worst = std::min(worst, fidelity(tgt, r.corrected));
      live = std::max(live, r.peak_live);
      ++branches;
    }
  }
  json j;
  j["target"] = p.target;
  j["branches"] = branches;
  j["worst_fidelity"] = worst;
  j["peak_live_qubits"] = live;
  j["pass"] = worst >= min_fid;
  return j;
}

json verify_propagation_rules() {
  auto proj = [](char axis, int m) {
    const Mat2 p = pauli_matrix(axis);
    Mat2 out;
    for (int i = 0; i < 4; ++i)
      out[i] = 0.5 * (cd(i == 0 || i == 3 ? 1 : 0, 0) + double(m) * p[i]);
    return out;
  };
  int checked = 0, failed = 0;
  for (char a : {'x', 'y', 'z'})
    for (int m : {+1, -1})
      for (Gen g : {Gen::I, Gen::X, Gen::Y, Gen::Z, Gen::SqrtXp, Gen::SqrtXm,
                    Gen::SqrtYp, Gen::SqrtYm, Gen::SqrtZp, Gen::SqrtZm}) {
        const auto r = propagate_projector(a, m, g);
        const Mat2 lhs = mat_mul(proj(a, m), gen_matrix(g));
        const Mat2 rhs = mat_mul(gen_matrix(g), proj(r.axis, r.m));
        double diff = 0;
        for (int i = 0; i < 4; ++i) diff = std::max(diff, std::abs(lhs[i] - rhs[i]));
        ++checked;
        if (diff > 1e-12) ++failed;
      }
  json j;
  j["identities_checked"] = checked;
  j["failures"] = failed;
  j["pass"] = failed == 0;
  return j;
}

json verify_compactify() {
  const auto p = rzz_pattern(1.234);
  Graph g;
  for (const auto& n : p.nodes) g.add_vertex(n.site.label());
  for (const auto& [a, b] : p.edges) g.add_edge(a.label(), b.label());
  std::vector<QubitLabel> sites;
  for (const auto& n : p.nodes)
    if (n.role == Role::Body && n.pauli_x) sites.push_back(n.site.label());
  const std::vector<char> axes(sites.size(), 'x');

  // State-level removal theorem on every outcome branch, for both
  // distinguished-neighbor policies; the two compacted states must also agree
  // with each other once their tracked corrections are applied.
  double worst = 1.0;
  long branches = 0;
  for (long bits = 0; bits < (1L << sites.size()); ++bits) {
    std::vector<int> m;
    for (std::size_t i = 0; i < sites.size(); ++i)
      m.push_back((bits >> i) & 1 ? -1 : +1);
    Statevector ref = cluster_state(g);
    bool possible = true;
    try {
      for (std::size_t i = 0; i < sites.size(); ++i)
        ref.measure_pauli(sites[i], 'x', MeasureMode::forced(m[i] == 1 ? 0 : 1));
    } catch (const ImpossibleBranch&) {
      possible = false;
    }
    if (!possible) continue;
    ++branches;
    for (auto policy : {SpecialNeighborPolicy::SmallestLabel,
                        SpecialNeighborPolicy::LargestLabel}) {
      const auto res = compactify_sequence(g, sites, axes,
                                           std::vector<int>(m), policy);
      Statevector got = cluster_state(res.graph);
      res.corrections.apply_to(got);
      got.permute_to(ref.labels());
      worst = std::min(worst, std::abs(ref.overlap(got)));
    }
  }

  const auto c = compactify_pattern(p);
  json j;
  j["removed_sites"] = sites.size();
  j["branches"] = branches;
  j["worst_fidelity"] = worst;
  j["compact_qubits"] = c.nodes.size();
  j["compact_measured"] = c.measured_count();
  j["pass"] = worst >= 1.0 - 1e-10 && c.nodes.size() == 5 &&
              c.measured_count() == 3;
  return j;
}

int cmd_verify(const std::string& suite, const std::string& out) {
  json j;
  j["suite"] = suite;
  if (suite == "rzz-exhaustive") {
    j["result"] = verify_branch_suite(rzz_pattern(1.234), 11, true, 0,
                                      1.0 - 1e-10);
  } else if (suite == "rzzz-sampled") {
    auto r = verify_branch_suite(rzzz_pattern(-0.81), 12, false, 200,
                                 1.0 - 1e-9);
    if (r["peak_live_qubits"].get<std::size_t>() > 12) r["pass"] = false;
    j["result"] = r;
  } else if (suite == "kitaev") {
    j["result"] = json::array({
        verify_branch_suite(kitaev_pattern(2, 1, 0.4, 0.3), 13, false, 50,
                            1.0 - 1e-9),
        verify_branch_suite(kitaev_pattern(3, 1, 0.4, 0.3), 14, false, 50,
                            1.0 - 1e-9)});
  } else if (suite == "hubbard") {
    j["result"] = verify_branch_suite(hubbard_pattern(2, 1, 0.7, 0.3), 15,
                                      false, 25, 1.0 - 1e-9);
  } else if (suite == "compactify") {
    j["result"] = verify_compactify();
  } else if (suite == "propagation-rules") {
    j["result"] = verify_propagation_rules();
  } else {
    throw std::invalid_argument("unknown suite " + suite);
  }

  bool pass = true;
  auto scan = [&](const json& r) {
    if (r.is_array())
      for (const auto& e : r) pass = pass && e.at("pass").get<bool>();
    else
      pass = pass && r.at("pass").get<bool>();
  };
  scan(j["result"]);
  j["pass"] = pass;
  j["config_hash"] = fnv1a_hex(j.dump());
  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  if (!pass) throw VerificationFailure("suite " + suite + " failed");
  return 0;
}

// ---------------------------------------------------------------- spectrum --

std::vector<cd> parallel_series(const OverlapFn& f, const SpectralConfig& cfg,
                                int jobs) {
  std::vector<cd> ov(cfg.L);
  if (jobs <= 1) {
    for (long n = 0; n < cfg.L; ++n) ov[n] = f(cfg.t(n));
    return ov;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  for (int k = 0; k < jobs; ++k)
    pool.emplace_back([&] {
      for (long n; (n = next.fetch_add(1)) < cfg.L;) ov[n] = f(cfg.t(n));
    });
  for (auto& t : pool) t.join();
  return ov;
}

void emit_series(const std::filesystem::path& dir, const std::string& prefix,
                 const SpectralSeries& s, const SpectralConfig& cfg,
                 const std::string& hash) {
  std::vector<std::vector<std::string>> rows;
  for (long n = 0; n < cfg.L; ++n)
    rows.push_back({std::to_string(n), fmt17(cfg.t(n)),
                    fmt17(s.overlaps[n].real()), fmt17(s.overlaps[n].imag())});
  write_csv(dir / (prefix + "overlaps.csv"), hash,
            "n,t,re_overlap,im_overlap", rows);
  rows.clear();
  for (long m = 0; m < cfg.L; ++m)
    rows.push_back({std::to_string(m), fmt17(cfg.omega(m)),
                    fmt17(s.spectrum[m])});
  write_csv(dir / (prefix + "spectrum.csv"), hash, "m,omega,A", rows);
  rows.clear();
  for (std::size_t i = 0; i < s.peaks.size(); ++i)
    rows.push_back({std::to_string(i), fmt17(s.peaks[i].omega),
                    fmt17(s.peaks[i].weight)});
  write_csv(dir / (prefix + "peaks.csv"), hash, "peak_index,omega,weight",
            rows);
}

int cmd_spectrum(const std::string& model, int N, double g, double w,
                 const SpectralConfig& cfg, const std::string& evolver, long M,
                 const std::string& initial, const std::string& error_kind,
                 const std::string& ranges, long error_M, unsigned seed,
                 double phi_shift, bool emit_eigenvalues,
                 const std::string& outdir, int jobs) {
  cfg.validate();
  const bool kitaev = model == "kitaev";
  const MatC H = kitaev ? kitaev_hamiltonian({N, w, g})
                        : hubbard_hamiltonian({N, w, g});
  const MatC H0 = kitaev ? kitaev_hamiltonian({N, w, 0.0})
                         : hubbard_hamiltonian({N, w, 0.0});
  const VecC psi = ground_state(initial == "ground" ? H : H0).state;

  json meta;
  meta["model"] = model;
  meta["N"] = N;
  meta["g"] = g;
  meta["w"] = w;
  meta["L"] = cfg.L;
  meta["delta_omega"] = cfg.delta_omega;
  meta["eta"] = cfg.eta;
  meta["delta_F"] = cfg.delta_F;
  meta["delta_T"] = cfg.delta_T;
  meta["evolver"] = evolver;
  meta["trotter_M"] = M;
  meta["initial"] = initial;
  meta["error"] = error_kind;
  meta["seed"] = seed;
  meta["code_version"] = kVersion;
  const std::string hash = fnv1a_hex(meta.dump());
  meta["config_hash"] = hash;

  const std::filesystem::path dir(outdir);
  std::filesystem::create_directories(dir);

  SpectralSeries s;
  if (evolver == "exact") {
    s = analyze_overlaps(overlap_series(ExactEvolver(H, psi), cfg), cfg);
  } else if (evolver == "trotter") {
    const OverlapFn f = kitaev
                            ? kitaev_trotter_overlap_fn({N, w, g}, M, psi)
                            : hubbard_trotter_overlap_fn({N, w, g}, M, psi);
    s = analyze_overlaps(parallel_series(f, cfg, jobs), cfg);
  } else {
    throw std::invalid_argument("evolver must be exact or trotter");
  }
  emit_series(dir, "", s, cfg, hash);
  meta["sum_rule_deviation"] = s.sum_rule_deviation;
  meta["peaks"] = s.peaks.size();
  if (s.sum_rule_deviation > cfg.delta_F)
    throw std::runtime_error("sum-rule deviation above tolerance");

  if (emit_eigenvalues) {
    Eigen::SelfAdjointEigenSolver<MatC> es(H);
    const VecC c = es.eigenvectors().adjoint() * psi;
    std::vector<std::vector<std::string>> rows;
    for (long j = 0; j < es.eigenvalues().size(); ++j)
      rows.push_back({std::to_string(j), fmt17(es.eigenvalues()[j]),
                      fmt17(std::norm(c[j]))});
    write_csv(dir / "eigenvalues.csv", hash, "j,E,abs_c_sq", rows);
  }

  if (!error_kind.empty() && error_kind != "none") {
    if (!kitaev)
      throw std::invalid_argument("--error supports the kitaev model only");
    double lo = 0.45, hi = 0.56;
    if (!ranges.empty()) {
      const auto colon = ranges.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--ranges expects lo:hi");
      lo = std::stod(ranges.substr(0, colon));
      hi = std::stod(ranges.substr(colon + 1));
    }
    const bool matched = error_kind == "symmetric";
    if (!matched && error_kind != "independent")
      throw std::invalid_argument("--error must be symmetric or independent");
    const auto err = ChainAngleErrors::random_z(N, lo, hi, seed, matched);
    const auto r = error_experiment({N, w, g}, cfg, psi, err, error_M);
    emit_series(dir, "clean_", r.clean, cfg, hash);
    emit_series(dir, "perturbed_", r.perturbed, cfg, hash);
    json shifts = json::array();
    for (const auto& sh : r.shifts)
      shifts.push_back({{"omega_clean", sh.omega_clean},
                        {"omega_perturbed", sh.omega_perturbed},
                        {"dweight", sh.dweight}});
    meta["error_report"] = {{"lo", lo},
                            {"hi", hi},
                            {"M", error_M},
                            {"max_center_shift", r.max_center_shift},
                            {"max_weight_change", r.max_weight_change},
                            {"spurious_peaks", r.spurious_peaks},
                            {"shifts", shifts}};
  }

  if (phi_shift != 0.0) {
    const auto r = phi_M_shift_check(H, psi, cfg, phi_shift);
    emit_series(dir, "shifted_", r.shifted, cfg, hash);
    meta["phi_shift_report"] = {{"scale", r.scale},
                                {"max_center_mismatch", r.max_center_mismatch},
                                {"sum_rule_shifted", r.sum_rule_shifted}};
  }

  write_file(dir / "meta.json", meta.dump(2) + "\n");
  std::printf("sum_rule_deviation %s peaks %zu -> %s\n",
              fmt17(s.sum_rule_deviation).c_str(), s.peaks.size(),
              outdir.c_str());
  return 0;
}

// --------------------------------------------------------------- precision --

int cmd_precision(const std::vector<double>& gs, int N, double w,
                  const SpectralConfig& cfg, const std::string& outdir) {
  cfg.validate();
  const std::filesystem::path dir(outdir);
  std::filesystem::create_directories(dir);
  const VecC psi = ground_state(kitaev_hamiltonian({N, w, 0.0})).state;

  json meta;
  meta["model"] = "kitaev";
  meta["N"] = N;
  meta["w"] = w;
  meta["L"] = cfg.L;
  meta["delta_omega"] = cfg.delta_omega;
  meta["eta"] = cfg.eta;
  meta["delta_T"] = cfg.delta_T;
  meta["g"] = gs;
  meta["criterion"] = "abs(overlap_M - overlap_exact) < delta_T, per index";
  meta["code_version"] = kVersion;
  const std::string hash = fnv1a_hex(meta.dump());
  meta["config_hash"] = hash;

  int failures = 0;
  json summary = json::array();
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    const KitaevParams p{N, w, gs[gi]};
    const ExactEvolver ev(kitaev_hamiltonian(p), psi);
    std::vector<long> Ms(cfg.L, 1);
    std::vector<std::vector<std::string>> rows;
    for (long n = 0; n < cfg.L; ++n) {
      bool converged = true;
      try {
        Ms[n] = min_trotter_steps(
            [&](long m) {
              const VecC u = trotter_evolve_kitaev(p, {cfg.t(n), m}, psi);
              return cd((psi.adjoint() * u)(0, 0));
            },
            ev.overlap_at(cfg.t(n)), cfg.delta_T);
      } catch (const std::runtime_error&) {
        converged = false;
        ++failures;
      }
      const double chi =
          double(n) / (cfg.delta_omega * double(cfg.L) * double(Ms[n]));
      rows.push_back({std::to_string(n),
                      converged ? std::to_string(Ms[n]) : "nan",
                      converged ? fmt17(chi) : "nan"});
    }
    char name[48];
    std::snprintf(name, sizeof name, "precision_g%zu.csv", gi);
    write_csv(dir / name, hash, "n,M_min,chi", rows);
    const auto rep = precision_report(Ms, cfg, gs[gi]);
    const long mx = *std::max_element(Ms.begin(), Ms.end());
    summary.push_back({{"g", gs[gi]},
                       {"file", name},
                       {"max_M", mx},
                       {"max_chi", rep.max_chi},
                       {"min_g_chi", rep.min_g_chi}});
    std::printf("g=%s max_M=%ld max_chi=%s min_g_chi=%s\n",
                fmt17(gs[gi]).c_str(), mx, fmt17(rep.max_chi).c_str(),
                fmt17(rep.min_g_chi).c_str());
  }
  meta["summary"] = summary;
  meta["nonconverged_indices"] = failures;
  write_file(dir / "meta.json", meta.dump(2) + "\n");
  if (failures > 0)
    throw std::runtime_error("minimum-depth search failed to converge");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-pattern compiler and spectral pipeline for "
               "fermionic chain simulation"};
  app.require_subcommand(1);
  app.set_config("--config");

  // pattern build|compactify|count
  auto* pat = app.add_subcommand("pattern", "build, compactify, or census");
  pat->require_subcommand(1);
  auto* build = pat->add_subcommand("build", "emit a pattern file");
  std::string b_model, b_out;
  int b_N = 2;
  long b_M = 1;
  double b_g = 0.0, b_phi = 0.1, b_theta = 0.0;
  bool b_rzz = false, b_rzzz = false, b_euler = false;
  std::vector<double> b_abc{0, 0, 0};
  build->add_flag("--rzz", b_rzz, "two-qubit phase-gate pattern");
  build->add_flag("--rzzz", b_rzzz, "three-qubit phase-gate pattern");
  build->add_flag("--euler", b_euler, "single-wire Euler leg");
  build->add_option("--theta", b_theta, "rotation angle (radians)");
  build->add_option("--angles", b_abc, "Euler angles a b c")->expected(3);
  build->add_option("--model", b_model)->check(CLI::IsMember({"kitaev", "hubbard"}));
  build->add_option("--N", b_N, "chain sites")->check(CLI::PositiveNumber);
  build->add_option("--M", b_M, "repeated steps")->check(CLI::PositiveNumber);
  build->add_option("--g", b_g, "dimensionless coupling");
  build->add_option("--phi", b_phi, "step angle phi_M");
  build->add_option("-o,--out", b_out, "output file (default stdout)");

  auto* pcomp = pat->add_subcommand("compactify", "remove x-measured sites");
  std::string pc_in, pc_out;
  pcomp->add_option("-i,--in", pc_in)->required();
  pcomp->add_option("-o,--out", pc_out, "output file (default stdout)");

  auto* count = pat->add_subcommand("count", "measured-site census");
  std::string c_model;
  int c_N = 2;
  long c_M = 1;
  count->add_option("--model", c_model)->required()
      ->check(CLI::IsMember({"kitaev", "hubbard"}));
  count->add_option("--N", c_N)->required()->check(CLI::Range(2, 1000));
  count->add_option("--M", c_M)->check(CLI::PositiveNumber);

  auto* res = app.add_subcommand("resources", "census table, both models");
  int r_N = 2;
  long r_M = 1;
  res->add_option("--N", r_N)->required()->check(CLI::Range(2, 1000));
  res->add_option("--M", r_M)->check(CLI::PositiveNumber);

  auto* exec = app.add_subcommand("execute", "run a pattern file");
  std::string e_in, e_out;
  unsigned e_seed = 0, e_input_seed = 1;
  bool e_enum = false;
  exec->add_option("-i,--in", e_in)->required();
  exec->add_option("--seed", e_seed, "execution seed");
  exec->add_option("--input-seed", e_input_seed, "input-state seed");
  exec->add_flag("--enumerate", e_enum, "visit every outcome branch");
  exec->add_option("-o,--out", e_out, "report file (default stdout)");

  auto* comp = app.add_subcommand("compactify", "graph-level Pauli removal");
  std::string g_in, g_sites, g_axes, g_signs, g_policy = "largest", g_out;
  comp->add_option("-i,--in", g_in, "graph text file")->required();
  comp->add_option("--sites", g_sites, "comma-separated labels")->required();
  comp->add_option("--axes", g_axes, "e.g. xxyz")->required();
  comp->add_option("--outcomes", g_signs, "e.g. ++-+")->required();
  comp->add_option("--policy", g_policy)
      ->check(CLI::IsMember({"smallest", "largest"}));
  comp->add_option("-o,--out", g_out, "compacted graph file");

  auto* ver = app.add_subcommand("verify", "equivalence suites");
  std::string v_suite, v_out;
  ver->add_option("--suite", v_suite)->required()
      ->check(CLI::IsMember({"rzz-exhaustive", "rzzz-sampled", "kitaev",
                             "hubbard", "compactify", "propagation-rules"}));
  ver->add_option("-o,--out", v_out, "report file (default stdout)");

  auto* spec = app.add_subcommand("spectrum", "overlap series and transform");
  std::string s_model = "kitaev", s_evolver = "exact", s_initial = "free-ground";
  std::string s_error, s_ranges, s_outdir;
  int s_N = 4, s_jobs = 1;
  double s_g = 0.4, s_w = 1.0, s_phi_shift = 0.0;
  long s_M = 1, s_error_M = 2000;
  unsigned s_seed = 7;
  bool s_eigs = false;
  SpectralConfig s_cfg{1272, 0.01, 0.02, 1e-2, 1e-2};
  spec->add_option("--model", s_model)->check(CLI::IsMember({"kitaev", "hubbard"}));
  spec->add_option("--N", s_N)->check(CLI::Range(2, 12));
  spec->add_option("--g", s_g);
  spec->add_option("--w", s_w)->check(CLI::PositiveNumber);
  spec->add_option("--L", s_cfg.L)->check(CLI::Range(2L, 1000000L));
  spec->add_option("--domega", s_cfg.delta_omega)->check(CLI::PositiveNumber);
  spec->add_option("--eta", s_cfg.eta)->check(CLI::PositiveNumber);
  spec->add_option("--delta-F", s_cfg.delta_F)->check(CLI::PositiveNumber);
  spec->add_option("--delta-T", s_cfg.delta_T)->check(CLI::PositiveNumber);
  spec->add_option("--evolver", s_evolver)->check(CLI::IsMember({"exact", "trotter"}));
  spec->add_option("--M", s_M, "Trotter depth")->check(CLI::PositiveNumber);
  spec->add_option("--initial", s_initial)
      ->check(CLI::IsMember({"free-ground", "ground"}));
  spec->add_option("--error", s_error)
      ->check(CLI::IsMember({"none", "symmetric", "independent"}));
  spec->add_option("--ranges", s_ranges, "z-leg offset range lo:hi");
  spec->add_option("--error-M", s_error_M)->check(CLI::PositiveNumber);
  spec->add_option("--seed", s_seed);
  spec->add_option("--phi-shift", s_phi_shift, "uniform angle rescale delta");
  spec->add_flag("--eigenvalues", s_eigs, "emit the ED overlay table");
  spec->add_option("--jobs", s_jobs, "threads for trotter overlaps")
      ->check(CLI::PositiveNumber);
  spec->add_option("--outdir", s_outdir)->envname("MBQC_OUTDIR")->required();

  auto* prec = app.add_subcommand("precision", "minimum-depth sweep");
  std::vector<double> p_g{0.4};
  int p_N = 4;
  double p_w = 1.0;
  std::string p_outdir;
  SpectralConfig p_cfg{46, 0.01, 0.02, 1e-2, 1e-2};
  prec->add_option("--g", p_g, "coupling values");
  prec->add_option("--N", p_N)->check(CLI::Range(2, 12));
  prec->add_option("--w", p_w)->check(CLI::PositiveNumber);
  prec->add_option("--L", p_cfg.L)->check(CLI::Range(2L, 100000L));
  prec->add_option("--domega", p_cfg.delta_omega)->check(CLI::PositiveNumber);
  prec->add_option("--eta", p_cfg.eta)->check(CLI::PositiveNumber);
  prec->add_option("--delta-T", p_cfg.delta_T)->check(CLI::PositiveNumber);
  prec->add_option("--outdir", p_outdir)->envname("MBQC_OUTDIR")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) {
      const auto p = build_pattern(b_model, b_N, b_M, b_g, b_phi, b_rzz,
                                   b_rzzz, b_euler, b_theta, b_abc);
      if (b_out.empty())
        std::cout << p.to_text();
      else
        write_file(b_out, p.to_text());
      return 0;
    }
    if (pcomp->parsed()) {
      const auto p = MeasurementPattern::from_text(read_file(pc_in));
      const auto c = compactify_pattern(p);
      if (pc_out.empty())
        std::cout << c.to_text();
      else
        write_file(pc_out, c.to_text());
      return 0;
    }
    if (count->parsed()) return cmd_pattern_count(c_model, c_N, c_M);
    if (res->parsed()) return cmd_resources(r_N, r_M);
    if (exec->parsed())
      return cmd_execute(e_in, e_seed, e_input_seed, e_enum, e_out);
    if (comp->parsed())
      return cmd_compactify_graph(g_in, g_sites, g_axes, g_signs, g_policy,
                                  g_out);
    if (ver->parsed()) return cmd_verify(v_suite, v_out);
    if (spec->parsed())
      return cmd_spectrum(s_model, s_N, s_g, s_w, s_cfg, s_evolver, s_M,
                          s_initial, s_error, s_ranges, s_error_M, s_seed,
                          s_phi_shift, s_eigs, s_outdir, s_jobs);
    if (prec->parsed()) return cmd_precision(p_g, p_N, p_w, p_cfg, p_outdir);
    return 1;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
