#include "mbqc/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace mbqc {

namespace {
constexpr double kImpossible = 1e-12;
const cd kI(0.0, 1.0);
}  // namespace

Statevector Statevector::plus_register(const std::vector<QubitLabel>& labels) {
  if (labels.empty()) throw std::invalid_argument("empty label list");
  Statevector s;
  for (QubitLabel q : labels) s.attach_plus(q);
  return s;
}

Statevector Statevector::from_amplitudes(std::vector<QubitLabel> labels,
                                         std::vector<cd> amps) {
  if (amps.size() != (std::size_t{1} << labels.size()))
    throw std::invalid_argument("amplitude length != 2^labels");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw std::invalid_argument("duplicate label");
  Statevector s;
  s.labels_ = std::move(labels);
  s.amps_ = std::move(amps);
  return s;
}

bool Statevector::has_qubit(QubitLabel q) const {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

int Statevector::index_of(QubitLabel q) const {
  auto it = std::find(labels_.begin(), labels_.end(), q);
  if (it == labels_.end())
    throw std::invalid_argument("unknown or removed qubit label " +
                                std::to_string(q));
  return static_cast<int>(it - labels_.begin());
}

double Statevector::norm() const {
  double n = 0.0;
  for (const cd& a : amps_) n += std::norm(a);
  return std::sqrt(n);
}

void Statevector::attach_plus(QubitLabel q) {
  if (has_qubit(q)) throw std::invalid_argument("label already live");
  if (labels_.empty()) {
    labels_ = {q};
    const double r = 1.0 / std::sqrt(2.0);
    amps_ = {cd(r, 0), cd(r, 0)};
    return;
  }
  labels_.push_back(q);
  const std::size_t old = amps_.size();
  amps_.resize(2 * old);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t v = 0; v < old; ++v) {
    amps_[v + old] = amps_[v] * r;
    amps_[v] *= r;
  }
}

void Statevector::apply_cz(QubitLabel j, QubitLabel k) {
  if (j == k) throw std::invalid_argument("cz needs distinct qubits");
  const std::size_t bj = std::size_t{1} << index_of(j);
  const std::size_t bk = std::size_t{1} << index_of(k);
  for (std::size_t v = 0; v < amps_.size(); ++v)
    if ((v & bj) && (v & bk)) amps_[v] = -amps_[v];
}

void Statevector::apply_pauli(QubitLabel q, char axis) {
  const std::size_t b = std::size_t{1} << index_of(q);
  switch (axis) {
    case 'x':
      for (std::size_t v = 0; v < amps_.size(); ++v)
        if (!(v & b)) std::swap(amps_[v], amps_[v | b]);
      return;
    case 'y':
      for (std::size_t v = 0; v < amps_.size(); ++v)
        if (!(v & b)) {
          cd a0 = amps_[v], a1 = amps_[v | b];
          amps_[v] = -kI * a1;   // Y|1> = -i|0>
          amps_[v | b] = kI * a0;
        }
      return;
    case 'z':
      for (std::size_t v = 0; v < amps_.size(); ++v)
        if (v & b) amps_[v] = -amps_[v];
      return;
    default:
      throw std::invalid_argument("axis must be x, y or z");
  }
}

void Statevector::apply_single(QubitLabel q, const cd m[4]) {
  const std::size_t b = std::size_t{1} << index_of(q);
  for (std::size_t v = 0; v < amps_.size(); ++v)
    if (!(v & b)) {
      cd a0 = amps_[v], a1 = amps_[v | b];
      amps_[v] = m[0] * a0 + m[1] * a1;
      amps_[v | b] = m[2] * a0 + m[3] * a1;
    }
}

void Statevector::apply_pauli_rotation(const std::vector<char>& axes,
                                       const std::vector<QubitLabel>& sites,
                                       double theta) {
  if (axes.size() != sites.size() || axes.empty())
    throw std::invalid_argument("axes/sites length mismatch");
  std::vector<std::size_t> bits(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    bits[i] = std::size_t{1} << index_of(sites[i]);
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if (sites[i] == sites[j])
        throw std::invalid_argument("rotation sites must be distinct");
  }
  std::size_t flip = 0;
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (axes[i] == 'x' || axes[i] == 'y') flip |= bits[i];
    else if (axes[i] != 'z') throw std::invalid_argument("bad axis");

  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  // coefficient of P|v> = coef(v) |v ^ flip|
  auto coef = [&](std::size_t v) -> cd {
    cd ph(1, 0);
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const bool bit = (v & bits[i]) != 0;
      if (axes[i] == 'y') ph *= bit ? -kI : kI;   // Y|b> = i(-1)^b |1-b>
      else if (axes[i] == 'z') ph *= bit ? -1.0 : 1.0;
    }
    return ph;
  };

  if (flip == 0) {
    for (std::size_t v = 0; v < amps_.size(); ++v) {
      const double p = coef(v).real();  // +-1
      amps_[v] *= cd(c, -s * p);
    }
    return;
  }
  for (std::size_t v = 0; v < amps_.size(); ++v) {
    const std::size_t u = v ^ flip;
    if (v > u) continue;
    const cd av = amps_[v], au = amps_[u];
    amps_[v] = c * av - kI * s * coef(u) * au;
    amps_[u] = c * au - kI * s * coef(v) * av;
  }
}

MeasureResult Statevector::measure_xy(QubitLabel q, double phibar,
                                      MeasureMode mode) {
  const int idx = index_of(q);
  const std::size_t b = std::size_t{1} << idx;
  const std::size_t half = amps_.size() / 2;
  const double r = 1.0 / std::sqrt(2.0);
  const cd e = std::exp(-kI * phibar) * r;  // conj phase: bra side

  auto project = [&](int s, std::vector<cd>& out) -> double {
    out.resize(half);
    const cd b1 = (s == 0) ? e : -e;
    double p = 0.0;
    const std::size_t low = b - 1;
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t v0 = ((k & ~low) << 1) | (k & low);
      out[k] = r * amps_[v0] + b1 * amps_[v0 | b];
      p += std::norm(out[k]);
    }
    return p;
  };

  std::vector<cd> res;
  int s;
  double p;
  if (mode.kind == MeasureMode::Forced) {
    s = mode.forced_outcome ? 1 : 0;
    p = project(s, res);
    if (p < kImpossible)
      throw ImpossibleBranch("forced outcome has zero probability");
  } else {
    if (!mode.rng) throw std::invalid_argument("sampling needs an rng");
    double p0 = project(0, res);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (u01(*mode.rng) < p0) {
      s = 0;
      p = p0;
    } else {
      s = 1;
      p = project(1, res);
    }
  }
  const double inv = 1.0 / std::sqrt(p);
  for (cd& a : res) a *= inv;
  amps_ = std::move(res);
  labels_.erase(labels_.begin() + idx);
  return {s, p};
}

MeasureResult Statevector::measure_pauli(QubitLabel q, char axis,
                                         MeasureMode mode) {
  if (axis == 'x') return measure_xy(q, 0.0, mode);
  if (axis == 'y') return measure_xy(q, M_PI / 2, mode);
  if (axis != 'z') throw std::invalid_argument("axis must be x, y or z");

  const int idx = index_of(q);
  const std::size_t b = std::size_t{1} << idx;
  const std::size_t half = amps_.size() / 2;
  const std::size_t low = b - 1;

  auto project = [&](int s, std::vector<cd>& out) -> double {
    out.resize(half);
    double p = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t v0 = ((k & ~low) << 1) | (k & low);
      out[k] = amps_[s == 0 ? v0 : (v0 | b)];
      p += std::norm(out[k]);
    }
    return p;
  };

  std::vector<cd> res;
  int s;
  double p;
  if (mode.kind == MeasureMode::Forced) {
    s = mode.forced_outcome ? 1 : 0;
    p = project(s, res);
    if (p < kImpossible)
      throw ImpossibleBranch("forced outcome has zero probability");
  } else {
    if (!mode.rng) throw std::invalid_argument("sampling needs an rng");
    double p0 = project(0, res);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (u01(*mode.rng) < p0) {
      s = 0;
      p = p0;
    } else {
      s = 1;
      p = project(1, res);
    }
  }
  const double inv = 1.0 / std::sqrt(p);
  for (cd& a : res) a *= inv;
  amps_ = std::move(res);
  labels_.erase(labels_.begin() + idx);
  return {s, p};
}

cd Statevector::overlap(const Statevector& other) const {
  if (labels_ != other.labels_)
    throw std::invalid_argument("overlap requires identical registers");
  cd acc(0, 0);
  for (std::size_t v = 0; v < amps_.size(); ++v)
    acc += std::conj(amps_[v]) * other.amps_[v];
  return acc;
}

void Statevector::permute_to(const std::vector<QubitLabel>& new_order) {
  if (new_order.size() != labels_.size())
    throw std::invalid_argument("permutation size mismatch");
  std::vector<int> src(new_order.size());
  for (std::size_t i = 0; i < new_order.size(); ++i)
    src[i] = index_of(new_order[i]);
  std::vector<cd> out(amps_.size());
  for (std::size_t v = 0; v < amps_.size(); ++v) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < src.size(); ++i)
      if (v & (std::size_t{1} << src[i])) w |= std::size_t{1} << i;
    out[w] = amps_[v];
  }
  amps_ = std::move(out);
  labels_ = new_order;
}

std::string Statevector::debug_dump() const {
  std::string out;
  char buf[64];
  for (std::size_t v = 0; v < amps_.size(); ++v) {
    std::string bits(labels_.size(), '0');
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (v & (std::size_t{1} << i)) bits[i] = '1';
    out += bits;
    std::snprintf(buf, sizeof buf, "\t%.17g\t%.17g\n", amps_[v].real(),
                  amps_[v].imag());
    out += buf;
  }
  return out;
}

}  // namespace mbqc
