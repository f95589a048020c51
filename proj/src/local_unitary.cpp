#include "mbqc/local_unitary.hpp"

#include <cmath>

namespace mbqc {

namespace {
const cd kI(0.0, 1.0);
}

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::I: return "I";
    case Gen::X: return "X";
    case Gen::Y: return "Y";
    case Gen::Z: return "Z";
    case Gen::SqrtXp: return "sqrt(+iX)";
    case Gen::SqrtXm: return "sqrt(-iX)";
    case Gen::SqrtYp: return "sqrt(+iY)";
    case Gen::SqrtYm: return "sqrt(-iY)";
    case Gen::SqrtZp: return "sqrt(+iZ)";
    case Gen::SqrtZm: return "sqrt(-iZ)";
  }
  return "?";
}

Gen gen_inverse(Gen g) {
  switch (g) {
    case Gen::SqrtXp: return Gen::SqrtXm;
    case Gen::SqrtXm: return Gen::SqrtXp;
    case Gen::SqrtYp: return Gen::SqrtYm;
    case Gen::SqrtYm: return Gen::SqrtYp;
    case Gen::SqrtZp: return Gen::SqrtZm;
    case Gen::SqrtZm: return Gen::SqrtZp;
    default: return g;  // Paulis and I are involutions
  }
}

Mat2 pauli_matrix(char axis) {
  switch (axis) {
    case 'x': return {cd(0), cd(1), cd(1), cd(0)};
    case 'y': return {cd(0), -kI, kI, cd(0)};
    case 'z': return {cd(1), cd(0), cd(0), cd(-1)};
    default: throw std::invalid_argument("bad pauli axis");
  }
}

Mat2 gen_matrix(Gen g) {
  const double r = 1.0 / std::sqrt(2.0);
  auto rot = [&](char axis, double sign) {
    // exp(sign * i pi/4 sigma) = (I + sign*i*sigma)/sqrt(2)
    Mat2 p = pauli_matrix(axis);
    Mat2 m;
    const Mat2 id{cd(1), cd(0), cd(0), cd(1)};
    for (int k = 0; k < 4; ++k) m[k] = r * (id[k] + sign * kI * p[k]);
    return m;
  };
  switch (g) {
    case Gen::I: return {cd(1), cd(0), cd(0), cd(1)};
    case Gen::X: return pauli_matrix('x');
    case Gen::Y: return pauli_matrix('y');
    case Gen::Z: return pauli_matrix('z');
    case Gen::SqrtXp: return rot('x', +1);
    case Gen::SqrtXm: return rot('x', -1);
    case Gen::SqrtYp: return rot('y', +1);
    case Gen::SqrtYm: return rot('y', -1);
    case Gen::SqrtZp: return rot('z', +1);
    case Gen::SqrtZm: return rot('z', -1);
  }
  throw std::logic_error("unreachable");
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat_dagger(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

bool LocalUnitaryWord::empty() const {
  for (const auto& [q, v] : seq)
    if (!v.empty()) return false;
  return true;
}

void LocalUnitaryWord::push_first(QubitLabel q, Gen g) {
  if (g == Gen::I) return;
  auto& v = seq[q];
  v.insert(v.begin(), g);
}

void LocalUnitaryWord::push_last(QubitLabel q, Gen g) {
  if (g == Gen::I) return;
  seq[q].push_back(g);
}

LocalUnitaryWord LocalUnitaryWord::after(const LocalUnitaryWord& earlier) const {
  LocalUnitaryWord out = earlier;
  for (const auto& [q, v] : seq)
    for (Gen g : v) out.push_last(q, g);
  return out;
}

Mat2 LocalUnitaryWord::matrix(QubitLabel q) const {
  Mat2 m{cd(1), cd(0), cd(0), cd(1)};
  auto it = seq.find(q);
  if (it == seq.end()) return m;
  for (Gen g : it->second) m = mat_mul(gen_matrix(g), m);  // later acts left
  return m;
}

void LocalUnitaryWord::apply_to(Statevector& s) const {
  for (const auto& [q, v] : seq) {
    if (v.empty()) continue;
    Mat2 m = matrix(q);
    s.apply_single(q, m.data());
  }
}

std::string LocalUnitaryWord::str() const {
  std::string out;
  for (const auto& [q, v] : seq) {
    if (v.empty()) continue;
    out += "q" + std::to_string(q) + ":";
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
      out += " ";
      out += gen_name(*it);
    }
    out += "\n";
  }
  return out;
}

}  // namespace mbqc
