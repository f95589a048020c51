// Symbolic single-qubit unitary words over a fixed ten-generator alphabet:
// the Paulis and the square roots sqrt(+-i sigma_a) = exp(+-i pi/4 sigma_a).
// Kept symbolic so projector propagation can distinguish Clifford and
// non-Clifford parts; materialized to 2x2 matrices only when applied.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mbqc/statevec.hpp"

namespace mbqc {

enum class Gen {
  I, X, Y, Z,
  SqrtXp, SqrtXm,  // exp(+i pi/4 X), exp(-i pi/4 X)
  SqrtYp, SqrtYm,
  SqrtZp, SqrtZm,
};

const char* gen_name(Gen g);
Gen gen_inverse(Gen g);

using Mat2 = std::array<cd, 4>;  // row-major 2x2

Mat2 gen_matrix(Gen g);
Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_dagger(const Mat2& m);
Mat2 pauli_matrix(char axis);

struct LocalUnitaryWord {
  // seq[q] lists generators in application order: seq[q][0] acts first.
  std::map<QubitLabel, std::vector<Gen>> seq;

  bool empty() const;
  void push_first(QubitLabel q, Gen g);  // acts before everything recorded
  void push_last(QubitLabel q, Gen g);   // acts after everything recorded
  void erase(QubitLabel q) { seq.erase(q); }
  // Compose: first `earlier`, then this word.  Returns the combined word.
  LocalUnitaryWord after(const LocalUnitaryWord& earlier) const;
  Mat2 matrix(QubitLabel q) const;  // identity if q absent
  void apply_to(Statevector& s) const;
  std::string str() const;
};

}  // namespace mbqc
