#pragma once

#include <vector>

#include "core/circuit.hpp"
#include "core/common.hpp"
#include "core/dense.hpp"
#include "core/problem.hpp"
#include "core/twobytwo.hpp"

namespace qkron {

// Interpolation operator and walk Hamiltonian, both as dense oracles and as
// a term decomposition the gate model consumes.
//
// Registers, big-endian: qubit 0 selects the block of the off-diagonal walk
// matrix, qubit 1 is the embedding qubit of A(s), qubits 2..n+1 carry the
// system. A(s) = (1-s) Z x I + s X x A acts on [ext, system]; the walk
// Hamiltonian is [[0, A(s)P],[P A(s), 0]] with P = I - |b~><b~| and
// b~ = (|0>+|1>)/sqrt(2) x b/|b|.

// Full tensor term: coeff * F_0 x ... x F_{n+1}, every factor Hermitian.
struct Type1Term {
  double coeff = 0.0;
  std::vector<TwoByTwo> factors;  // n+2 entries: [block, ext, system...]
};

// Block off-diagonal term: coeff * [[0, M],[M^dagger, 0]] with
// M = corner x d_0 x ... x d_{n-1} over [ext, system].
struct Type2Term {
  double coeff = 0.0;
  TwoByTwo corner;
  std::vector<TwoByTwo> d;
};

struct Decomposition {
  int n = 0;
  double s = 0.0;
  double b_norm2 = 0.0;
  std::vector<Type1Term> type1;  // m + 1 terms
  std::vector<Type2Term> type2;  // 2d^2 + 2md^2 terms
  int total_terms() const { return static_cast<int>(type1.size() + type2.size()); }
};

// Exact tensor split of the walk Hamiltonian at interpolation point s.
// Term order is deterministic: the Z x I piece, the m operator pieces, then
// projector corners Z, iY (d^2 terms each), then X, I (md^2 terms each).
Decomposition decompose(const Instance& inst, double s);

// Dense oracles (dimension 2^{n+1} for A(s), 2^{n+2} for the walk matrix).
Mat a_of_s_dense(const Instance& inst, double s);
Vec b_bar_dense(const Instance& inst);
Mat h_dense(const Instance& inst, double s);
// Normalized solution path: x(s) proportional to A(s)^{-1} b~. The walk
// matrix annihilates |0> x x(s).
Vec x_of_s_dense(const Instance& inst, double s);

Mat term_dense(int n, const Type1Term& t);
Mat term_dense(int n, const Type2Term& t);
Mat decomposition_dense(const Decomposition& dec);

// Gate-model adapters: eigen/singular sandwich plus a DiagSpec whose scale
// absorbs the term coefficient and every major magnitude.
Type1EvoSpec type1_evo(const Type1Term& term, double t, int p);
Type2EvoSpec type2_evo(const Type2Term& term, double t, int p);

}  // namespace qkron
