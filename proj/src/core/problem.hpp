#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/dense.hpp"
#include "core/twobytwo.hpp"

namespace qkron {

// A linear system in tensor form:
//   A = sum_i kron(A[i][0], ..., A[i][n-1])   (each factor Hermitian 2x2)
//   b = sum_j kron(b[j][0], ..., b[j][n-1])   (each factor a 2-vector)
// The solve target is the direction of A^-1 b on n qubits.
struct Instance {
  int n = 0;
  std::vector<std::vector<TwoByTwo>> a_terms;  // m x n
  std::vector<std::vector<Vec2>> b_terms;      // d x n
  std::optional<double> kappa_file;
  std::vector<std::string> warnings;

  int m() const { return static_cast<int>(a_terms.size()); }
  int d() const { return static_cast<int>(b_terms.size()); }
};

// Strict JSON reader. Unknown keys, shape mismatches ("inconsistent tensor
// length"), non-Hermitian factors beyond 1e-8 and all-zero b terms are
// errors; Hermitian defects in (1e-12, 1e-8] are symmetrized with a warning.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

// Direction-preserving rescale: within each term every non-first factor is
// brought to unit spectral norm (scalar folded into the first factor), then
// one common scalar (min(1, ...)) brings ||A||_2 and every per-term norm to
// <= 1, likewise for b. Idempotent; never scales up.
Instance normalize(const Instance& inst);

struct DenseSystem {
  Mat a;
  Vec b;
};
// Dense assembly by iterative Kronecker products; refuses n > cap.
DenseSystem expand_dense(const Instance& inst, int cap = kDenseCap);

// sigma_max / sigma_min of the assembled A (dense path, n <= cap); falls
// back to the file-provided kappa above the cap.
double condition_number(const Instance& inst, int cap = kDenseCap);

// ||b||_2^2 of the assembled right-hand side, computed in tensor form from
// the Gram matrix of the b terms (no dense expansion).
double assembled_b_norm2(const Instance& inst);

// Per-term tensor norms: prod_k ||A[i][k]||_2 and prod_k ||b[j][k]||_2.
std::vector<double> a_term_norms(const Instance& inst);
std::vector<double> b_term_norms(const Instance& inst);

}  // namespace qkron
