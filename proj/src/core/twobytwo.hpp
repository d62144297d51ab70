#pragma once

#include <array>
#include <cmath>

#include "core/common.hpp"

namespace qkron {

// Dense 2x2 complex matrix with closed-form spectral routines. Everything in
// this header is self-contained (no Eigen) so the dense-oracle path stays an
// independent cross-check.
struct TwoByTwo {
  // Row-major entries.
  std::array<cplx, 4> m{};

  cplx& at(int r, int c) { return m[2 * r + c]; }
  const cplx& at(int r, int c) const { return m[2 * r + c]; }

  static TwoByTwo zero() { return TwoByTwo{}; }
  static TwoByTwo identity() {
    TwoByTwo t;
    t.at(0, 0) = 1.0;
    t.at(1, 1) = 1.0;
    return t;
  }
  static TwoByTwo from_rows(cplx a, cplx b, cplx c, cplx d) {
    TwoByTwo t;
    t.m = {a, b, c, d};
    return t;
  }
  static TwoByTwo diag(cplx a, cplx d) { return from_rows(a, 0.0, 0.0, d); }

  TwoByTwo dagger() const {
    return from_rows(std::conj(at(0, 0)), std::conj(at(1, 0)),
                     std::conj(at(0, 1)), std::conj(at(1, 1)));
  }

  TwoByTwo operator*(const TwoByTwo& o) const {
    TwoByTwo r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.at(i, j) = at(i, 0) * o.at(0, j) + at(i, 1) * o.at(1, j);
    return r;
  }
  TwoByTwo operator+(const TwoByTwo& o) const {
    TwoByTwo r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }
  TwoByTwo operator-(const TwoByTwo& o) const {
    TwoByTwo r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] - o.m[i];
    return r;
  }
  TwoByTwo operator*(cplx s) const {
    TwoByTwo r;
    for (int i = 0; i < 4; ++i) r.m[i] = m[i] * s;
    return r;
  }

  double frobenius() const {
    double s = 0.0;
    for (const cplx& z : m) s += std::norm(z);
    return std::sqrt(s);
  }

  double hermiticity_defect() const {
    return ((*this) - dagger()).frobenius();
  }

  bool near(const TwoByTwo& o, double tol) const {
    return ((*this) - o).frobenius() <= tol;
  }
};

inline TwoByTwo operator*(cplx s, const TwoByTwo& t) { return t * s; }

using Vec2 = std::array<cplx, 2>;

inline double norm2(const Vec2& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]));
}
inline cplx dot(const Vec2& a, const Vec2& b) {  // <a|b>
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}
inline Vec2 apply(const TwoByTwo& t, const Vec2& v) {
  return {t.at(0, 0) * v[0] + t.at(0, 1) * v[1],
          t.at(1, 0) * v[0] + t.at(1, 1) * v[1]};
}
// |a><b|
inline TwoByTwo outer(const Vec2& a, const Vec2& b) {
  return TwoByTwo::from_rows(a[0] * std::conj(b[0]), a[0] * std::conj(b[1]),
                             a[1] * std::conj(b[0]), a[1] * std::conj(b[1]));
}
// Unit vector orthogonal to a unit vector: (a1, a2) -> (-conj(a2), conj(a1)).
inline Vec2 orthogonal_unit(const Vec2& a) {
  return {-std::conj(a[1]), std::conj(a[0])};
}

enum class Pauli { I, X, Y, Z };

TwoByTwo pauli_matrix(Pauli p);
const char* pauli_name(Pauli p);

// Hermitian eigendecomposition: M = u * diag(lam0, lam1) * u^dagger with
// real eigenvalues in descending order. Ties and diagonal inputs pick the
// unitary closest to the identity.
struct EigPair {
  TwoByTwo u;
  double lam0 = 0.0;
  double lam1 = 0.0;
};
EigPair eig_hermitian_2x2(const TwoByTwo& h);

// Singular value decomposition M = u * diag(sigma_major, sigma_major *
// sigma_ratio) * v^dagger with sigma_major >= 0 and sigma_ratio in [0, 1].
// Zero input yields u = v = I; degenerate singular values pick v = I.
// For Hermitian input, v^dagger * u is exactly a +-1 diagonal (the
// eigenvalue signs), which the evolution circuits rely on.
struct SvdPair {
  TwoByTwo u;
  TwoByTwo v;
  double sigma_major = 0.0;
  double sigma_ratio = 0.0;
};
SvdPair svd_2x2(const TwoByTwo& m);

inline double spectral_norm_2x2(const TwoByTwo& m) {
  return svd_2x2(m).sigma_major;
}

// Eigen-basis data for a Hermitian factor as the diagonal circuits consume
// it: magnitudes ordered descending and folded to (1, ratio), signs kept
// separately. sign0/sign1 are +-1 (zero eigenvalues get +1).
struct FactorEig {
  TwoByTwo u;
  double mag_major = 0.0;
  double ratio = 0.0;
  int sign0 = +1;
  int sign1 = +1;
};
FactorEig factor_eig(const TwoByTwo& hermitian);
FactorEig pauli_eig(Pauli p);

}  // namespace qkron
