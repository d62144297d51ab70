#include "core/twobytwo.hpp"

#include <algorithm>

namespace qkron {

namespace {
constexpr double kTiny = 1e-14;
// Resolution floor for singular-value ratios recovered through m.dagger()*m.
constexpr double kGramFloor = 1e-7;

Vec2 normalized(const Vec2& v) {
  double n = norm2(v);
  if (n <= 0.0) return {1.0, 0.0};
  return {v[0] / n, v[1] / n};
}
}  // namespace

TwoByTwo pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::I:
      return TwoByTwo::identity();
    case Pauli::X:
      return TwoByTwo::from_rows(0.0, 1.0, 1.0, 0.0);
    case Pauli::Y:
      return TwoByTwo::from_rows(0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0);
    case Pauli::Z:
      return TwoByTwo::diag(1.0, -1.0);
  }
  fail(Status::InternalError, "unknown pauli");
}

const char* pauli_name(Pauli p) {
  switch (p) {
    case Pauli::I:
      return "I";
    case Pauli::X:
      return "X";
    case Pauli::Y:
      return "Y";
    case Pauli::Z:
      return "Z";
  }
  return "?";
}

EigPair eig_hermitian_2x2(const TwoByTwo& h) {
  const double a = h.at(0, 0).real();
  const double d = h.at(1, 1).real();
  const cplx c = h.at(0, 1);
  const double half_gap = 0.5 * (a - d);
  const double rad = std::sqrt(half_gap * half_gap + std::norm(c));
  const double mean = 0.5 * (a + d);

  EigPair out;
  out.lam0 = mean + rad;
  out.lam1 = mean - rad;

  if (std::abs(c) <= kTiny * (std::abs(a) + std::abs(d) + 1.0)) {
    // Diagonal input: order columns by eigenvalue, identity on ties.
    if (a >= d) {
      out.u = TwoByTwo::identity();
    } else {
      out.u = TwoByTwo::from_rows(0.0, 1.0, 1.0, 0.0);
    }
    return out;
  }

  // (c, lam - a) solves the characteristic system for eigenvalue lam.
  Vec2 v0 = normalized({c, cplx(out.lam0 - a, 0.0)});
  Vec2 v1 = orthogonal_unit(v0);
  out.u = TwoByTwo::from_rows(v0[0], v1[0], v0[1], v1[1]);
  return out;
}

SvdPair svd_2x2(const TwoByTwo& m) {
  SvdPair out;
  const TwoByTwo g = m.dagger() * m;  // Hermitian PSD
  const double ga = g.at(0, 0).real();
  const double gd = g.at(1, 1).real();
  const cplx gc = g.at(0, 1);
  const double mean = 0.5 * (ga + gd);
  const double half_gap = 0.5 * (ga - gd);
  const double rad = std::sqrt(half_gap * half_gap + std::norm(gc));
  const double l0 = std::max(mean + rad, 0.0);
  const double l1 = std::max(mean - rad, 0.0);
  const double s0 = std::sqrt(l0);
  const double s1 = std::sqrt(std::min(l1, l0));

  out.sigma_major = s0;
  out.sigma_ratio = s0 > 0.0 ? std::clamp(s1 / s0, 0.0, 1.0) : 0.0;
  // The Gram matrix squares the condition: ratios below ~sqrt(machine eps)
  // are indistinguishable from exact rank one, and for a rank-one input the
  // direction of m*v1 is rounding noise INSIDE range(m), i.e. parallel to u0.
  // Snap to the exact rank-one factorization instead.
  if (out.sigma_ratio < kGramFloor) out.sigma_ratio = 0.0;

  if (s0 <= kTiny) {  // zero matrix
    out.u = TwoByTwo::identity();
    out.v = TwoByTwo::identity();
    out.sigma_major = 0.0;
    out.sigma_ratio = 0.0;
    return out;
  }

  const double scale = ga + gd;
  if (rad <= kTiny * (scale + 1.0)) {
    // Degenerate singular values: M = s0 * W with W unitary. v = I is the
    // admissible right factor closest to the identity.
    out.v = TwoByTwo::identity();
    out.u = m * cplx(1.0 / s0, 0.0);
    out.sigma_ratio = 1.0;
    return out;
  }

  Vec2 v0;
  if (std::abs(gc) <= kTiny * (scale + 1.0)) {
    v0 = (ga >= gd) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  } else {
    v0 = normalized({gc, cplx(l0 - ga, 0.0)});
  }
  Vec2 v1 = orthogonal_unit(v0);

  Vec2 u0 = qkron::apply(m, v0);
  double n0 = norm2(u0);
  u0 = (n0 > kTiny) ? Vec2{u0[0] / n0, u0[1] / n0} : Vec2{1.0, 0.0};

  Vec2 u1;
  if (out.sigma_ratio > 0.0) {
    u1 = qkron::apply(m, v1);
    double n1 = norm2(u1);
    u1 = {u1[0] / n1, u1[1] / n1};
  } else {
    u1 = orthogonal_unit(u0);
  }

  out.u = TwoByTwo::from_rows(u0[0], u1[0], u0[1], u1[1]);
  out.v = TwoByTwo::from_rows(v0[0], v1[0], v0[1], v1[1]);
  return out;
}

FactorEig factor_eig(const TwoByTwo& hermitian) {
  EigPair e = eig_hermitian_2x2(hermitian);
  double m0 = std::abs(e.lam0);
  double m1 = std::abs(e.lam1);
  int s0 = e.lam0 < 0.0 ? -1 : +1;
  int s1 = e.lam1 < 0.0 ? -1 : +1;
  TwoByTwo u = e.u;
  if (m1 > m0) {
    std::swap(m0, m1);
    std::swap(s0, s1);
    u = TwoByTwo::from_rows(e.u.at(0, 1), e.u.at(0, 0), e.u.at(1, 1),
                            e.u.at(1, 0));
  }
  FactorEig out;
  out.u = u;
  out.mag_major = m0;
  out.ratio = m0 > 0.0 ? std::clamp(m1 / m0, 0.0, 1.0) : 0.0;
  out.sign0 = m0 > 0.0 ? s0 : +1;
  out.sign1 = m1 > 0.0 ? s1 : +1;
  return out;
}

FactorEig pauli_eig(Pauli p) {
  FactorEig out;
  out.mag_major = 1.0;
  out.ratio = 1.0;
  switch (p) {
    case Pauli::I:
      out.u = TwoByTwo::identity();
      out.sign0 = +1;
      out.sign1 = +1;
      break;
    case Pauli::Z:
      out.u = TwoByTwo::identity();
      out.sign0 = +1;
      out.sign1 = -1;
      break;
    case Pauli::X: {
      const double h = std::sqrt(0.5);
      out.u = TwoByTwo::from_rows(h, h, h, -h);
      out.sign0 = +1;
      out.sign1 = -1;
      break;
    }
    case Pauli::Y: {
      const double h = std::sqrt(0.5);
      out.u = TwoByTwo::from_rows(h, h, cplx(0.0, h), cplx(0.0, -h));
      out.sign0 = +1;
      out.sign1 = -1;
      break;
    }
  }
  return out;
}

}  // namespace qkron
