#include "core/hamiltonian.hpp"

#include <cmath>

namespace qkron {
namespace {

TwoByTwo pauli_x() { return TwoByTwo::from_rows(0, 1, 1, 0); }
TwoByTwo pauli_z() { return TwoByTwo::from_rows(1, 0, 0, -1); }
// i*Y is the antisymmetric half of |-><+| alongside Z: |-><+| = (Z + iY)/2.
TwoByTwo i_pauli_y() { return TwoByTwo::from_rows(0, 1, -1, 0); }

Mat block_off_diagonal(const Mat& m, double coeff) {
  const auto half = m.rows();
  Mat h = Mat::Zero(2 * half, 2 * half);
  h.block(0, half, half, half) = coeff * m;
  h.block(half, 0, half, half) = coeff * m.adjoint();
  return h;
}

}  // namespace

Decomposition decompose(const Instance& inst, double s) {
  if (!(s >= 0.0 && s <= 1.0)) fail(Status::BadArgument, "interpolation point outside [0,1]");
  const int n = inst.n;
  const int m = inst.m();
  const int d = inst.d();

  Decomposition dec;
  dec.n = n;
  dec.s = s;
  dec.b_norm2 = assembled_b_norm2(inst);
  if (dec.b_norm2 <= 1e-24) fail(Status::InvalidInstance, "b terms cancel to zero");

  // X x A(s) expanded: the dressing piece and one piece per operator term.
  Type1Term dress;
  dress.coeff = 1.0 - s;
  dress.factors = {pauli_x(), pauli_z()};
  for (int k = 0; k < n; ++k) dress.factors.push_back(TwoByTwo::identity());
  dec.type1.push_back(std::move(dress));
  for (int i = 0; i < m; ++i) {
    Type1Term t;
    t.coeff = s;
    t.factors = {pauli_x(), pauli_x()};
    for (int k = 0; k < n; ++k) t.factors.push_back(inst.a_terms[i][k]);
    dec.type1.push_back(std::move(t));
  }

  // Projector pieces, subtracted: A(s)|b~><b~| splits over the embedding
  // qubit as (Z + iY)/2 against b b^dagger and (X + I)/2 against A b b^dagger.
  const double ca = -(1.0 - s) / (2.0 * dec.b_norm2);
  const double cb = -s / (2.0 * dec.b_norm2);

  for (const TwoByTwo& corner : {pauli_z(), i_pauli_y()}) {
    for (int j1 = 0; j1 < d; ++j1) {
      for (int j2 = 0; j2 < d; ++j2) {
        Type2Term t;
        t.coeff = ca;
        t.corner = corner;
        for (int k = 0; k < n; ++k)
          t.d.push_back(outer(inst.b_terms[j1][k], inst.b_terms[j2][k]));
        dec.type2.push_back(std::move(t));
      }
    }
  }
  for (const TwoByTwo& corner : {pauli_x(), TwoByTwo::identity()}) {
    for (int i = 0; i < m; ++i) {
      for (int j1 = 0; j1 < d; ++j1) {
        for (int j2 = 0; j2 < d; ++j2) {
          Type2Term t;
          t.coeff = cb;
          t.corner = corner;
          for (int k = 0; k < n; ++k)
            t.d.push_back(inst.a_terms[i][k] * outer(inst.b_terms[j1][k], inst.b_terms[j2][k]));
          dec.type2.push_back(std::move(t));
        }
      }
    }
  }
  return dec;
}

Mat a_of_s_dense(const Instance& inst, double s) {
  const DenseSystem sys = expand_dense(inst);
  const auto dim = sys.a.rows();
  Mat out = Mat::Zero(2 * dim, 2 * dim);
  out.block(0, 0, dim, dim) = (1.0 - s) * Mat::Identity(dim, dim);
  out.block(dim, dim, dim, dim) = -(1.0 - s) * Mat::Identity(dim, dim);
  out.block(0, dim, dim, dim) = s * sys.a;
  out.block(dim, 0, dim, dim) = s * sys.a;
  return out;
}

Vec b_bar_dense(const Instance& inst) {
  const DenseSystem sys = expand_dense(inst);
  const double nb = sys.b.norm();
  if (nb <= 1e-12) fail(Status::InvalidInstance, "b terms cancel to zero");
  const auto dim = sys.b.size();
  Vec out(2 * dim);
  const double s = std::sqrt(0.5) / nb;
  out.head(dim) = s * sys.b;
  out.tail(dim) = s * sys.b;
  return out;
}

Mat h_dense(const Instance& inst, double s) {
  const Mat as = a_of_s_dense(inst, s);
  const Vec bb = b_bar_dense(inst);
  const Mat p = Mat::Identity(bb.size(), bb.size()) - bb * bb.adjoint();
  return block_off_diagonal(as * p, 1.0);
}

Vec x_of_s_dense(const Instance& inst, double s) {
  const Vec y = dense_solve(a_of_s_dense(inst, s), b_bar_dense(inst));
  return y / y.norm();
}

Mat term_dense(int n, const Type1Term& t) {
  if (static_cast<int>(t.factors.size()) != n + 2)
    fail(Status::BadArgument, "term factor list width mismatch");
  return t.coeff * kron_chain(t.factors);
}

Mat term_dense(int n, const Type2Term& t) {
  if (static_cast<int>(t.d.size()) != n)
    fail(Status::BadArgument, "term factor list width mismatch");
  std::vector<TwoByTwo> fac;
  fac.push_back(t.corner);
  fac.insert(fac.end(), t.d.begin(), t.d.end());
  return block_off_diagonal(kron_chain(fac), t.coeff);
}

Mat decomposition_dense(const Decomposition& dec) {
  const auto dim = Eigen::Index{1} << (dec.n + 2);
  Mat out = Mat::Zero(dim, dim);
  for (const Type1Term& t : dec.type1) out += term_dense(dec.n, t);
  for (const Type2Term& t : dec.type2) out += term_dense(dec.n, t);
  return out;
}

Type1EvoSpec type1_evo(const Type1Term& term, double t, int p) {
  Type1EvoSpec spec;
  const int nd = static_cast<int>(term.factors.size());
  spec.diag.n_data = nd;
  spec.diag.p = p;
  spec.diag.t = t;
  double scale = term.coeff;
  for (const TwoByTwo& f : term.factors) {
    const FactorEig e = factor_eig(f);
    spec.basis.push_back(e.u);
    spec.diag.sigma.push_back(e.ratio);
    spec.diag.signs.push_back({e.sign0, e.sign1});
    scale *= e.mag_major;
  }
  spec.diag.scale = scale;
  return spec;
}

Type2EvoSpec type2_evo(const Type2Term& term, double t, int p) {
  Type2EvoSpec spec;
  const int nd = static_cast<int>(term.d.size()) + 2;
  spec.diag.n_data = nd;
  spec.diag.p = p;
  spec.diag.t = t;
  spec.diag.sigma.push_back(1.0);  // block wire: H X H = Z
  spec.diag.signs.push_back({+1, -1});
  double scale = term.coeff;

  const SvdPair cs = svd_2x2(term.corner);
  spec.u.push_back(cs.u);
  spec.v.push_back(cs.v);
  spec.diag.sigma.push_back(cs.sigma_ratio);
  spec.diag.signs.push_back({+1, +1});
  scale *= cs.sigma_major;

  for (const TwoByTwo& f : term.d) {
    const SvdPair e = svd_2x2(f);
    spec.u.push_back(e.u);
    spec.v.push_back(e.v);
    spec.diag.sigma.push_back(e.sigma_ratio);
    spec.diag.signs.push_back({+1, +1});
    scale *= e.sigma_major;
  }
  spec.diag.scale = scale;
  return spec;
}

}  // namespace qkron
