#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "core/hamiltonian.hpp"
#include "core/rng.hpp"
#include "core/simulator.hpp"
#include "doctest.h"
#include "oracles/dense_ref.hpp"
#include "oracles/gen.hpp"
#include "support.hpp"

using namespace qkron;

namespace {

Mat block_off(const Mat& m) {
  const int dim = static_cast<int>(m.rows());
  Mat h = Mat::Zero(2 * dim, 2 * dim);
  h.topRightCorner(dim, dim) = m;
  h.bottomLeftCorner(dim, dim) = m.adjoint();
  return h;
}

// b = |00> + 0.5 |11>, A = 0.8 I x Z + 0.6 X x X (already normalized).
Instance fixture() {
  Instance inst;
  inst.n = 2;
  inst.a_terms = {
      {TwoByTwo::diag(0.8, 0.8), TwoByTwo::diag(1.0, -1.0)},
      {0.6 * pauli_matrix(Pauli::X), pauli_matrix(Pauli::X)},
  };
  inst.b_terms = {
      {Vec2{1.0, 0.0}, Vec2{1.0, 0.0}},
      {Vec2{0.0, 1.0}, Vec2{0.0, 0.5}},
  };
  return inst;
}

}  // namespace

TEST_CASE("decomposition counts, order and coefficients") {
  const Instance inst = fixture();
  const int m = inst.m(), d = inst.d();
  const Decomposition dec = decompose(inst, 0.37);
  CHECK(dec.s == 0.37);
  CHECK(dec.b_norm2 == doctest::Approx(1.25));
  REQUIRE(static_cast<int>(dec.type1.size()) == m + 1);
  REQUIRE(static_cast<int>(dec.type2.size()) == 2 * d * d + 2 * m * d * d);

  SUBCASE("dress term") {
    const Type1Term& t = dec.type1[0];
    CHECK(t.coeff == doctest::Approx(1.0 - 0.37));
    REQUIRE(static_cast<int>(t.factors.size()) == inst.n + 2);
    CHECK(t.factors[0].near(pauli_matrix(Pauli::X), 0.0));
    CHECK(t.factors[1].near(pauli_matrix(Pauli::Z), 0.0));
    CHECK(t.factors[2].near(TwoByTwo::identity(), 0.0));
    CHECK(t.factors[3].near(TwoByTwo::identity(), 0.0));
  }

  SUBCASE("operator terms") {
    for (int i = 0; i < m; ++i) {
      const Type1Term& t = dec.type1[1 + i];
      CHECK(t.coeff == doctest::Approx(0.37));
      CHECK(t.factors[0].near(pauli_matrix(Pauli::X), 0.0));
      CHECK(t.factors[1].near(pauli_matrix(Pauli::X), 0.0));
      for (int k = 0; k < inst.n; ++k) CHECK(t.factors[2 + k].near(inst.a_terms[i][k], 0.0));
    }
  }

  SUBCASE("projector corners come as Z, iY, X, I blocks") {
    const double ca = -(1.0 - 0.37) / (2.0 * 1.25);
    const double cb = -0.37 / (2.0 * 1.25);
    const TwoByTwo iy = TwoByTwo::from_rows(0.0, 1.0, -1.0, 0.0);
    const int dd = d * d;
    for (int i = 0; i < dd; ++i) {
      CHECK(dec.type2[i].corner.near(pauli_matrix(Pauli::Z), 0.0));
      CHECK(dec.type2[i].coeff == doctest::Approx(ca));
      CHECK(dec.type2[dd + i].corner.near(iy, 0.0));
      CHECK(dec.type2[dd + i].coeff == doctest::Approx(ca));
    }
    for (int i = 0; i < m * dd; ++i) {
      CHECK(dec.type2[2 * dd + i].corner.near(pauli_matrix(Pauli::X), 0.0));
      CHECK(dec.type2[2 * dd + i].coeff == doctest::Approx(cb));
      CHECK(dec.type2[2 * dd + m * dd + i].corner.near(TwoByTwo::identity(), 0.0));
      CHECK(dec.type2[2 * dd + m * dd + i].coeff == doctest::Approx(cb));
    }
    // First Z-term factors are |b_00><b_00| style outers.
    const Type2Term& z0 = dec.type2[0];
    CHECK(z0.d[0].near(outer(inst.b_terms[0][0], inst.b_terms[0][0]), 1e-15));
    // X-block factors carry the operator factor on the left.
    const Type2Term& x0 = dec.type2[2 * dd];
    CHECK(x0.d[0].near(inst.a_terms[0][0] * outer(inst.b_terms[0][0], inst.b_terms[0][0]),
                       1e-15));
  }

  SUBCASE("validation") {
    CHECK(testq::thrown_status([&] { decompose(inst, -0.01); }) == Status::BadArgument);
    CHECK(testq::thrown_status([&] { decompose(inst, 1.01); }) == Status::BadArgument);

    Instance cancel;
    cancel.n = 1;
    cancel.a_terms = {{TwoByTwo::identity()}};
    cancel.b_terms = {{Vec2{0.5, 0.0}}, {Vec2{-0.5, 0.0}}};
    CHECK(testq::thrown_status([&] { decompose(cancel, 0.5); }) == Status::InvalidInstance);
    CHECK(testq::thrown_status([&] { b_bar_dense(cancel); }) == Status::InvalidInstance);
  }
}

TEST_CASE("decomposition assembles back to the walk matrix") {
  Rng rng(131);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const Instance inst =
        genq::random_instance(rng, n, 1 + static_cast<int>(rng.below(2)),
                              1 + static_cast<int>(rng.below(2)));
    for (const double s : {0.0, 0.37, 0.5, 1.0}) {
      const Decomposition dec = decompose(inst, s);
      const Mat err = decomposition_dense(dec) - h_dense(inst, s);
      CHECK(err.cwiseAbs().maxCoeff() <= 1e-11);
    }
  }
}

TEST_CASE("dense oracles") {
  const Instance inst = fixture();
  const DenseSystem sys = expand_dense(inst);
  const int dim = 4;

  SUBCASE("interpolation endpoints") {
    const Mat a0 = a_of_s_dense(inst, 0.0);
    const Mat want0 = refq::ref_kron({pauli_matrix(Pauli::Z), TwoByTwo::identity(),
                                      TwoByTwo::identity()});
    CHECK(refq::max_abs_diff(a0, want0) <= 1e-14);

    const Mat a1 = a_of_s_dense(inst, 1.0);
    Mat want1 = Mat::Zero(2 * dim, 2 * dim);
    want1.topRightCorner(dim, dim) = sys.a;
    want1.bottomLeftCorner(dim, dim) = sys.a;
    CHECK(refq::max_abs_diff(a1, want1) <= 1e-13);

    const Mat mid = a_of_s_dense(inst, 0.3);
    CHECK(refq::max_abs_diff(mid, 0.7 * a0 + 0.3 * a1) <= 1e-13);
  }

  SUBCASE("embedded right-hand side") {
    const Vec bb = b_bar_dense(inst);
    REQUIRE(bb.size() == 2 * dim);
    const Vec bh = sys.b / sys.b.norm();
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((bb.head(dim) - r * bh).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((bb.tail(dim) - r * bh).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(bb.norm() == doctest::Approx(1.0));
  }

  SUBCASE("walk matrix blocks") {
    const Mat h = h_dense(inst, 0.42);
    REQUIRE(h.rows() == 4 * dim);
    CHECK(refq::max_abs_diff(h, h.adjoint().eval()) <= 1e-14);
    CHECK(h.topLeftCorner(2 * dim, 2 * dim).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.bottomRightCorner(2 * dim, 2 * dim).cwiseAbs().maxCoeff() == 0.0);
    // Top-right block is A(s) P with P = I - |b~><b~|.
    const Vec bb = b_bar_dense(inst);
    const Mat p = Mat::Identity(2 * dim, 2 * dim) - bb * bb.adjoint();
    CHECK(refq::max_abs_diff(h.topRightCorner(2 * dim, 2 * dim),
                             a_of_s_dense(inst, 0.42) * p) <= 1e-13);
  }
}

TEST_CASE("solution path") {
  const Instance inst = fixture();
  const DenseSystem sys = expand_dense(inst);
  const int dim = 4;
  const Vec bh = sys.b / sys.b.norm();
  const double r = 1.0 / std::sqrt(2.0);

  SUBCASE("x(0) = |-> x b^") {
    const Vec x0 = x_of_s_dense(inst, 0.0);
    CHECK((x0.head(dim) - r * bh).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((x0.tail(dim) + r * bh).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SUBCASE("x(1) = |+> x A^-1 b direction") {
    const Vec x1 = x_of_s_dense(inst, 1.0);
    Vec xh = refq::ref_solve(sys.a, bh);
    xh /= xh.norm();
    CHECK((x1.head(dim) - r * xh).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((x1.tail(dim) - r * xh).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(x1.norm() == doctest::Approx(1.0));
  }

  SUBCASE("the walk matrix annihilates |0> x x(s) along the sweep") {
    const double kappa = condition_number(inst);
    const double s_star = kappa * kappa / (1.0 + kappa * kappa);
    for (const double s : {0.0, 0.2, 0.5, s_star, 0.9, 1.0}) {
      const Vec xs = x_of_s_dense(inst, s);
      Vec emb = Vec::Zero(4 * dim);
      emb.head(2 * dim) = xs;
      CHECK((h_dense(inst, s) * emb).norm() <= 1e-9);
    }
  }
}

TEST_CASE("term dense forms") {
  Rng rng(141);
  SUBCASE("type 1") {
    Type1Term t;
    t.coeff = 0.7;
    for (int k = 0; k < 4; ++k) t.factors.push_back(genq::random_hermitian(rng));
    const Mat want = 0.7 * refq::ref_kron(t.factors);
    CHECK(refq::max_abs_diff(term_dense(2, t), want) <= 1e-13);
    CHECK(testq::thrown_status([&] { term_dense(3, t); }) == Status::BadArgument);
  }
  SUBCASE("type 2") {
    Type2Term t;
    t.coeff = -0.4;
    for (auto& z : t.corner.m) z = genq::rnd_cplx(rng);
    t.d.push_back(genq::random_hermitian(rng));
    t.d.push_back(genq::general_with(rng, 0.8, 0.3));
    std::vector<TwoByTwo> mf{t.corner, t.d[0], t.d[1]};
    const Mat want = -0.4 * block_off(refq::ref_kron(mf));
    CHECK(refq::max_abs_diff(term_dense(2, t), want) <= 1e-13);
    CHECK(testq::thrown_status([&] { term_dense(1, t); }) == Status::BadArgument);
  }
}

TEST_CASE("evolution adapters") {
  Rng rng(151);
  const Instance inst = genq::random_instance(rng, 2, 2, 2);
  const Decomposition dec = decompose(inst, 0.6);

  SUBCASE("type-1 spec fields") {
    const Type1Term& term = dec.type1[1];
    const Type1EvoSpec spec = type1_evo(term, 0.9, 8);
    const int nd = static_cast<int>(term.factors.size());
    REQUIRE(spec.diag.n_data == nd);
    CHECK(spec.diag.t == 0.9);
    CHECK(spec.diag.p == 8);
    double scale = term.coeff;
    for (int k = 0; k < nd; ++k) {
      const FactorEig e = factor_eig(term.factors[k]);
      CHECK(spec.basis[k].near(e.u, 1e-14));
      CHECK(spec.diag.sigma[k] == e.ratio);
      CHECK(spec.diag.signs[k][0] == e.sign0);
      CHECK(spec.diag.signs[k][1] == e.sign1);
      scale *= e.mag_major;
    }
    CHECK(spec.diag.scale == doctest::Approx(scale));
  }

  SUBCASE("type-2 spec fields") {
    const Type2Term& term = dec.type2[dec.type2.size() - 1];
    const Type2EvoSpec spec = type2_evo(term, 1.1, 7);
    const int nd = static_cast<int>(term.d.size()) + 2;
    REQUIRE(spec.diag.n_data == nd);
    CHECK(spec.diag.sigma[0] == 1.0);
    CHECK(spec.diag.signs[0][0] == +1);
    CHECK(spec.diag.signs[0][1] == -1);
    const SvdPair cs = svd_2x2(term.corner);
    CHECK(spec.u[0].near(cs.u, 1e-14));
    CHECK(spec.v[0].near(cs.v, 1e-14));
    CHECK(spec.diag.sigma[1] == cs.sigma_ratio);
    double scale = term.coeff * cs.sigma_major;
    for (std::size_t k = 0; k < term.d.size(); ++k) {
      const SvdPair e = svd_2x2(term.d[k]);
      CHECK(spec.u[k + 1].near(e.u, 1e-14));
      CHECK(spec.v[k + 1].near(e.v, 1e-14));
      CHECK(spec.diag.sigma[k + 2] == e.sigma_ratio);
      scale *= e.sigma_major;
    }
    CHECK(spec.diag.scale == doctest::Approx(scale));
  }

  SUBCASE("adapter circuits track the term exponentials") {
    const double t = 0.4;
    const int p = 16;
    for (const Type1Term& term : dec.type1) {
      const Mat got =
          dense_unitary(build_type1_evolution(type1_evo(term, t, p)), SimMode::Emulation);
      const Mat want = refq::ref_expm_i(term_dense(dec.n, term), t);
      const double bound = 2.0 * t * std::abs(term.coeff) * 3.0 *
                               (dec.n + 2) * std::ldexp(1.0, -p) +
                           1e-11;
      CHECK(refq::max_abs_diff(got, want) <= bound);
    }
    for (const Type2Term& term : {dec.type2.front(), dec.type2.back()}) {
      const Mat got =
          dense_unitary(build_type2_evolution(type2_evo(term, t, p)), SimMode::Emulation);
      const Mat want = refq::ref_expm_i(term_dense(dec.n, term), t);
      const double bound = 2.0 * t * std::abs(term.coeff) * 3.0 *
                               (dec.n + 2) * std::ldexp(1.0, -p) +
                           1e-11;
      CHECK(refq::max_abs_diff(got, want) <= bound);
    }
  }
}
