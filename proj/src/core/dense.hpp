#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/common.hpp"
#include "core/twobytwo.hpp"

namespace qkron {

// Dense reference path, Eigen-backed. These routines are the oracle side of
// every dual-route check: circuits, tensor decompositions and the 2x2
// closed forms are all validated against them, so nothing here may depend
// on those modules.
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Mat to_mat(const TwoByTwo& t);
Vec to_vec(const Vec2& v);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

// Iterative Kronecker expansion of a factor list (left factor most
// significant). The test suite re-derives entries by index arithmetic.
Mat kron_chain(const std::vector<TwoByTwo>& factors);
Vec kron_chain(const std::vector<Vec2>& factors);

// exp(-i t h) for Hermitian h via dense eigendecomposition.
Mat expm_i_hermitian(const Mat& h, double t);

// Solve a x = rhs; fails (Status::Singular) when a is numerically singular.
Vec dense_solve(const Mat& a, const Vec& rhs);

struct SingularRange {
  double smax = 0.0;
  double smin = 0.0;
};
SingularRange singular_range(const Mat& a);

double spectral_norm(const Mat& a);

}  // namespace qkron
