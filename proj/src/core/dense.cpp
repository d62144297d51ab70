#include "core/dense.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qkron {

Mat to_mat(const TwoByTwo& t) {
  Mat m(2, 2);
  m(0, 0) = t.at(0, 0);
  m(0, 1) = t.at(0, 1);
  m(1, 0) = t.at(1, 0);
  m(1, 1) = t.at(1, 1);
  return m;
}

Vec to_vec(const Vec2& v) {
  Vec r(2);
  r(0) = v[0];
  r(1) = v[1];
  return r;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    r.segment(i * b.size(), b.size()) = a(i) * b;
  return r;
}

Mat kron_chain(const std::vector<TwoByTwo>& factors) {
  Mat acc = Mat::Identity(1, 1);
  for (const TwoByTwo& f : factors) acc = kron(acc, to_mat(f));
  return acc;
}

Vec kron_chain(const std::vector<Vec2>& factors) {
  Vec acc = Vec::Ones(1);
  for (const Vec2& f : factors) acc = kron(acc, to_vec(f));
  return acc;
}

Mat expm_i_hermitian(const Mat& h, double t) {
  const double defect = (h - h.adjoint()).norm();
  if (defect > 1e-9 * (h.norm() + 1.0))
    fail(Status::BadArgument, "expm_i_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success)
    fail(Status::InternalError, "expm_i_hermitian: eigensolver failed");
  Vec phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(cplx(0.0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

Vec dense_solve(const Mat& a, const Vec& rhs) {
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  if (!qr.isInvertible())
    fail(Status::Singular, "dense_solve: matrix is numerically singular");
  Vec x = qr.solve(rhs);
  const double resid = (a * x - rhs).norm();
  if (resid > 1e-10 * (rhs.norm() + 1.0))
    fail(Status::Singular, "dense_solve: residual too large");
  return x;
}

SingularRange singular_range(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  SingularRange r;
  r.smax = svd.singularValues()(0);
  r.smin = svd.singularValues()(svd.singularValues().size() - 1);
  return r;
}

double spectral_norm(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

}  // namespace qkron
