#pragma once

#include <algorithm>
#include <cmath>

#include "krein/core.hpp"

namespace krein {

template <typename Derived>
using PlainOf = MatrixX<typename Derived::Scalar>;

template <typename Derived>
double op_norm(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<PlainOf<Derived>> svd(a.eval());
  return svd.singularValues()(0);
}

template <typename Derived>
PlainOf<Derived> hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) / 2.0;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

// Eigenvalues of the Hermitian part, ascending.
template <typename Derived>
VectorX<double> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return VectorX<double>();
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  if (!is_hermitian(a, tol.eq_tol)) return false;
  if (a.size() == 0) return true;
  const VectorX<double> ev = hermitian_eigenvalues(a);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev(0) >= -tol.eq_tol * scale;
}

// a <= b in the PSD order.
template <typename DA, typename DB>
bool psd_leq(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b, const Tolerance& tol = {}) {
  return is_psd((b - a).eval(), tol);
}

template <typename Derived>
bool is_contraction(const Eigen::MatrixBase<Derived>& a, double tol) {
  return op_norm(a) <= 1.0 + tol;
}

template <typename Derived>
PlainOf<Derived> psd_sqrt(const Eigen::MatrixBase<Derived>& s, const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  if (s.rows() != s.cols()) throw Error(Errc::InvalidInput, "psd_sqrt: matrix is not square");
  if (!is_hermitian(s, tol.eq_tol)) throw Error(Errc::NotHermitian, "psd_sqrt: matrix is not Hermitian");
  if (s.size() == 0) return PlainOf<Derived>(0, 0);
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(hermitian_part(s));
  const VectorX<double>& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev(0) < -tol.eq_tol * scale) {
    throw Error(Errc::NegativeEigenvalueBeyondTolerance,
                "psd_sqrt: eigenvalue " + std::to_string(ev(0)) + " below tolerance");
  }
  const VectorX<Scalar> root = ev.cwiseMax(0.0).cwiseSqrt().template cast<Scalar>();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Derived>
PlainOf<Derived> pinv(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  PlainOf<Derived> out = PlainOf<Derived>::Zero(a.cols(), a.rows());
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<PlainOf<Derived>> svd(a.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return out;
  const double cut = tol.rank_cut * sv(0);
  for (Index i = 0; i < sv.size() && sv(i) > cut; ++i) {
    out.noalias() += svd.matrixV().col(i) * Scalar(1.0 / sv(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<PlainOf<Derived>> svd(a.eval());
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  return (sv.array() > tol.rank_cut * sv(0)).count();
}

// Orthonormal basis of ran a (left singular vectors above the rank cut).
template <typename Derived>
PlainOf<Derived> range_basis(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  if (a.size() == 0) return PlainOf<Derived>(a.rows(), 0);
  Eigen::JacobiSVD<PlainOf<Derived>> svd(a.eval(), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return PlainOf<Derived>(a.rows(), 0);
  const Index r = (sv.array() > tol.rank_cut * sv(0)).count();
  return svd.matrixU().leftCols(r);
}

// Basis of ran s for Hermitian s: the identity when s has full rank,
// otherwise the eigenvectors of the nonzero eigenvalues. Used for parameter
// coordinates so that full-rank cases keep the ambient coordinates.
// Eigenvalues below rank_cut * max(1, |s|) count as zero; the floor keeps
// rounding noise of a nearly vanishing operator out of its range.
template <typename Derived>
PlainOf<Derived> hermitian_range_basis(const Eigen::MatrixBase<Derived>& s, const Tolerance& tol = {}) {
  const Index n = s.rows();
  if (n == 0) return PlainOf<Derived>(0, 0);
  Eigen::SelfAdjointEigenSolver<PlainOf<Derived>> es(hermitian_part(s));
  const VectorX<double>& ev = es.eigenvalues();
  const double cut = tol.rank_cut * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Index r = 0;
  for (Index i = 0; i < n; ++i) r += std::abs(ev(i)) > cut ? 1 : 0;
  if (r == n) return PlainOf<Derived>::Identity(n, n);
  PlainOf<Derived> out(n, r);
  for (Index i = 0, j = 0; i < n; ++i) {
    if (std::abs(ev(i)) > cut) out.col(j++) = es.eigenvectors().col(i);
  }
  return out;
}

// Orthonormal basis of the orthogonal complement of ran q, q orthonormal.
template <typename Derived>
PlainOf<Derived> orthogonal_complement(const Eigen::MatrixBase<Derived>& q) {
  const Index n = q.rows();
  const Index k = q.cols();
  if (k == 0) return PlainOf<Derived>::Identity(n, n);
  if (k >= n) return PlainOf<Derived>(n, 0);
  Eigen::HouseholderQR<PlainOf<Derived>> qr(q.eval());
  PlainOf<Derived> full = qr.householderQ() * PlainOf<Derived>::Identity(n, n);
  return full.rightCols(n - k);
}

template <typename Derived>
PlainOf<Derived> null_basis(const Eigen::MatrixBase<Derived>& a, const Tolerance& tol = {}) {
  return orthogonal_complement(range_basis(a.adjoint().eval(), tol));
}

template <typename DA, typename DB>
VectorX<double> principal_cosines(const Eigen::MatrixBase<DA>& qa, const Eigen::MatrixBase<DB>& qb) {
  if (qa.cols() == 0 || qb.cols() == 0) return VectorX<double>();
  Eigen::JacobiSVD<PlainOf<DA>> svd((qa.adjoint() * qb).eval());
  return svd.singularValues().cwiseMin(1.0);
}

// Largest cosine of the principal angles between ran a and ran b; 0 when
// either range is trivial.
template <typename DA, typename DB>
double max_principal_cosine(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                            const Tolerance& tol = {}) {
  const VectorX<double> c = principal_cosines(range_basis(a, tol), range_basis(b, tol));
  return c.size() == 0 ? 0.0 : c.maxCoeff();
}

template <typename DA, typename DB>
bool range_meet_trivial(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                        const Tolerance& tol = {}) {
  return max_principal_cosine(a, b, tol) < 1.0 - tol.rank_cut;
}

// D_T = (I - T*T)^{1/2}.
template <typename Derived>
PlainOf<Derived> defect(const Eigen::MatrixBase<Derived>& t, const Tolerance& tol = {}) {
  if (!is_contraction(t, tol.eq_tol)) {
    throw Error(Errc::NotContraction, "defect: norm " + std::to_string(op_norm(t)) + " exceeds 1");
  }
  const Index n = t.cols();
  PlainOf<Derived> s = PlainOf<Derived>::Identity(n, n) - t.adjoint() * t;
  Tolerance loose = tol;
  loose.eq_tol = 3.0 * tol.eq_tol;
  return psd_sqrt(s, loose);
}

// Basis of ran D_T, read off I - T*T: the square root would lift rounding
// noise on ker D_T to about 1e-8.
template <typename Derived>
PlainOf<Derived> defect_range_basis(const Eigen::MatrixBase<Derived>& t, const Tolerance& tol = {}) {
  const Index n = t.cols();
  return hermitian_range_basis((PlainOf<Derived>::Identity(n, n) - t.adjoint() * t).eval(), tol);
}

// sin of the largest principal angle between two orthonormal bases; 1 when
// the dimensions differ.
template <typename DA, typename DB>
double basis_distance(const Eigen::MatrixBase<DA>& qa, const Eigen::MatrixBase<DB>& qb) {
  if (qa.cols() != qb.cols() || qa.rows() != qb.rows()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  return op_norm((qb - qa * (qa.adjoint() * qb)).eval());
}

// [a b; c d] assembled blockwise; any block may be empty.
Matrix block_matrix(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
// [top; bottom].
Matrix vstack(const Matrix& top, const Matrix& bottom);

class Subspace {
 public:
  Subspace() = default;
  // basis must have orthonormal columns.
  explicit Subspace(Matrix basis, const Tolerance& tol = {});

  static Subspace span(const Matrix& a, const Tolerance& tol = {});
  static Subspace coordinate(Index ambient_dim, Index first, Index count);
  static Subspace whole(Index ambient_dim) { return coordinate(ambient_dim, 0, ambient_dim); }
  static Subspace zero(Index ambient_dim) { return coordinate(ambient_dim, 0, 0); }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }
  Subspace complement() const;
  bool contains(const Vector& v, const Tolerance& tol = {}) const;

 private:
  Matrix basis_;
};

double subspace_distance(const Subspace& a, const Subspace& b);

}  // namespace krein
