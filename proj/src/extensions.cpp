#include "krein/extensions.hpp"

namespace krein {

HermitianContractionData HermitianContractionData::decompose(const Matrix& b_column, const Subspace& dom,
                                                             const Tolerance& tol) {
  const Index n = dom.ambient_dim();
  const Index m = dom.dim();
  if (b_column.rows() != n || b_column.cols() != m) {
    throw Error(Errc::InvalidInput, "decompose: column must map H0 into H");
  }
  if (!is_contraction(b_column, tol.eq_tol)) throw Error(Errc::NotContraction, "decompose: B is not a contraction");

  HermitianContractionData d;
  d.dom_ = dom;
  d.n_space_ = dom.complement();
  d.b_column_ = b_column;
  const Matrix& q0 = dom.basis();
  const Matrix& qn = d.n_space_.basis();
  const Index nn = qn.cols();

  const Matrix b0 = q0.adjoint() * b_column;
  if (!is_hermitian(b0, tol.eq_tol)) throw Error(Errc::NotHermitianOnDomain, "decompose: P_H0 B is not Hermitian");
  d.b0_ = hermitian_part(b0);
  d.d_b0_ = defect(d.b0_, tol);

  const Matrix b21 = qn.adjoint() * b_column;
  d.k0_ = b21 * pinv(d.d_b0_, tol);
  const double residual = (d.k0_ * d.d_b0_ - b21).norm();
  if (residual > tol.eq_tol * std::max(1.0, b21.norm())) {
    throw Error(Errc::InconsistentFactorization,
                "decompose: K0 D_B0 = P_N B has residual " + std::to_string(residual));
  }
  if (!is_contraction(d.k0_, tol.eq_tol)) throw Error(Errc::NotContraction, "decompose: K0 is not a contraction");

  d.d_k0_adj_ = defect(Matrix(d.k0_.adjoint()), tol);
  d.param_basis_ = defect_range_basis(Matrix(d.k0_.adjoint()), tol);

  const Matrix blocks = block_matrix(d.b0_, d.d_b0_ * d.k0_.adjoint(), d.k0_ * d.d_b0_,
                                     -d.k0_ * d.b0_ * d.k0_.adjoint());
  Matrix w(n, n);
  w.leftCols(m) = q0;
  w.rightCols(nn) = qn;
  d.base_ = w * blocks * w.adjoint();
  d.embedding_ = nn == 0 ? Matrix(n, 0) : Matrix(qn * d.d_k0_adj_ * d.param_basis_);
  return d;
}

Matrix HermitianContractionData::assemble(const Matrix& x) const {
  return base_ + embedding_ * x * embedding_.adjoint();
}

Matrix HermitianContractionData::recover_parameter(const Matrix& extension, const Tolerance& tol) const {
  const Matrix ep = pinv(embedding_, tol);
  return ep * (extension - base_) * ep.adjoint();
}

ScExtension qsc_extension(const HermitianContractionData& data, const Matrix& x, const Tolerance& tol) {
  const Index d = data.param_dim();
  if (x.rows() != d || x.cols() != d) {
    throw Error(Errc::ParameterWrongSpace, "qsc_extension: parameter must act on D_{K0*} (dimension " +
                                               std::to_string(d) + ")");
  }
  if (!is_contraction(x, tol.eq_tol)) throw Error(Errc::ParameterNotContraction, "qsc_extension: ||X|| > 1");
  return {data.assemble(x), x, ScExtension::Origin::BlockParameter};
}

Extremes extremes(const HermitianContractionData& data) {
  const Index d = data.param_dim();
  return {data.assemble(-Matrix::Identity(d, d)), data.assemble(Matrix::Identity(d, d))};
}

Matrix interval_basis(const Matrix& b_mu, const Matrix& b_m, const Tolerance& tol) {
  return hermitian_range_basis(Matrix(b_m - b_mu), tol);
}

ScExtension interval_extension(const Matrix& b_mu, const Matrix& b_m, const Matrix& y, const Tolerance& tol) {
  if (b_mu.rows() != b_m.rows() || b_mu.cols() != b_m.cols()) {
    throw Error(Errc::InvalidInput, "interval_extension: endpoint shapes differ");
  }
  const Matrix c = b_m - b_mu;
  if (!is_psd(c, tol)) throw Error(Errc::OrderViolated, "interval_extension: B_mu <= B_M fails");
  const Matrix qc = interval_basis(b_mu, b_m, tol);
  if (y.rows() != qc.cols() || y.cols() != qc.cols()) {
    throw Error(Errc::ParameterWrongSpace, "interval_extension: Y must act on cran(B_M - B_mu)");
  }
  if (!is_hermitian(y, tol.eq_tol) || !is_contraction(y, tol.eq_tol)) {
    throw Error(Errc::ParameterNotHermitianContraction, "interval_extension: Y is not a Hermitian contraction");
  }
  const Matrix root = psd_sqrt(c, tol);
  const Matrix lifted = root * qc;
  return {(b_m + b_mu) / 2.0 + lifted * y * lifted.adjoint() / 2.0, y, ScExtension::Origin::IntervalParameter};
}

Matrix interval_parameter(const HermitianContractionData& data, const Matrix& x, const Tolerance& tol) {
  const Extremes ends = extremes(data);
  const Matrix qc = interval_basis(ends.b_mu, ends.b_m, tol);
  const Matrix& e = data.param_embedding();
  if (e.cols() == 0) return Matrix(qc.cols(), qc.cols());
  // With E = U S V*, (B_M - B_mu)^{1/2} = sqrt(2) U S U*, so Y = T X T* for
  // the unitary T = Qc* U V*.
  Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix t = qc.adjoint() * svd.matrixU() * svd.matrixV().adjoint();
  return t * x * t.adjoint();
}

}  // namespace krein
