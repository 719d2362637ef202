#include "krein/numcore.hpp"

namespace krein {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NegativeEigenvalueBeyondTolerance: return "NegativeEigenvalueBeyondTolerance";
    case Errc::NotContraction: return "NotContraction";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NotInClass: return "NotInClass";
    case Errc::VectorOutsideFormDomain: return "VectorOutsideFormDomain";
    case Errc::NotHermitianOnDomain: return "NotHermitianOnDomain";
    case Errc::InconsistentFactorization: return "InconsistentFactorization";
    case Errc::ParameterNotContraction: return "ParameterNotContraction";
    case Errc::ParameterWrongSpace: return "ParameterWrongSpace";
    case Errc::ParameterNotHermitianContraction: return "ParameterNotHermitianContraction";
    case Errc::IsometryInfeasible: return "IsometryInfeasible";
    case Errc::InfeasibleInFiniteDim: return "InfeasibleInFiniteDim";
    case Errc::ResolventSingular: return "ResolventSingular";
    case Errc::OrderViolated: return "OrderViolated";
    case Errc::BadDims: return "BadDims";
    case Errc::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void Tolerance::validate() const {
  if (!(rank_cut > 0.0 && rank_cut < 1.0) || !(eq_tol > 0.0 && eq_tol < 1.0)) {
    throw Error(Errc::InvalidInput, "tolerances must lie in (0, 1)");
  }
}

Matrix block_matrix(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols()) {
    throw Error(Errc::InvalidInput, "block_matrix: inconsistent block shapes");
  }
  Matrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.topRightCorner(b.rows(), b.cols()) = b;
  out.bottomLeftCorner(c.rows(), c.cols()) = c;
  out.bottomRightCorner(d.rows(), d.cols()) = d;
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(Errc::InvalidInput, "vstack: column counts differ");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

Subspace::Subspace(Matrix basis, const Tolerance& tol) : basis_(std::move(basis)) {
  const Index k = basis_.cols();
  if (k > basis_.rows()) throw Error(Errc::InvalidInput, "subspace basis has more columns than rows");
  if (k > 0 && (basis_.adjoint() * basis_ - Matrix::Identity(k, k)).norm() > tol.eq_tol) {
    throw Error(Errc::InvalidInput, "subspace basis is not orthonormal");
  }
}

Subspace Subspace::span(const Matrix& a, const Tolerance& tol) {
  Subspace s;
  s.basis_ = range_basis(a, tol);
  return s;
}

Subspace Subspace::coordinate(Index ambient_dim, Index first, Index count) {
  if (first < 0 || count < 0 || first + count > ambient_dim) {
    throw Error(Errc::InvalidInput, "coordinate subspace out of range");
  }
  Subspace s;
  s.basis_ = Matrix::Identity(ambient_dim, ambient_dim).middleCols(first, count);
  return s;
}

Subspace Subspace::complement() const {
  Subspace s;
  s.basis_ = orthogonal_complement(basis_);
  return s;
}

bool Subspace::contains(const Vector& v, const Tolerance& tol) const {
  if (v.size() != ambient_dim()) return false;
  const Vector residual = v - basis_ * (basis_.adjoint() * v);
  return residual.norm() <= tol.eq_tol * std::max(1.0, v.norm());
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  return basis_distance(a.basis(), b.basis());
}

}  // namespace krein
