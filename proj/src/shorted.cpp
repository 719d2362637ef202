#include "krein/shorted.hpp"

#include <cmath>
#include <limits>

namespace krein {

namespace {

void require_psd(const Matrix& s, const Tolerance& tol, const char* where) {
  if (s.rows() != s.cols() || !is_psd(s, tol)) {
    throw Error(Errc::NotPSD, std::string(where) + ": operator is not PSD");
  }
}

}  // namespace

ShortedResult shorted(const Matrix& s, const Subspace& k, const Tolerance& tol) {
  require_psd(s, tol, "shorted");
  if (k.ambient_dim() != s.rows()) throw Error(Errc::InvalidInput, "shorted: subspace lives elsewhere");
  const Matrix& q1 = k.basis();
  const Matrix q2 = orthogonal_complement(q1);
  const Matrix s11 = q1.adjoint() * s * q1;
  const Matrix s12 = q1.adjoint() * s * q2;
  const Matrix s22 = hermitian_part(Matrix(q2.adjoint() * s * q2));

  const Matrix root22 = psd_sqrt(s22, tol);
  const Matrix w = pinv(root22, tol) * s12.adjoint();
  const double scale = std::max(1.0, s.norm());
  // An eigenvalue mu of S22 bounds the matching component of S12* by
  // sqrt(mu |S11|), so rounding noise on mu leaves about sqrt(eps) behind.
  const double slack = std::max(tol.eq_tol, 10.0 * std::sqrt(std::numeric_limits<double>::epsilon()));
  if ((root22 * w - s12.adjoint()).norm() > slack * scale) {
    throw Error(Errc::NotPSD, "shorted: ran S12* is not inside ran S22^{1/2}");
  }
  ShortedResult out;
  out.schur_complement = hermitian_part(Matrix(s11 - w.adjoint() * w));
  out.value = q1 * out.schur_complement * q1.adjoint();
  return out;
}

double shorted_infimum_oracle(const Matrix& s, const Subspace& k, const Vector& f, const Tolerance& tol) {
  require_psd(s, tol, "shorted_infimum_oracle");
  const Matrix p = k.complement().projector();
  const Matrix reduced = s - s * p * pinv(Matrix(p * s * p), tol) * p * s;
  return f.dot(reduced * f).real();
}

Matrix parallel_sum(const Matrix& f, const Matrix& g, const Tolerance& tol) {
  require_psd(f, tol, "parallel_sum");
  require_psd(g, tol, "parallel_sum");
  if (f.rows() != g.rows()) throw Error(Errc::InvalidInput, "parallel_sum: size mismatch");
  return hermitian_part(Matrix(f * pinv(Matrix(f + g), tol) * g));
}

}  // namespace krein
