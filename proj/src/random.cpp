#include "krein/random.hpp"

namespace krein::gen {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 1))); }

double Rng::uniform(double lo, double hi) {
  // Built from raw engine output so results do not depend on the standard
  // library's distribution implementations.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Index Rng::integer(Index lo, Index hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Index>(engine_() % span);
}

cplx Rng::complex_normal() { return {normal() / std::sqrt(2.0), normal() / std::sqrt(2.0)}; }

cplx Rng::unit_phase() { return std::polar(1.0, uniform(0.0, 2.0 * M_PI)); }

Matrix gaussian(Rng& rng, Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

Vector gaussian_vector(Rng& rng, Index n) { return gaussian(rng, n, 1).col(0); }

Matrix unitary(Rng& rng, Index n) { return isometry(rng, n, n); }

Matrix isometry(Rng& rng, Index rows, Index cols) {
  if (cols > rows) throw Error(Errc::InvalidInput, "isometry: more columns than rows");
  if (cols == 0) return Matrix(rows, 0);
  const Matrix g = gaussian(rng, rows, cols);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Phase fix makes the distribution Haar.
  for (Index j = 0; j < cols; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Matrix contraction(Rng& rng, Index rows, Index cols, double max_norm) {
  Matrix g = gaussian(rng, rows, cols);
  const double nrm = op_norm(g);
  return nrm > 0.0 ? Matrix(g * (max_norm / nrm)) : g;
}

Matrix contraction_with_units(Rng& rng, Index rows, Index cols, Index unit, double max_norm) {
  const Index k = std::min(rows, cols);
  if (unit > k) throw Error(Errc::InvalidInput, "contraction_with_units: too many unit singular values");
  const Matrix u = isometry(rng, rows, k);
  const Matrix v = isometry(rng, cols, k);
  Vector s(k);
  for (Index i = 0; i < k; ++i) s(i) = i < unit ? 1.0 : rng.uniform(0.0, max_norm);
  return u * s.asDiagonal() * v.adjoint();
}

Matrix hermitian_contraction(Rng& rng, Index n, double max_norm) {
  const Matrix u = unitary(rng, n);
  Vector ev(n);
  for (Index i = 0; i < n; ++i) ev(i) = rng.uniform(-max_norm, max_norm);
  if (n > 0) ev(rng.integer(0, n - 1)) = rng.uniform() < 0.5 ? -max_norm : max_norm;
  return hermitian_part(Matrix(u * ev.asDiagonal() * u.adjoint()));
}

Matrix psd(Rng& rng, Index n, Index rank) {
  const Matrix g = gaussian(rng, n, rank);
  return hermitian_part(Matrix(g * g.adjoint()));
}

Matrix sectorial_contraction(Rng& rng, Index n, double alpha, Index kernel_dim) {
  if (kernel_dim < 0 || kernel_dim > n) throw Error(Errc::BadDims, "sectorial_contraction: bad kernel dimension");
  const Index r = n - kernel_dim;
  const Matrix u = unitary(rng, r);
  Vector ev(r);
  for (Index i = 0; i < r; ++i) ev(i) = rng.uniform(0.05, 3.0);
  const Matrix root = u * ev.cwiseSqrt().asDiagonal() * u.adjoint();
  Matrix g = hermitian_contraction(rng, r, kMaxNorm);
  g *= std::tan(alpha) * rng.uniform(0.2, 1.0);
  const cplx i1(0.0, 1.0);
  const Matrix m = root * (Matrix::Identity(r, r) + i1 * g) * root;
  const Matrix id = Matrix::Identity(r, r);
  const Matrix t1 = (id - m) * (id + m).inverse();
  const Matrix w = unitary(rng, n);
  Matrix t = Matrix::Zero(n, n);
  t.topLeftCorner(r, r) = t1;
  t.bottomRightCorner(kernel_dim, kernel_dim) = -Matrix::Identity(kernel_dim, kernel_dim);
  return w * t * w.adjoint();
}

Subspace subspace(Rng& rng, Index n, Index k) { return Subspace(isometry(rng, n, k)); }

HermitianContractionData hermitian_data(Rng& rng, Index n, Index m, Index unit, double max_norm) {
  if (m < 0 || m > n) throw Error(Errc::BadDims, "hermitian_data: need 0 <= dim H0 <= dim H");
  const Subspace dom = subspace(rng, n, m);
  const Subspace nsp = dom.complement();
  const Matrix b0 = hermitian_contraction(rng, m, max_norm);
  const Matrix k0 = contraction_with_units(rng, n - m, m, unit, max_norm);
  const Matrix b_column = dom.basis() * b0 + nsp.basis() * k0 * defect(b0);
  return HermitianContractionData::decompose(b_column, dom);
}

}  // namespace krein::gen
