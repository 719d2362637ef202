#include "krein/relations.hpp"

#include <numbers>

namespace krein {

LinearRelation::LinearRelation(Index ambient_dim, Subspace graph) : n_(ambient_dim), graph_(std::move(graph)) {
  if (graph_.ambient_dim() != 2 * n_) {
    throw Error(Errc::InvalidInput, "relation graph must live in H ⊕ H");
  }
}

LinearRelation LinearRelation::graph_of(const Matrix& t, const Tolerance& tol) {
  if (t.rows() != t.cols()) throw Error(Errc::InvalidInput, "graph_of: operator must be square");
  return from_pairs(Matrix::Identity(t.rows(), t.cols()), t, tol);
}

LinearRelation LinearRelation::from_pairs(const Matrix& args, const Matrix& values, const Tolerance& tol) {
  if (args.rows() != values.rows() || args.cols() != values.cols()) {
    throw Error(Errc::InvalidInput, "from_pairs: argument and value blocks differ in shape");
  }
  return LinearRelation(args.rows(), Subspace::span(vstack(args, values), tol));
}

Subspace LinearRelation::domain(const Tolerance& tol) const { return Subspace::span(args(), tol); }

Subspace LinearRelation::multivalued_part(const Tolerance& tol) const {
  const Matrix kernel = null_basis(Matrix(args()), tol);
  return Subspace::span(values() * kernel, tol);
}

std::optional<Matrix> LinearRelation::as_operator(const Tolerance& tol) const {
  if (dim() != n_) return std::nullopt;
  const Matrix g1 = args();
  if (numerical_rank(g1, tol) < n_) return std::nullopt;
  return Matrix(values() * g1.inverse());
}

double relation_distance(const LinearRelation& a, const LinearRelation& b) {
  if (a.ambient_dim() != b.ambient_dim()) return 1.0;
  return subspace_distance(a.graph(), b.graph());
}

LinearRelation cayley(const LinearRelation& s) {
  // [I I; I -I] / sqrt(2) is unitary, so the image basis stays orthonormal.
  const double r = 1.0 / std::sqrt(2.0);
  Matrix g = vstack(r * (s.args() + s.values()), r * (s.args() - s.values()));
  return LinearRelation(s.ambient_dim(), Subspace(std::move(g)));
}

bool is_accretive(const LinearRelation& s, const Tolerance& tol) {
  const Matrix form = s.args().adjoint() * s.values();
  return s.dim() == 0 || hermitian_eigenvalues(form)(0) >= -tol.eq_tol;
}

bool is_selfadjoint(const LinearRelation& s, const Tolerance& tol) {
  if (s.dim() != s.ambient_dim()) return false;
  const Matrix form = s.args().adjoint() * s.values();
  return is_hermitian(form, tol.eq_tol);
}

bool is_nonnegative_selfadjoint(const LinearRelation& s, const Tolerance& tol) {
  return is_selfadjoint(s, tol) && is_accretive(s, tol);
}

namespace {

double class_excess(const Matrix& t, double alpha) {
  const Index n = t.rows();
  const Matrix shift = cplx(0.0, std::cos(alpha)) * Matrix::Identity(n, n);
  const Matrix scaled = std::sin(alpha) * t;
  return std::max(op_norm(Matrix(scaled + shift)), op_norm(Matrix(scaled - shift)));
}

}  // namespace

bool in_class(const Matrix& t, double alpha, const Tolerance& tol) {
  return t.size() == 0 || class_excess(t, alpha) <= 1.0 + tol.eq_tol;
}

double sectorial_angle(const Matrix& t, const Tolerance& tol) {
  if (t.rows() != t.cols()) throw Error(Errc::InvalidInput, "sectorial_angle: matrix is not square");
  if (!is_contraction(t, tol.eq_tol)) throw Error(Errc::NotContraction, "sectorial_angle: not a contraction");
  if (t.size() == 0 || is_hermitian(t, tol.eq_tol)) return 0.0;
  double hi = std::numbers::pi / 2.0 - tol.eq_tol;
  if (!in_class(t, hi, tol)) throw Error(Errc::NotInClass, "sectorial_angle: no angle below pi/2 works");
  double lo = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (in_class(t, mid, tol) ? hi : lo) = mid;
  }
  return hi;
}

SectorialDecomposition sectorial_decomposition(const Matrix& t, const Tolerance& tol) {
  const Index n = t.rows();
  SectorialDecomposition dec;
  dec.real_part = hermitian_part(t);
  const Matrix imag_part = (t - t.adjoint()) / cplx(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(Matrix::Identity(n, n) + dec.real_part));
  const VectorX<double>& mu = es.eigenvalues();
  const double top = n == 0 ? 0.0 : mu.cwiseAbs().maxCoeff();
  Index r = 0;
  for (Index i = 0; i < n; ++i) r += mu(i) > tol.rank_cut * top ? 1 : 0;
  dec.form_basis.resize(n, r);
  Vector root(n), inv_root = Vector::Zero(n);
  for (Index i = 0, j = 0; i < n; ++i) {
    root(i) = std::sqrt(std::max(mu(i), 0.0));
    if (mu(i) > tol.rank_cut * top) {
      inv_root(i) = 1.0 / root(i);
      dec.form_basis.col(j++) = es.eigenvectors().col(i);
    }
  }
  const Matrix& v = es.eigenvectors();
  dec.half_root = v * root.asDiagonal() * v.adjoint();
  const Matrix half_root_pinv = v * inv_root.asDiagonal() * v.adjoint();
  dec.g_factor = hermitian_part(Matrix(half_root_pinv * imag_part * half_root_pinv));

  const Matrix rebuilt =
      dec.half_root * (Matrix::Identity(n, n) + cplx(0.0, 1.0) * dec.g_factor) * dec.half_root;
  const Matrix target = Matrix::Identity(n, n) + t;
  if ((rebuilt - target).norm() > tol.eq_tol * std::max(1.0, target.norm())) {
    throw Error(Errc::NotInClass, "sectorial_decomposition: imaginary part leaves ran(I + T_R)");
  }
  return dec;
}

cplx clfrm_value(const SectorialDecomposition& dec, const Vector& u, const Vector& v, const Tolerance& tol) {
  const Matrix& q = dec.form_basis;
  for (const Vector* w : {&u, &v}) {
    if (w->size() != q.rows()) throw Error(Errc::InvalidInput, "clfrm_value: vector size mismatch");
    const Vector residual = *w - q * (q.adjoint() * *w);
    if (residual.norm() > tol.eq_tol * std::max(1.0, w->norm())) {
      throw Error(Errc::VectorOutsideFormDomain, "clfrm_value: vector not in ran(I + T_R)^{1/2}");
    }
  }
  const Index r = q.cols();
  if (r == 0) return -v.dot(u);
  // In the eigenbasis of I + T_R the pseudo-inverse root is diagonal.
  const Matrix rq = q.adjoint() * dec.half_root * q;
  const Vector a = rq.partialPivLu().solve(Vector(q.adjoint() * u));
  const Vector b = rq.partialPivLu().solve(Vector(q.adjoint() * v));
  const Matrix gr = q.adjoint() * dec.g_factor * q;
  const Matrix core = Matrix::Identity(r, r) + cplx(0.0, 1.0) * gr;
  const Vector x = core.partialPivLu().solve(a);
  return -v.dot(u) + 2.0 * b.dot(x);
}

cplx clfrm_value(const Matrix& t, const Vector& u, const Vector& v, const Tolerance& tol) {
  sectorial_angle(t, tol);
  return clfrm_value(sectorial_decomposition(t, tol), u, v, tol);
}

const char* region_name(Region r) {
  switch (r) {
    case Region::PiPlus: return "PiPlus";
    case Region::PiMinus: return "PiMinus";
    case Region::Both: return "Both";
    case Region::Outside: return "Outside";
  }
  return "Outside";
}

namespace {

bool in_pi(cplx z, double alpha, double sign) {
  if (alpha == 0.0) {
    // Limit of the defining inequality as alpha -> 0+.
    if (z.imag() == 0.0) return std::abs(z.real()) < 1.0;
    return sign * z.imag() < 0.0;
  }
  return std::abs(z * std::sin(alpha) + sign * cplx(0.0, std::cos(alpha))) < 1.0;
}

}  // namespace

bool in_pi_plus(cplx z, double alpha) { return in_pi(z, alpha, 1.0); }
bool in_pi_minus(cplx z, double alpha) { return in_pi(z, alpha, -1.0); }

Region region_classify(cplx z, double alpha) {
  const bool plus = in_pi_plus(z, alpha);
  const bool minus = in_pi_minus(z, alpha);
  if (plus && minus) return Region::Both;
  if (plus) return Region::PiPlus;
  if (minus) return Region::PiMinus;
  return Region::Outside;
}

}  // namespace krein
