#include "krein/functions.hpp"

#include <cmath>

namespace krein {

namespace {

constexpr double kMinRcond = 1e-13;

Matrix checked_inverse(const Matrix& m, const char* what) {
  if (m.size() == 0) return m;
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > kMinRcond)) {
    throw Error(Errc::ResolventSingular, std::string(what) + ": matrix numerically singular (rcond " +
                                             std::to_string(lu.rcond()) + ")");
  }
  return lu.inverse();
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

}  // namespace

PassiveSystem PassiveSystem::from_blocks(Matrix d, Matrix c, Matrix b, Matrix a) {
  if (c.rows() != d.rows() || b.cols() != d.cols() || a.rows() != a.cols() || c.cols() != a.rows() ||
      b.rows() != a.rows()) {
    throw Error(Errc::BadDims, "PassiveSystem: blocks do not fit [D C; B A]");
  }
  return {std::move(d), std::move(c), std::move(b), std::move(a)};
}

PassiveSystem PassiveSystem::from_matrix(const Matrix& u, Index io_dim) {
  if (u.rows() != u.cols() || io_dim < 0 || io_dim > u.rows()) {
    throw Error(Errc::BadDims, "PassiveSystem::from_matrix: bad io dimension");
  }
  const Index s = u.rows() - io_dim;
  return from_blocks(u.topLeftCorner(io_dim, io_dim), u.topRightCorner(io_dim, s), u.bottomLeftCorner(s, io_dim),
                     u.bottomRightCorner(s, s));
}

Matrix transfer(const PassiveSystem& sys, cplx z, const Tolerance&) {
  if (sys.state_dim() == 0 || z == 0.0) return sys.d;
  const Matrix r = checked_inverse(identity(sys.state_dim()) - z * sys.a, "transfer");
  return sys.d + z * sys.c * r * sys.b;
}

PassiveSystem phi_system(const ExitParameter& x) { return {x.x11(), x.x12(), x.x21(), x.x22()}; }

Matrix phi_x(const ExitParameter& x, cplx z, const Tolerance& tol) { return transfer(phi_system(x), z, tol); }

PassiveSystem theta_system(const HermitianContractionData& data, const ExitParameter& x, const Tolerance& tol) {
  const Matrix bt = exit_extension(data, x, tol);
  const Index n = data.ambient_dim();
  const Index h = x.h_dim();
  return {x.x22(), bt.bottomLeftCorner(h, n), bt.topRightCorner(n, h), bt.topLeftCorner(n, n)};
}

BlockResolvent schur_frobenius(const PassiveSystem& sys, cplx lambda, const Tolerance&) {
  const Matrix ra = checked_inverse(sys.a - lambda * identity(sys.state_dim()), "schur_frobenius: A - λ");
  BlockResolvent out;
  out.v = lambda * identity(sys.out_dim()) - sys.d + sys.c * ra * sys.b;
  if (sys.out_dim() != sys.in_dim()) throw Error(Errc::BadDims, "schur_frobenius: D must be square");
  const Matrix vi = checked_inverse(out.v, "schur_frobenius: V(λ)");
  out.top_left = -vi;
  out.top_right = vi * sys.c * ra;
  out.bottom_left = ra * sys.b * vi;
  out.bottom_right = ra - ra * sys.b * vi * sys.c * ra;
  return out;
}

Matrix compressed_resolvent(const Matrix& bt, Index h_dim, Side side, cplx z, const Tolerance&) {
  if (bt.rows() != bt.cols() || h_dim < 0 || h_dim > bt.rows()) {
    throw Error(Errc::BadDims, "compressed_resolvent: bad split");
  }
  const Index n = bt.rows();
  const Matrix r = checked_inverse(z * bt - identity(n), "compressed_resolvent");
  return side == Side::H ? Matrix(r.topLeftCorner(h_dim, h_dim)) : Matrix(r.bottomRightCorner(n - h_dim, n - h_dim));
}

Matrix b_hat(const HermitianContractionData& data, const ExitParameter& x, cplx z, const Tolerance& tol) {
  if (x.k_dim() != data.param_dim()) throw Error(Errc::ParameterWrongSpace, "b_hat: X11 must act on D_{K0*}");
  return data.assemble(phi_x(x, z, tol));
}

namespace {

void check_xi(cplx xi, const Tolerance& tol) {
  if (std::abs(xi.imag()) < tol.eq_tol && std::abs(xi.real()) < 1.0 + tol.eq_tol) {
    throw Error(Errc::ResolventSingular, "xi lies on [-1, 1]");
  }
}

struct QParts {
  Matrix m0, m1;  // R (B̂j - ξ)^{-1} R in N coordinates
};

QParts q_parts(const Matrix& b0, const Matrix& b1, const Subspace& n_space, cplx xi, const Tolerance& tol) {
  check_xi(xi, tol);
  const Index n = b0.rows();
  if (b1.rows() != n || n_space.ambient_dim() != n) throw Error(Errc::BadDims, "q_pair: size mismatch");
  const Matrix gap = b1 - b0;
  if (!is_psd(gap, tol)) throw Error(Errc::OrderViolated, "q_pair: B̂0 <= B̂1 fails");
  const Matrix r = psd_sqrt(gap, tol);
  const Matrix rq = r * n_space.basis();
  const Matrix id = identity(n);
  return {rq.adjoint() * checked_inverse(b0 - xi * id, "q_pair: B̂0 - ξ") * rq,
          rq.adjoint() * checked_inverse(b1 - xi * id, "q_pair: B̂1 - ξ") * rq};
}

}  // namespace

QPair q_pair(const Matrix& b0, const Matrix& b1, const Subspace& n_space, cplx xi, const Tolerance& tol) {
  const QParts p = q_parts(b0, b1, n_space, xi, tol);
  const Matrix id = identity(n_space.dim());
  return {p.m0 + id, p.m1 - id};
}

QPair q_pair_dressed(const Matrix& b0, const Matrix& b1, const Subspace& n_space, const Matrix& v, cplx xi,
                     const Tolerance& tol) {
  const Index nn = n_space.dim();
  if (v.rows() != nn || v.cols() != nn) throw Error(Errc::BadDims, "q_pair_dressed: V must act in N");
  if ((v.adjoint() * v - identity(nn)).norm() > tol.eq_tol * std::max<double>(1.0, nn)) {
    throw Error(Errc::IsometryInfeasible, "q_pair_dressed: V is not an isometry");
  }
  const QParts p = q_parts(b0, b1, n_space, xi, tol);
  const Matrix id = identity(nn);
  return {id + v * p.m0 * v.adjoint(), -id + v * p.m1 * v.adjoint()};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

bool ClassReport::passes() const {
  for (const ConditionProbe& c : conditions) {
    if (c.verdict != Verdict::Pass) return false;
  }
  return true;
}

namespace {

constexpr int kProbeFirst = 2;
constexpr int kProbeLast = 8;

ConditionProbe probe_limit(const QEvaluator& q, const std::vector<double>& xs, double limit) {
  ConditionProbe out;
  out.points = xs;
  for (double x : xs) {
    const Matrix v = q(cplx(x, 0.0));
    out.metric.push_back(op_norm(Matrix(v - limit * identity(v.rows()))));
  }
  const double last = out.metric.back();
  const double prev = out.metric[out.metric.size() - 2];
  if (last <= 1e-4 && last <= out.metric.front()) {
    out.verdict = Verdict::Pass;
  } else if (last > 1e-4 && last > 0.5 * prev) {
    out.verdict = Verdict::Fail;
  }
  return out;
}

ConditionProbe probe_divergence(const QEvaluator& q, const std::vector<double>& xs, double sign) {
  ConditionProbe out;
  out.points = xs;
  for (double x : xs) {
    const Matrix v = q(cplx(x, 0.0));
    const VectorX<double> ev = hermitian_eigenvalues(Matrix(sign * v));
    out.metric.push_back(ev.size() == 0 ? 0.0 : ev(0));
  }
  const double last = out.metric.back();
  const double prev = out.metric[out.metric.size() - 2];
  const double ratio = prev > 0.0 ? last / prev : 0.0;
  if (last >= 1e3 && ratio >= 5.0) {
    out.verdict = Verdict::Pass;
  } else if (ratio < 2.0) {
    out.verdict = Verdict::Fail;
  }
  return out;
}

}  // namespace

ClassReport class_probe(const QEvaluator& q, QClass which) {
  std::vector<double> far, below, above;
  for (int k = kProbeFirst; k <= kProbeLast; ++k) {
    const double e = std::pow(10.0, -k);
    far.push_back(std::pow(10.0, k));
    below.push_back(-1.0 - e);
    above.push_back(1.0 + e);
  }
  ClassReport r;
  if (which == QClass::S_mu) {
    r.conditions[0] = probe_limit(q, far, 1.0);
    r.conditions[1] = probe_divergence(q, below, 1.0);
    r.conditions[2] = probe_limit(q, above, 0.0);
  } else {
    r.conditions[0] = probe_limit(q, far, -1.0);
    r.conditions[1] = probe_limit(q, below, 0.0);
    r.conditions[2] = probe_divergence(q, above, -1.0);
  }
  return r;
}

Matrix neville_at_zero(const std::vector<double>& h, const std::vector<Matrix>& f) {
  if (h.empty() || h.size() != f.size()) throw Error(Errc::InvalidInput, "neville_at_zero: bad samples");
  std::vector<Matrix> p = f;
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      // Interpolant through h[i..i+m] evaluated at 0.
      p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
    }
  }
  return p[0];
}

PhiLimits phi_limits(const ExitParameter& x, const Tolerance& tol) {
  PhiLimits out;
  out.exact = z_pair(x, tol);
  std::vector<double> hs;
  std::vector<Matrix> lo, hi;
  for (int k = 2; k <= 6; ++k) {
    const double h = std::pow(10.0, -k);
    hs.push_back(h);
    lo.push_back(hermitian_part(phi_x(x, cplx(-1.0 + h, 0.0), tol)));
    hi.push_back(hermitian_part(phi_x(x, cplx(1.0 - h, 0.0), tol)));
  }
  out.extrapolated = {neville_at_zero(hs, lo), neville_at_zero(hs, hi)};
  out.deviation = std::max(op_norm(Matrix(out.extrapolated.z0 - out.exact.z0)),
                           op_norm(Matrix(out.extrapolated.z1 - out.exact.z1)));
  return out;
}

namespace {

void check_k(const Matrix& k, Index nn, const Tolerance& tol) {
  if (k.rows() != nn || k.cols() != nn) throw Error(Errc::ParameterWrongSpace, "K must act in N");
  if (!is_psd(k, tol) || !is_contraction(k, tol.eq_tol)) {
    throw Error(Errc::ParameterNotHermitianContraction, "K must satisfy 0 <= K <= I");
  }
}

}  // namespace

Matrix krein_ovcharenko(const Matrix& b_mu, const Matrix& c, const Subspace& n_space, const Matrix& k, cplx xi,
                        const Tolerance& tol) {
  check_xi(xi, tol);
  const Index n = b_mu.rows();
  const Index nn = n_space.dim();
  check_k(k, nn, tol);
  const Matrix r = checked_inverse(b_mu - xi * identity(n), "krein_ovcharenko: B_mu - ξ");
  const Matrix root = psd_sqrt(c, tol) * n_space.basis();  // C^{1/2} read from N
  const Matrix q_mu = root.adjoint() * r * root + identity(nn);
  const Matrix mid = checked_inverse(identity(nn) + (q_mu - identity(nn)) * k, "krein_ovcharenko: I + (Q_mu - I)K");
  return r - r * root * k * mid * root.adjoint() * r;
}

Matrix canonical_extension(const Matrix& b_mu, const Matrix& c, const Subspace& n_space, const Matrix& k,
                           const Tolerance& tol) {
  check_k(k, n_space.dim(), tol);
  const Matrix root = psd_sqrt(c, tol) * n_space.basis();
  return hermitian_part(Matrix(b_mu + root * k * root.adjoint()));
}

cplx lambda_to_w(cplx lambda) { return (1.0 + lambda) / (1.0 - lambda); }

namespace {

void check_left_half(cplx lambda, const Tolerance& tol) {
  if (!(lambda.real() < -tol.eq_tol)) throw Error(Errc::InvalidInput, "N(λ) needs Re λ < 0");
}

}  // namespace

LinearRelation n_lambda(const PassiveSystem& theta_sys, cplx lambda, const Tolerance& tol) {
  check_left_half(lambda, tol);
  const Matrix th = transfer(theta_sys, lambda_to_w(lambda), tol);
  const Matrix id = identity(th.rows());
  return LinearRelation::from_pairs(id + th, id - th, tol);
}

Matrix form_domain(const PassiveSystem& theta_sys, const Tolerance& tol) {
  const Matrix t0 = hermitian_part(theta_sys.d);
  return hermitian_range_basis(Matrix(identity(t0.rows()) + t0), tol);
}

cplx n_form_value(const HermitianContractionData& data, const ExitParameter& x, cplx lambda, const Vector& h,
                  const Vector& g, const Tolerance& tol) {
  check_left_half(lambda, tol);
  const Index hd = x.h_dim();
  if (h.size() != hd || g.size() != hd) throw Error(Errc::BadDims, "n_form_value: vectors must live in 𝓗");
  const Matrix x22 = hermitian_part(x.x22());
  const Matrix dom = hermitian_range_basis(Matrix(identity(hd) + x22), tol);
  for (const Vector* w : {&h, &g}) {
    const Vector residual = *w - dom * (dom.adjoint() * *w);
    if (residual.norm() > std::sqrt(tol.eq_tol) * std::max(1.0, w->norm())) {
      throw Error(Errc::VectorOutsideFormDomain, "n_form_value: vector not in ran(I + Θ(0))^{1/2}");
    }
  }
  const Matrix y = psd_sqrt(Matrix(identity(hd) - x22), tol) * pinv(psd_sqrt(Matrix(identity(hd) + x22), tol), tol);
  const Vector yh = y * h;
  const Vector yg = y * g;
  cplx value = yg.dot(yh);

  if (std::abs(1.0 + lambda) <= tol.eq_tol) return value;  // ξ = ∞: the resolvent term vanishes
  const cplx xi = (1.0 - lambda) / (1.0 + lambda);

  const ZPair z = z_pair(x, tol);
  const Matrix b0 = data.assemble(z.z0);
  const Matrix r = psd_sqrt(Matrix(data.assemble(z.z1) - b0), tol);
  // √2 (E U)* = V R with X12 = U D_{X22}; V from the polar factor.
  const Matrix u = x.x12() * pinv(defect(x22, tol), tol);
  const Matrix t = std::sqrt(2.0) * (data.param_embedding() * u).adjoint();
  if (t.size() == 0) return value;
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Index rank = sv(0) == 0.0 ? 0 : (sv.array() > tol.rank_cut * std::max(1.0, sv(0))).count();
  if (rank == 0) return value;
  const Matrix v = svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
  const Index n = b0.rows();
  const Matrix res = checked_inverse(b0 - xi * identity(n), "n_form_value: B̂0 - ξ");
  const Matrix m = v * r * res * r * v.adjoint();
  return value + yg.dot(m * yh);
}

}  // namespace krein
