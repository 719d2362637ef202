#include "krein/exitspace.hpp"

#include "krein/random.hpp"
#include "krein/shorted.hpp"

namespace krein {

ExitParameter::ExitParameter(Matrix x11, Matrix x12, Matrix x21, Matrix x22)
    : x11_(std::move(x11)), x12_(std::move(x12)), x21_(std::move(x21)), x22_(std::move(x22)) {
  const Index k = x11_.rows();
  const Index h = x22_.rows();
  if (x11_.cols() != k || x22_.cols() != h || x12_.rows() != k || x12_.cols() != h || x21_.rows() != h ||
      x21_.cols() != k) {
    throw Error(Errc::BadDims, "ExitParameter: blocks do not tile K ⊕ 𝓗");
  }
}

ExitParameter ExitParameter::selfadjoint(Matrix x11, Matrix x12, Matrix x22) {
  Matrix x21 = x12.adjoint();
  return ExitParameter(std::move(x11), std::move(x12), std::move(x21), std::move(x22));
}

ExitParameter ExitParameter::split(const Matrix& x, Index k_dim) {
  if (x.rows() != x.cols() || k_dim < 0 || k_dim > x.rows()) {
    throw Error(Errc::BadDims, "ExitParameter::split: bad block size");
  }
  const Index h = x.rows() - k_dim;
  return ExitParameter(x.topLeftCorner(k_dim, k_dim), x.topRightCorner(k_dim, h), x.bottomLeftCorner(h, k_dim),
                       x.bottomRightCorner(h, h));
}

Matrix exit_extension(const HermitianContractionData& data, const ExitParameter& x, const Tolerance& tol) {
  if (x.k_dim() != data.param_dim()) {
    throw Error(Errc::ParameterWrongSpace, "exit_extension: X11 must act on D_{K0*} (dimension " +
                                               std::to_string(data.param_dim()) + ")");
  }
  if (!is_contraction(x.assembled(), tol.eq_tol)) {
    throw Error(Errc::ParameterNotContraction, "exit_extension: ||X|| > 1");
  }
  const Matrix& e = data.param_embedding();
  return block_matrix(data.assemble(x.x11()), e * x.x12(), x.x21() * e.adjoint(), x.x22());
}

ZPair z_pair(const ExitParameter& x, const Tolerance& tol) {
  const Matrix xx = x.assembled();
  if (!is_hermitian(xx, tol.eq_tol)) throw Error(Errc::NotHermitian, "z_pair: X is not selfadjoint");
  if (!is_contraction(xx, tol.eq_tol)) throw Error(Errc::ParameterNotContraction, "z_pair: ||X|| > 1");
  const Index k = x.k_dim();
  const Index n = xx.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix xs = hermitian_part(xx);
  const Subspace kk = Subspace::coordinate(n, 0, k);
  const Matrix ik = Matrix::Identity(k, k);
  ZPair z;
  z.z0 = hermitian_part(Matrix(shorted(Matrix(id + xs), kk, tol).schur_complement - ik));
  z.z1 = hermitian_part(Matrix(ik - shorted(Matrix(id - xs), kk, tol).schur_complement));
  return z;
}

InducedPair induced_pair(const HermitianContractionData& data, const ExitParameter& x, const Tolerance& tol) {
  if (x.k_dim() != data.param_dim()) {
    throw Error(Errc::ParameterWrongSpace, "induced_pair: X11 must act on D_{K0*}");
  }
  const ZPair z = z_pair(x, tol);
  return {qsc_extension(data, z.z0, tol).matrix, qsc_extension(data, z.z1, tol).matrix};
}

namespace {

void check_pair(const ZPair& z, const Tolerance& tol) {
  const Index k = z.z0.rows();
  if (z.z0.cols() != k || z.z1.rows() != k || z.z1.cols() != k) {
    throw Error(Errc::BadDims, "z-pair: Z0 and Z1 must be square of the same size");
  }
  for (const Matrix* m : {&z.z0, &z.z1}) {
    if (!is_hermitian(*m, tol.eq_tol) || !is_contraction(*m, tol.eq_tol)) {
      throw Error(Errc::ParameterNotHermitianContraction, "z-pair: entries must be Hermitian contractions");
    }
  }
  if (!psd_leq(z.z0, z.z1, tol)) throw Error(Errc::OrderViolated, "z-pair: Z0 <= Z1 fails");
}

}  // namespace

Matrix gap_basis(const ZPair& z, const Tolerance& tol) { return hermitian_range_basis(Matrix(z.z1 - z.z0), tol); }

ExitParameter x_from_z_pair(const ZPair& z, const Matrix& x22, const Matrix& v, const Tolerance& tol) {
  check_pair(z, tol);
  const Index h = x22.rows();
  if (x22.cols() != h) throw Error(Errc::ParameterWrongSpace, "x_from_z_pair: X22 must be square");
  if (!is_hermitian(x22, tol.eq_tol) || !is_contraction(x22, tol.eq_tol)) {
    throw Error(Errc::ParameterNotHermitianContraction, "x_from_z_pair: X22 is not a Hermitian contraction");
  }
  const Matrix qg = gap_basis(z, tol);
  const Index r = qg.cols();
  if (h < r) {
    throw Error(Errc::IsometryInfeasible, "x_from_z_pair: dim 𝓗 = " + std::to_string(h) +
                                              " < rank(Z1 - Z0) = " + std::to_string(r));
  }
  if (v.rows() != h || v.cols() != r) {
    throw Error(Errc::ParameterWrongSpace, "x_from_z_pair: V must be " + std::to_string(h) + "x" +
                                               std::to_string(r));
  }
  if ((v.adjoint() * v - Matrix::Identity(r, r)).norm() > tol.eq_tol * std::max<double>(1.0, r)) {
    throw Error(Errc::IsometryInfeasible, "x_from_z_pair: V is not an isometry");
  }
  const Matrix dx = defect(x22, tol);
  const Matrix qd = defect_range_basis(x22, tol);
  const Matrix outside = v - qd * (qd.adjoint() * v);
  if (op_norm(outside) > std::sqrt(tol.eq_tol)) {
    throw Error(Errc::IsometryInfeasible, "x_from_z_pair: ran V is not inside ran D_{X22}");
  }
  const Matrix w = psd_sqrt(Matrix((z.z1 - z.z0) / 2.0), tol);
  const Matrix vv = v * qg.adjoint();  // h x k, vanishing on ker(Z1 - Z0)
  const Matrix x11 = hermitian_part(Matrix((z.z1 + z.z0) / 2.0 - w * vv.adjoint() * x22 * vv * w));
  const Matrix x12 = w * vv.adjoint() * dx;
  return ExitParameter::selfadjoint(x11, x12, hermitian_part(x22));
}

Matrix default_isometry(const ZPair& z, const Matrix& x22, const Tolerance& tol) {
  check_pair(z, tol);
  const Index r = gap_basis(z, tol).cols();
  const Matrix qd = defect_range_basis(x22, tol);
  if (qd.cols() < r) {
    throw Error(Errc::IsometryInfeasible, "default_isometry: rank D_{X22} = " + std::to_string(qd.cols()) +
                                              " < rank(Z1 - Z0) = " + std::to_string(r));
  }
  return qd.leftCols(r);
}

ZPair exit_shortenings(const Matrix& x, Index h_dim, const Tolerance& tol) {
  const Index n = x.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Subspace hh = Subspace::coordinate(n, n - h_dim, h_dim);
  const Matrix xs = hermitian_part(x);
  return {shorted(Matrix(id + xs), hh, tol).schur_complement, shorted(Matrix(id - xs), hh, tol).schur_complement};
}

double max_gap_cosine(const ZPair& z, const Tolerance& tol) {
  const Index k = z.z0.rows();
  const Matrix id = Matrix::Identity(k, k);
  // A PSD operator and its square root share their range.
  const Matrix gap = hermitian_range_basis(Matrix(z.z1 - z.z0), tol);
  double worst = 0.0;
  for (const Matrix& side : {Matrix(id + z.z0), Matrix(id - z.z1)}) {
    const VectorX<double> c = principal_cosines(gap, hermitian_range_basis(side, tol));
    if (c.size() > 0) worst = std::max(worst, c.maxCoeff());
  }
  return worst;
}

namespace {

bool gap_meets_trivially(const ZPair& z, const Tolerance& tol) { return max_gap_cosine(z, tol) < 1.0 - tol.rank_cut; }

std::string dims_text(Index p, Index q) {
  return "dim Ω0 = " + std::to_string(p) + ", dim M0 = " + std::to_string(q) + ", dim K = " + std::to_string(p + q);
}

}  // namespace

SpecialConstruction construct_special_x(Index p, Index q, const Matrix& a, std::uint64_t seed,
                                        SpecialRequest request, const Tolerance& tol) {
  if (p < 0 || q < 0) throw Error(Errc::BadDims, "construct_special_x: negative dimension");
  if (a.rows() != p || a.cols() != p) throw Error(Errc::BadDims, "construct_special_x: A must act on Ω0");
  if (!is_hermitian(a, tol.eq_tol) || !is_contraction(a, tol.eq_tol)) {
    throw Error(Errc::ParameterNotHermitianContraction, "construct_special_x: A is not a Hermitian contraction");
  }
  const Index k = p + q;
  // Both are decided by dimension counting alone, before any sampling.
  if (request.injective_gap && request.nontrivial_pair) {
    throw Error(Errc::InfeasibleInFiniteDim,
                "construct_special_x: " + dims_text(p, q) +
                    " is finite, so ker(Z1 - Z0) = {0} gives ran(Z1 - Z0)^{1/2} = K; a trivial intersection with "
                    "ran(I + Z0)^{1/2} then leaves ran(I + Z0)^{1/2} = {0}, i.e. Z0 = -I");
  }
  if ((request.kernel_free_coupling || request.injective_gap) && q > 0) {
    throw Error(Errc::InfeasibleInFiniteDim,
                "construct_special_x: " + dims_text(p, q) + "; X12* maps K into 𝓗 with dim 𝓗 <= dim Ω0 = " +
                    std::to_string(p) + " < " + std::to_string(k) + ", so ker X12* has dimension >= " +
                    std::to_string(q));
  }

  gen::Rng rng(seed);
  SpecialConstruction out;
  const Index l = q / 2;
  const Index want_units = q - l;
  const Index units = std::min(want_units, std::min(p, q));
  const bool intersections_possible = units == want_units;

  // Coupling M : Ω0 -> M0 with `units` singular values 1, the rest strict.
  {
    const Index s = std::min(p, q);
    const Matrix u = gen::isometry(rng, q, s);
    const Matrix v = gen::isometry(rng, p, s);
    Vector sv(s);
    for (Index i = 0; i < s; ++i) sv(i) = i < units ? 1.0 : rng.uniform(0.2, 0.8);
    out.coupling = u * sv.asDiagonal() * v.adjoint();
  }
  const Matrix& m = out.coupling;
  const Matrix dm_adj = defect(Matrix(m.adjoint()), tol);  // on M0
  const Matrix rd = defect_range_basis(Matrix(m.adjoint()), tol);

  // L0 ⊂ M0 of dimension floor(q/2), rejection-sampled for trivial meets.
  bool meets = false;
  for (int attempt = 0; attempt < 64; ++attempt) {
    out.l0_basis = gen::isometry(rng, q, l);
    const Matrix l0_perp = orthogonal_complement(out.l0_basis);
    const bool a_ok = l == 0 || rd.cols() == 0 || range_meet_trivial(out.l0_basis, rd, tol);
    const bool b_ok = l0_perp.cols() == 0 || rd.cols() == 0 || range_meet_trivial(l0_perp, rd, tol);
    if (a_ok && b_ok) {
      meets = true;
      break;
    }
    if (!intersections_possible) break;
  }
  out.properties.intersections_trivial = meets && intersections_possible;
  out.j0 = 2.0 * out.l0_basis * out.l0_basis.adjoint() - Matrix::Identity(q, q);

  const Matrix da = defect(a, tol);
  out.x11 = hermitian_part(block_matrix(a, da * m.adjoint(), m * da, -m * a * m.adjoint() + dm_adj * out.j0 * dm_adj));

  // Step 2: L* is an isometry onto the part of Ω0 that ran D_{X11} sees.
  const Matrix dx = defect(out.x11, tol);
  const Matrix qdx = defect_range_basis(out.x11, tol);
  Matrix omega = Matrix::Zero(k, p);
  omega.topRows(p) = Matrix::Identity(p, p);
  out.exit_isometry = qdx.cols() == 0 ? Matrix(k, 0) : range_basis(Matrix(qdx * (qdx.adjoint() * omega)), tol);
  const Matrix& ls = out.exit_isometry;
  const Index h = ls.cols();
  out.x = ExitParameter::selfadjoint(out.x11, dx * ls, hermitian_part(Matrix(-ls.adjoint() * out.x11 * ls)));
  out.z = z_pair(out.x, tol);

  SpecialProperties& pr = out.properties;
  const Matrix xx = out.x.assembled();
  const ZPair sh = exit_shortenings(xx, h, tol);
  const double scale = std::max(1.0, xx.norm());
  pr.shorted_vanish = h == 0 || (sh.z0.norm() <= std::sqrt(tol.eq_tol) * scale &&
                                 sh.z1.norm() <= std::sqrt(tol.eq_tol) * scale);
  pr.strict_x22 = h == 0 || op_norm(out.x.x22()) < 1.0 - tol.eq_tol;
  const Index rank12 = numerical_rank(out.x.x12(), tol);
  pr.ker_x12_trivial = rank12 == h;
  pr.ker_x12_adj_trivial = rank12 == k;
  const Matrix ik = Matrix::Identity(k, k);
  pr.z0_not_minus_identity = op_norm(Matrix(out.z.z0 + ik)) > std::sqrt(tol.eq_tol);
  pr.z1_not_identity = op_norm(Matrix(ik - out.z.z1)) > std::sqrt(tol.eq_tol);
  pr.gap_injective = numerical_rank(Matrix(out.z.z1 - out.z.z0), tol) == k;
  pr.gap_meets_trivially = gap_meets_trivially(out.z, tol);

  if (request.nontrivial_pair && !(pr.z0_not_minus_identity && pr.z1_not_identity)) {
    throw Error(Errc::InfeasibleInFiniteDim,
                "construct_special_x: " + dims_text(p, q) + "; the constructed pair has Z0 = -I or Z1 = I");
  }
  return out;
}

ExitParameter construct_from_z_pair(const ZPair& z, std::uint64_t seed, const Tolerance& tol) {
  check_pair(z, tol);
  const Index k = z.z0.rows();
  const Index r = numerical_rank(Matrix(z.z1 - z.z0), tol);
  if (r != k) {
    throw Error(Errc::InfeasibleInFiniteDim, "construct_from_z_pair: ker(Z1 - Z0) has dimension " +
                                                 std::to_string(k - r));
  }
  if (!gap_meets_trivially(z, tol)) {
    throw Error(Errc::InfeasibleInFiniteDim,
                "construct_from_z_pair: ran(Z1 - Z0)^{1/2} = K meets ran(I + Z0)^{1/2} or ran(I - Z1)^{1/2}");
  }
  gen::Rng rng(seed);
  const Matrix v = gen::unitary(rng, k);
  return x_from_z_pair(z, Matrix::Zero(k, k), v, tol);
}

}  // namespace krein
