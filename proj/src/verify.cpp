#include "krein/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "krein/random.hpp"
#include "krein/realization.hpp"
#include "krein/shorted.hpp"

namespace krein::verify {

namespace {

constexpr double kFlagTol = 0.5;  // pass/fail identities record 0 or 1
// Shortenings are discontinuous in the operator; a vanishing one comes out
// of the Schur complement at about sqrt(eps) times the conditioning.
constexpr double kVanish = 1e-6;

struct IdentitySpec {
  std::string name;
  double tolerance;
  bool fixed = false;    // not affected by --tol
  bool is_flag = false;  // pass/fail; kept out of max_deviation
};

IdentitySpec numeric(std::string name, double tol) { return {std::move(name), tol}; }
IdentitySpec flag(std::string name) { return {std::move(name), kFlagTol, true, true}; }
IdentitySpec threshold(std::string name, double tol) { return {std::move(name), tol, true}; }

class Recorder {
 public:
  void record(const std::string& identity, double deviation) { values_.emplace_back(identity, deviation); }
  void record_flag(const std::string& identity, bool ok) { record(identity, ok ? 0.0 : 1.0); }
  const std::vector<std::pair<std::string, double>>& values() const { return values_; }

 private:
  std::vector<std::pair<std::string, double>> values_;
};

using Body = std::function<void(gen::Rng&, Index, Recorder&)>;

struct Suite {
  std::string name;
  std::string description;
  std::vector<IdentitySpec> identities;
  Body body;
};

const Tolerance kTol{};

Matrix identity(Index n) { return Matrix::Identity(n, n); }

double dev(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

double min_eig(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return hermitian_eigenvalues(a)(0);
}

// max(0, -λ_min(b - a)): zero when a <= b.
double order_defect(const Matrix& a, const Matrix& b) { return std::max(0.0, -min_eig(Matrix(b - a))); }

cplx in_disk(gen::Rng& rng, double radius) {
  return std::polar(radius * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * M_PI));
}

// Off the cut (-inf, -1] ∪ [1, inf): a point with |Im z| >= 0.2.
cplx off_cut(gen::Rng& rng) {
  const double y = rng.uniform(0.2, 2.0);
  return {rng.uniform(-3.0, 3.0), rng.uniform() < 0.5 ? y : -y};
}

// Off [-1, 1]: complex points near and far from the axis, and real ones.
cplx off_interval(gen::Rng& rng, bool real) {
  if (real) {
    const double x = rng.uniform(1.1, 5.0);
    return {rng.uniform() < 0.5 ? x : -x, 0.0};
  }
  const double y = rng.uniform(0.05, 2.0);
  return {rng.uniform(-3.0, 3.0), rng.uniform() < 0.5 ? y : -y};
}

// H0 of dimension < n, so N is nontrivial; K0 gets unit singular values
// in about a third of the instances when allowed.
HermitianContractionData random_data(gen::Rng& rng, Index n, bool allow_units) {
  const Index m = rng.integer(0, n - 1);
  Index unit = 0;
  if (allow_units && rng.uniform() < 0.3) unit = rng.integer(0, std::min(m, n - m));
  return gen::hermitian_data(rng, n, m, unit);
}

ExitParameter random_exit(gen::Rng& rng, Index k, Index h, bool selfadjoint) {
  const Matrix x = selfadjoint ? gen::hermitian_contraction(rng, k + h) : gen::contraction(rng, k + h, k + h);
  return ExitParameter::split(x, k);
}

// X = [X11, D L*; L D, -L X11 L*], the form that makes both exit
// shortenings vanish while ||X22|| < 1.
ExitParameter parr_exit(gen::Rng& rng, Index k, Index h) {
  const Matrix x11 = gen::hermitian_contraction(rng, k, rng.uniform(0.3, gen::kMaxNorm));
  const Matrix ls = gen::isometry(rng, k, h);
  return ExitParameter::selfadjoint(x11, defect(x11) * ls, hermitian_part(Matrix(-ls.adjoint() * x11 * ls)));
}

// Y with ||Y|| <= 0.7 and t in [0.2, 0.8]: X0 = tY - (1 - t)I <= X1 = tY + (1 - t)I, neither extreme.
std::pair<Matrix, Matrix> inner_pair(gen::Rng& rng, Index k) {
  const Matrix y = gen::hermitian_contraction(rng, k, 0.7);
  const double t = rng.uniform(0.2, 0.8);
  return {t * y - (1.0 - t) * identity(k), t * y + (1.0 - t) * identity(k)};
}

// ---------------------------------------------------------------------------

void schur_frobenius_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const Index io = rng.integer(1, n);
  const Matrix u = gen::contraction(rng, io + n, io + n);
  const PassiveSystem sys = PassiveSystem::from_matrix(u, io);
  for (int i = 0; i < 5; ++i) {
    const cplx lambda = std::polar(rng.uniform(1.5, 3.0), rng.uniform(0.0, 2.0 * M_PI));
    const Matrix direct = (u - lambda * identity(io + n)).inverse();
    rec.record("block_resolvent", dev(schur_frobenius(sys, lambda, kTol).assembled(), direct));
  }
}

void comrescontr_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = random_data(rng, n, true);
  const bool selfadjoint = rng.uniform() < 0.5;
  const ExitParameter x = random_exit(rng, data.param_dim(), rng.integer(1, 3), selfadjoint);
  const Matrix bt = exit_extension(data, x, kTol);
  const Extremes ends = extremes(data);
  std::vector<cplx> zs;
  for (int i = 0; i < 3; ++i) zs.push_back(in_disk(rng, 0.95));
  for (int i = 0; i < 2; ++i) zs.emplace_back(rng.uniform(-0.99, 0.99), 0.0);
  for (const cplx z : zs) {
    const Matrix bh = b_hat(data, x, z, kTol);
    const Matrix rhs = (z * bh - identity(n)).inverse();
    rec.record("genres", dev(compressed_resolvent(bt, n, Side::H, z, kTol), rhs));
    if (selfadjoint && z.imag() == 0.0) {
      rec.record("real_axis_interval", std::max(order_defect(ends.b_mu, bh), order_defect(bh, ends.b_m)));
    }
  }
}

void compscreas_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = random_data(rng, n, true);
  const Index h = rng.integer(1, 3);
  const ExitParameter x = random_exit(rng, data.param_dim(), h, true);
  const Matrix bt = exit_extension(data, x, kTol);
  const PassiveSystem ts = theta_system(data, x, kTol);
  std::vector<cplx> zs;
  for (int i = 0; i < 2; ++i) zs.push_back(in_disk(rng, 0.95));
  for (int i = 0; i < 2; ++i) zs.emplace_back(rng.uniform(-0.99, 0.99), 0.0);
  for (int i = 0; i < 2; ++i) zs.push_back(off_cut(rng));
  for (const cplx z : zs) {
    const Matrix th = transfer(ts, z, kTol);
    rec.record("exit_resolvent", dev(compressed_resolvent(bt, n, Side::Exit, z, kTol), (z * th - identity(h)).inverse()));
    rec.record("herglotz_symmetry", dev(transfer(ts, std::conj(z), kTol), th.adjoint()));
    if (z.imag() != 0.0) {
      const Matrix up = z.imag() > 0.0 ? th : Matrix(th.adjoint());
      const Matrix im = (up - up.adjoint()) / cplx(0.0, 2.0);
      rec.record("herglotz_imaginary_part", std::max(0.0, -min_eig(im)));
    }
  }
}

void shorts11_suite(gen::Rng& rng, Index n, Recorder& rec) {
  // D_{K0*} = N, so that N sits in H ⊕ 𝓗 as the K-part of the exit.
  const HermitianContractionData data = gen::hermitian_data(rng, n, rng.integer(0, n - 1));
  const Index h = rng.integer(1, 3);
  const ExitParameter x = random_exit(rng, data.param_dim(), h, true);
  const Matrix bt = exit_extension(data, x, kTol);
  const Matrix id = identity(n + h);
  const Subspace n_big(vstack(data.n_space().basis(), Matrix::Zero(h, data.n_dim())));
  const Extremes ends = extremes(data);
  const InducedPair induced = induced_pair(data, x, kTol);
  const Matrix lower = shorted(Matrix(id + bt), n_big, kTol).value.topLeftCorner(n, n);
  const Matrix upper = shorted(Matrix(id - bt), n_big, kTol).value.topLeftCorner(n, n);
  rec.record("lower_induced", dev(ends.b_mu + lower, induced.b0));
  rec.record("upper_induced", dev(ends.b_m - upper, induced.b1));
}

void equshorts_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = random_data(rng, n, true);
  const Index k = data.param_dim();
  const bool parr = k > 0 && rng.uniform() < 0.5;
  const Index h = parr ? rng.integer(1, k) : rng.integer(1, 3);
  const ExitParameter x = parr ? parr_exit(rng, k, h) : random_exit(rng, k, h, true);
  const Matrix bt = exit_extension(data, x, kTol);
  const ZPair big = exit_shortenings(bt, h, kTol);
  const ZPair small = exit_shortenings(x.assembled(), h, kTol);
  rec.record("plus_shortening", dev(big.z0, small.z0));
  rec.record("minus_shortening", dev(big.z1, small.z1));
  const double cut = kVanish;
  const bool same = (big.z0.norm() <= cut) == (small.z0.norm() <= cut) && (big.z1.norm() <= cut) == (small.z1.norm() <= cut);
  rec.record_flag("vanishing_equivalence", same);
  if (parr) rec.record_flag("parr_vanishing", small.z0.norm() <= cut && small.z1.norm() <= cut);
  // X12 = U D_{X22} with U U* = (Z1 - Z0)/2.
  const Matrix u = x.x12() * pinv(defect(x.x22(), kTol), kTol);
  const ZPair z = z_pair(x, kTol);
  rec.record("gap_factor", dev(u * u.adjoint(), (z.z1 - z.z0) / 2.0));
}

void rn1_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = random_data(rng, n, true);
  const Index k = data.param_dim();
  const Matrix xp = gen::hermitian_contraction(rng, k);
  const Matrix b = qsc_extension(data, xp, kTol).matrix;
  const Extremes ends = extremes(data);
  const Matrix id = identity(n);
  rec.record("lower_distance", dev(shorted(Matrix(id + b), data.n_space(), kTol).value, b - ends.b_mu));
  rec.record("upper_distance", dev(shorted(Matrix(id - b), data.n_space(), kTol).value, ends.b_m - b));
  const Matrix y = interval_parameter(data, xp, kTol);
  rec.record("interval_roundtrip", dev(interval_extension(ends.b_mu, ends.b_m, y, kTol).matrix, b));
  const auto [x0, x1] = inner_pair(rng, k);
  rec.record("order", order_defect(data.assemble(x0), data.assemble(x1)));
}

void limits_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = random_data(rng, n, true);
  const Index k = data.param_dim();
  const Index h = rng.integer(1, 3);
  Matrix xm = gen::hermitian_contraction(rng, k + h);
  const double x22 = op_norm(Matrix(xm.bottomRightCorner(h, h)));
  if (x22 > 0.95) xm *= 0.95 / x22;
  const ExitParameter x = ExitParameter::split(xm, k);
  const PhiLimits lim = phi_limits(x, kTol);
  rec.record("extrapolated_limits", lim.deviation);
  rec.record("endpoint_values", std::max(dev(phi_x(x, -1.0, kTol), lim.exact.z0), dev(phi_x(x, 1.0, kTol), lim.exact.z1)));
  const InducedPair induced = induced_pair(data, x, kTol);
  rec.record("induced_endpoints",
             std::max(dev(b_hat(data, x, -1.0, kTol), induced.b0), dev(b_hat(data, x, 1.0, kTol), induced.b1)));
}

void q_algebra_suite(gen::Rng& rng, Index n, Recorder& rec) {
  // The probes stop at the eq_tol margin around [-1, 1], which resolves a
  // limit only when the rest of the spectrum keeps its distance from ±1;
  // max norm 0.99 rather than 1 - 1e-3 provides that.
  const HermitianContractionData data = gen::hermitian_data(rng, n, rng.integer(0, n - 1), 0, 0.99);
  const Index nn = data.n_dim();
  const Extremes ends = extremes(data);
  const auto [x0, x1] = inner_pair(rng, data.param_dim());
  const Matrix b0 = data.assemble(x0);
  const Matrix b1 = data.assemble(x1);
  const Matrix v = gen::unitary(rng, nn);
  const Subspace& ns = data.n_space();
  for (int i = 0; i < 20; ++i) {
    const cplx xi = off_interval(rng, i % 2 == 1);
    const QPair qe = q_pair(ends.b_mu, ends.b_m, ns, xi, kTol);
    rec.record("extreme_product", dev(qe.q0 * qe.q1, -identity(nn)));
    const QPair qg = q_pair(b0, b1, ns, xi, kTol);
    rec.record("pair_product", dev(qg.q0 * qg.q1, -identity(nn)));
    const QPair qd = q_pair_dressed(b0, b1, ns, v, xi, kTol);
    rec.record("dressed_product", dev(qd.q0 * qd.q1, -identity(nn)));
  }
  const auto q0_of = [&](const Matrix& lo, const Matrix& hi) {
    return [&, lo, hi](cplx xi) { return q_pair(lo, hi, ns, xi, kTol).q0; };
  };
  const auto q1_of = [&](const Matrix& lo, const Matrix& hi) {
    return [&, lo, hi](cplx xi) { return q_pair(lo, hi, ns, xi, kTol).q1; };
  };
  rec.record_flag("extreme_in_s_mu", class_probe(q0_of(ends.b_mu, ends.b_m), QClass::S_mu).passes());
  rec.record_flag("extreme_in_s_m", class_probe(q1_of(ends.b_mu, ends.b_m), QClass::S_M).passes());
  rec.record_flag("inner_fails_s_mu_2",
                  class_probe(q0_of(b0, b1), QClass::S_mu).conditions[1].verdict == Verdict::Fail);
  rec.record_flag("inner_fails_s_m_3", class_probe(q1_of(b0, b1), QClass::S_M).conditions[2].verdict == Verdict::Fail);
}

void novaya_suite(gen::Rng& rng, Index n, Recorder& rec) {
  ExitParameter x;
  if (rng.uniform() < 0.5) {
    x = parr_exit(rng, n, rng.integer(1, n));
  } else {
    const Index p = rng.integer(1, n);
    const Index q = rng.integer(0, n);
    const Matrix a = gen::hermitian_contraction(rng, p, rng.uniform(0.0, gen::kMaxNorm));
    x = construct_special_x(p, q, a, rng.split(1).seed(), {}, kTol).x;
  }
  const ZPair sh = exit_shortenings(x.assembled(), x.h_dim(), kTol);
  const bool pre = sh.z0.norm() <= kVanish && sh.z1.norm() <= kVanish && op_norm(x.x22()) < 1.0 - 1e-8;
  rec.record_flag("hypotheses", pre);
  if (pre) rec.record("gap_cosine", max_gap_cosine(z_pair(x, kTol), kTol));
}

bool throws_infeasible(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code() == Errc::InfeasibleInFiniteDim;
  }
  return false;
}

void construc_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const Index p = rng.integer(1, n);
  const Index q = rng.integer(1, n);
  const Matrix a = gen::hermitian_contraction(rng, p, 0.9);
  const std::uint64_t seed = rng.split(1).seed();

  std::string first, second;
  const bool t1 = throws_infeasible([&] { construct_special_x(p, q, a, seed, SpecialRequest::full(), kTol); }, &first);
  const bool t2 = throws_infeasible([&] { construct_special_x(p, q, a, seed + 1, SpecialRequest::full(), kTol); }, &second);
  rec.record_flag("full_request_infeasible", t1 && t2 && first == second && first.find("dim") != std::string::npos);

  const SpecialConstruction sc = construct_special_x(p, q, a, seed, {}, kTol);
  const SpecialProperties& pr = sc.properties;
  rec.record_flag("default_properties", pr.shorted_vanish && pr.strict_x22 && pr.ker_x12_trivial && pr.gap_meets_trivially);
  const ZPair sh = exit_shortenings(sc.x.assembled(), sc.x.h_dim(), kTol);
  rec.record("default_shortenings", std::max(sh.z0.norm(), sh.z1.norm()));

  // Rebuilding X from (Z0, Z1, X22) returns the same pair.
  try {
    const Matrix v = default_isometry(sc.z, sc.x.x22(), kTol);
    const ZPair back = z_pair(x_from_z_pair(sc.z, sc.x.x22(), v, kTol), kTol);
    rec.record("pair_roundtrip", std::max(dev(back.z0, sc.z.z0), dev(back.z1, sc.z.z1)));
  } catch (const Error& e) {
    if (e.code() != Errc::IsometryInfeasible) throw;
  }

  // Second step: only Z0 = -I, Z1 = I is admissible in finite dimensions.
  const Index k = p + q;
  const ZPair ends{-identity(k), identity(k)};
  const ExitParameter xe = construct_from_z_pair(ends, seed, kTol);
  const ZPair she = exit_shortenings(xe.assembled(), xe.h_dim(), kTol);
  rec.record("extreme_pair_shortenings", std::max(she.z0.norm(), she.z1.norm()));
  const ZPair ze = z_pair(xe, kTol);
  rec.record("extreme_pair_roundtrip", std::max(dev(ze.z0, ends.z0), dev(ze.z1, ends.z1)));
  const auto [z0, z1] = inner_pair(rng, k);
  rec.record_flag("inner_pair_rejected", throws_infeasible([&] { construct_from_z_pair({z0, z1}, seed, kTol); }));
}

void cayley_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const LinearRelation s(n, Subspace(gen::isometry(rng, 2 * n, rng.integer(0, 2 * n))));
  rec.record("involution", relation_distance(cayley(cayley(s)), s));

  // Nonnegative selfadjoint with an operator part on the first r columns
  // of W (eigenvalues >= 0, some zero) and multivalued part on the rest.
  const Matrix w = gen::unitary(rng, n);
  const Index r = rng.integer(0, n);
  Vector lam(r);
  for (Index i = 0; i < r; ++i) lam(i) = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 5.0);
  Matrix args = Matrix::Zero(n, n);
  Matrix values(n, n);
  args.leftCols(r) = w.leftCols(r);
  values.leftCols(r) = w.leftCols(r) * lam.asDiagonal();
  values.rightCols(n - r) = w.rightCols(n - r);
  const LinearRelation nonneg = LinearRelation::from_pairs(args, values, kTol);
  const std::optional<Matrix> t = cayley(nonneg).as_operator(kTol);
  rec.record_flag("nonnegative_to_contraction",
                  is_nonnegative_selfadjoint(nonneg, kTol) && t && is_hermitian(*t, kTol.eq_tol) &&
                      is_contraction(*t, kTol.eq_tol));
  if (t) {
    Vector ev = -Vector::Ones(n);
    for (Index i = 0; i < r; ++i) ev(i) = (1.0 - lam(i)) / (1.0 + lam(i));
    rec.record("nonnegative_image", dev(*t, w * ev.asDiagonal() * w.adjoint()));
  }

  // Selfadjoint contraction with eigenvalues ±1 mixed in.
  const Matrix u = gen::unitary(rng, n);
  Vector ev(n);
  for (Index i = 0; i < n; ++i) {
    const double c = rng.uniform();
    ev(i) = c < 0.15 ? -1.0 : c < 0.3 ? 1.0 : rng.uniform(-1.0, 1.0);
  }
  const Matrix tc = u * ev.asDiagonal() * u.adjoint();
  const LinearRelation g = LinearRelation::graph_of(tc, kTol);
  const LinearRelation image = cayley(g);
  rec.record_flag("contraction_to_nonnegative", is_nonnegative_selfadjoint(image, kTol));
  rec.record("contraction_roundtrip", relation_distance(cayley(image), g));
}

void clfrm_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const double alpha = rng.uniform(0.1, 1.3);
  const Matrix t = gen::sectorial_contraction(rng, n, alpha, rng.integer(0, n - 1));
  const Matrix id = identity(n);
  const SectorialDecomposition dec = sectorial_decomposition(t, kTol);
  const Vector h = gen::gaussian_vector(rng, n);
  const Vector g = gen::gaussian_vector(rng, n);
  const Vector u = (id + t) * h;
  const Vector v = (id + t) * g;
  rec.record("domain_two_route", std::abs(clfrm_value(dec, u, v, kTol) - v.dot((id - t) * h)));

  // The values (M u_δ, u_δ) along u_δ = (I + T)(f + δ r), extrapolated to δ = 0.
  for (int i = 0; i < 2; ++i) {
    const Vector f = gen::gaussian_vector(rng, n);
    const Vector dir = gen::gaussian_vector(rng, n);
    std::vector<double> ds;
    std::vector<Matrix> vals;
    for (const double d : {1e-1, 5e-2, 2.5e-2}) {
      const Vector x = f + d * dir;
      const Vector ud = (id + t) * x;
      ds.push_back(d);
      vals.push_back(Matrix::Constant(1, 1, ud.dot((id - t) * x)));
    }
    const Vector u0 = (id + t) * f;
    rec.record("boundary_limit", std::abs(neville_at_zero(ds, vals)(0, 0) - clfrm_value(dec, u0, u0, kTol)));
  }
}

void realization_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = gen::hermitian_data(rng, n, rng.integer(0, n - 1));
  const Index k = data.param_dim();
  const ExitParameter x = random_exit(rng, k, k + rng.integer(0, 2), true);
  const PassiveSystem ts = theta_system(data, x, kTol);
  const Matrix bp = data.b_operator();

  const RealizationResult exit_side = recover_hermitian(ts, RecoverSide::ExitSide, kTol);
  rec.record("exit_side_domain", subspace_distance(exit_side.recovered_dom, data.dom()));
  rec.record("exit_side_operator", dev(exit_side.recovered_b * exit_side.recovered_dom.basis().adjoint(), bp));
  const PassiveSystem inner{ts.a, ts.b, ts.c, ts.d};
  const RealizationResult inner_side = recover_hermitian(inner, RecoverSide::InnerSide, kTol);
  rec.record("inner_side_domain", subspace_distance(inner_side.recovered_dom, data.dom()));
  rec.record("inner_side_operator", dev(inner_side.recovered_b * inner_side.recovered_dom.basis().adjoint(), bp));

  // Direct sum with a decoupled state block, then minimize.
  const Index pad = rng.integer(1, 3);
  const Index s = ts.state_dim();
  Matrix a = Matrix::Zero(s + pad, s + pad);
  a.topLeftCorner(s, s) = ts.a;
  a.bottomRightCorner(pad, pad) = gen::hermitian_contraction(rng, pad);
  Matrix c = Matrix::Zero(ts.c.rows(), s + pad);
  c.leftCols(s) = ts.c;
  const PassiveSystem padded{ts.d, c, vstack(ts.b, Matrix::Zero(pad, ts.b.cols())), a};
  const Index reachable = krylov_basis(ts.a, ts.b, kTol).cols();
  const PassiveSystem state_min = minimal_restriction(padded, MinimalMode::StateMinimal, kTol);
  const PassiveSystem input_min = minimal_restriction(padded, MinimalMode::InputSide, kTol);
  rec.record_flag("padding_removed", state_min.state_dim() == reachable && input_min.state_dim() <= s);
  double worst_state = 0.0, worst_input = 0.0;
  for (int i = 0; i < 30; ++i) {
    const cplx z = in_disk(rng, 0.95);
    const Matrix th = transfer(padded, z, kTol);
    worst_state = std::max(worst_state, dev(transfer(state_min, z, kTol), th));
    worst_input = std::max(worst_input, dev(transfer(input_min, z, kTol), th));
  }
  rec.record("transfer_state_minimal", worst_state);
  rec.record("transfer_input_side", worst_input);
  const std::vector<Matrix> full = moments(padded, 2 * padded.state_dim() + 1);
  const std::vector<Matrix> reduced = moments(state_min, 2 * padded.state_dim() + 1);
  double worst = 0.0;
  for (std::size_t j = 0; j < full.size(); ++j) worst = std::max(worst, dev(full[j], reduced[j]));
  rec.record("moments", worst);
}

void repweyl11_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = random_data(rng, n, true);
  const Index k = data.param_dim();
  ExitParameter x = random_exit(rng, k, rng.integer(1, 3), true);
  if (rng.uniform() < 0.5) {
    // An exit direction where Θ is -1 identically.
    const Index h = x.h_dim() + 1;
    Matrix xm = Matrix::Zero(k + h, k + h);
    xm.topLeftCorner(k + h - 1, k + h - 1) = x.assembled();
    xm(k + h - 1, k + h - 1) = -1.0;
    x = ExitParameter::split(xm, k);
  }
  const PassiveSystem ts = theta_system(data, x, kTol);
  const Matrix dom = form_domain(ts, kTol);
  const Vector hv = dom * gen::gaussian_vector(rng, dom.cols());
  const Vector gv = dom * gen::gaussian_vector(rng, dom.cols());
  for (const cplx lambda : {cplx(-1.0, 0.0), cplx(-0.5, 0.0), cplx(-2.0, 1.0), cplx(-1.0, 3.0)}) {
    const Matrix th = transfer(ts, lambda_to_w(lambda), kTol);
    const SectorialDecomposition dec = sectorial_decomposition(th, kTol);
    rec.record("form_value", std::abs(n_form_value(data, x, lambda, hv, gv, kTol) - clfrm_value(dec, hv, gv, kTol)));
    rec.record("form_domain", basis_distance(dec.form_basis, range_basis(dom, kTol)));
  }
}

void krein_ovcharenko_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const HermitianContractionData data = gen::hermitian_data(rng, n, rng.integer(0, n - 1));
  const Index nn = data.n_dim();
  const Extremes ends = extremes(data);
  const Matrix c = ends.b_m - ends.b_mu;
  const Subspace& ns = data.n_space();
  Matrix kr = gen::psd(rng, nn, nn);
  kr /= op_norm(kr) * rng.uniform(1.0, 2.0);
  const std::vector<std::pair<std::string, Matrix>> ks{
      {"k_zero", Matrix::Zero(nn, nn)}, {"k_half", identity(nn) / 2.0}, {"k_identity", identity(nn)}, {"k_random", kr}};
  for (const auto& [name, k] : ks) {
    const cplx xi = off_interval(rng, rng.uniform() < 0.3);
    const Matrix direct = (canonical_extension(ends.b_mu, c, ns, k, kTol) - xi * identity(n)).inverse();
    rec.record(name, dev(krein_ovcharenko(ends.b_mu, c, ns, k, xi, kTol), direct));
  }
}

void calsys_suite(gen::Rng& rng, Index n, Recorder& rec) {
  const double alpha = rng.uniform(0.1, 1.2);
  const Index io = rng.integer(1, n);
  const Matrix u = gen::sectorial_contraction(rng, io + n, alpha);
  const PassiveSystem sys = PassiveSystem::from_matrix(u, io);
  const cplx i1(0.0, 1.0);
  double worst = 0.0;
  for (const double beta : {alpha, (alpha + M_PI / 2.0) / 2.0}) {
    const double sb = std::sin(beta), cb = std::cos(beta);
    for (int j = 0; j < 4; ++j) {
      const double sign = j % 2 == 0 ? 1.0 : -1.0;
      // |z sin β ± i cos β| < 1.
      const cplx z = (in_disk(rng, 0.98) - sign * i1 * cb) / sb;
      const Matrix th = transfer(sys, z, kTol);
      worst = std::max(worst, op_norm(Matrix(th * sb + sign * i1 * cb * identity(io))) - 1.0);
    }
  }
  rec.record("region_bound", std::max(0.0, worst));
}

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites{
      {"schur_frobenius", "block resolvent formula vs direct inversion of U - λ",
       {numeric("block_resolvent", 1e-9)}, schur_frobenius_suite},
      {"comrescontr", "compressed resolvent of an exit extension on H",
       {numeric("genres", 1e-9), numeric("real_axis_interval", 1e-9)}, comrescontr_suite},
      {"compscreas", "exit-side compressed resolvent and Herglotz properties of Θ",
       {numeric("exit_resolvent", 1e-9), numeric("herglotz_symmetry", 1e-9), numeric("herglotz_imaginary_part", 1e-9)},
       compscreas_suite},
      {"shorts11", "induced pair through shortenings of I ± B̃ to N",
       {numeric("lower_induced", 1e-8), numeric("upper_induced", 1e-8)}, shorts11_suite},
      {"equshorts", "shortenings of I ± B̃ and I ± X to the exit space agree",
       {numeric("plus_shortening", 1e-8), numeric("minus_shortening", 1e-8), flag("vanishing_equivalence"),
        flag("parr_vanishing"), numeric("gap_factor", 1e-8)},
       equshorts_suite},
      {"rn1", "distances to the extremes, interval parameter, order",
       {numeric("lower_distance", 1e-8), numeric("upper_distance", 1e-8), numeric("interval_roundtrip", 1e-8),
        numeric("order", 1e-8)},
       rn1_suite},
      {"limits", "limits of Φ_X and B̂_X at ±1",
       {numeric("extrapolated_limits", 1e-5), numeric("endpoint_values", 1e-8), numeric("induced_endpoints", 1e-8)},
       limits_suite},
      {"q_algebra", "Q-pair product identity and class probes",
       {numeric("extreme_product", 1e-8), numeric("pair_product", 1e-8), numeric("dressed_product", 1e-8),
        flag("extreme_in_s_mu"), flag("extreme_in_s_m"), flag("inner_fails_s_mu_2"), flag("inner_fails_s_m_3")},
       q_algebra_suite},
      {"novaya", "trivial gap intersections when both exit shortenings vanish",
       {flag("hypotheses"), threshold("gap_cosine", 1.0 - 1e-8)}, novaya_suite},
      {"construc_finite_dim", "two-step construction and its finite-dimensional infeasibility",
       {flag("full_request_infeasible"), flag("default_properties"), numeric("default_shortenings", kVanish),
        numeric("pair_roundtrip", 1e-8), numeric("extreme_pair_shortenings", 1e-8),
        numeric("extreme_pair_roundtrip", 1e-8), flag("inner_pair_rejected")},
       construc_suite},
      {"cayley", "Cayley involution and the nonnegative/contraction correspondence",
       {numeric("involution", 1e-8), flag("nonnegative_to_contraction"), numeric("nonnegative_image", 1e-8),
        flag("contraction_to_nonnegative"), numeric("contraction_roundtrip", 1e-8)},
       cayley_suite},
      {"clfrm", "closed sectorial form: two routes and boundary limits",
       {numeric("domain_two_route", 1e-8), numeric("boundary_limit", 1e-8)}, clfrm_suite},
      {"realization", "recovery of (H0, B) from Θ and minimal restriction",
       {numeric("exit_side_domain", 1e-8), numeric("exit_side_operator", 1e-8), numeric("inner_side_domain", 1e-8),
        numeric("inner_side_operator", 1e-8), flag("padding_removed"), numeric("transfer_state_minimal", 1e-9),
        numeric("transfer_input_side", 1e-9), numeric("moments", 1e-9)},
       realization_suite},
      {"repweyl11", "form of N(λ) through the induced pair vs the closed form of Θ",
       {numeric("form_value", 1e-7), numeric("form_domain", 1e-7)}, repweyl11_suite},
      {"krein_ovcharenko", "constant-K resolvent formula vs canonical extension",
       {numeric("k_zero", 1e-8), numeric("k_half", 1e-8), numeric("k_identity", 1e-8), numeric("k_random", 1e-8)},
       krein_ovcharenko_suite},
      {"calsys", "Θ maps Π±(β) into the class bound for U in C(α), β >= α",
       {numeric("region_bound", 1e-8)}, calsys_suite},
  };
  return suites;
}

const Suite& find_suite(const std::string& name) {
  for (const Suite& s : registry()) {
    if (s.name == name) return s;
  }
  throw Error(Errc::UnknownSuite, "unknown suite '" + name + "'");
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const Suite& s : registry()) out.push_back(s.name);
  return out;
}

std::string suite_description(const std::string& name) { return find_suite(name).description; }

std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  const auto number = [&](const std::string& s) -> Index {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(Errc::BadDims, "dims: cannot parse '" + s + "'");
    if (v < 1) throw Error(Errc::BadDims, "dims must be >= 1");
    return static_cast<Index>(v);
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item));
      continue;
    }
    const Index lo = number(item.substr(0, dots));
    const Index hi = number(item.substr(dots + 2));
    if (hi < lo) throw Error(Errc::BadDims, "dims: empty range '" + item + "'");
    for (Index d = lo; d <= hi; ++d) out.push_back(d);
  }
  if (out.empty()) throw Error(Errc::BadDims, "dims: empty list");
  return out;
}

Report run(const Options& options) {
  const Suite& suite = find_suite(options.suite);
  if (options.dims.empty()) throw Error(Errc::BadDims, "verify: no dimensions given");
  for (const Index d : options.dims) {
    if (d < 1) throw Error(Errc::BadDims, "verify: dims must be >= 1");
  }
  if (options.count < 0) throw Error(Errc::InvalidInput, "verify: negative count");
  if (options.tol && !(*options.tol > 0.0)) throw Error(Errc::InvalidInput, "verify: tolerance must be positive");

  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.suite = suite.name;
  report.instances = options.count;
  report.seed = options.seed;
  report.dims = options.dims;
  std::map<std::string, std::size_t> slot;
  for (const IdentitySpec& spec : suite.identities) {
    slot[spec.name] = report.identities.size();
    report.identities.push_back({spec.name, spec.fixed || !options.tol ? spec.tolerance : *options.tol, 0.0, 0});
  }

  const gen::Rng root(options.seed);
  for (Index i = 0; i < options.count; ++i) {
    gen::Rng rng = root.split(static_cast<std::uint64_t>(i));
    const std::uint64_t instance_seed = rng.seed();
    const Index dim = options.dims[static_cast<std::size_t>(i) % options.dims.size()];
    Recorder rec;
    std::string error;
    try {
      suite.body(rng, dim, rec);
    } catch (const Error& e) {
      error = e.what();
    } catch (const std::exception& e) {
      error = std::string("error: ") + e.what();
    }
    for (const auto& [name, deviation] : rec.values()) {
      const auto it = slot.find(name);
      if (it == slot.end()) throw std::logic_error("suite " + suite.name + " records undeclared identity " + name);
      IdentityResult& r = report.identities[it->second];
      r.checks += 1;
      // NaN counts as a failure with the deviation reported as 1.
      const double d = std::isnan(deviation) ? 1.0 : deviation;
      r.max_deviation = std::max(r.max_deviation, d);
      if (std::isnan(deviation) || d > r.tolerance) report.failures.push_back({instance_seed, i, name, d, ""});
    }
    if (!error.empty()) report.failures.push_back({instance_seed, i, "exception", 1.0, error});
  }

  // Pass/fail identities stay out of max_deviation; it summarizes the
  // numeric ones.
  for (std::size_t j = 0; j < suite.identities.size(); ++j) {
    if (!suite.identities[j].is_flag) {
      report.max_deviation = std::max(report.max_deviation, report.identities[j].max_deviation);
    }
  }
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const Failure& a, const Failure& b) { return a.seed < b.seed; });
  if (options.timing) {
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

io::Json Report::to_json() const {
  io::Json j;
  j["suite"] = suite;
  j["instances"] = instances;
  j["seed"] = seed;
  j["dims"] = dims;
  j["max_deviation"] = max_deviation;
  j["passed"] = passed();
  io::Json ids = io::Json::array();
  for (const IdentityResult& r : identities) {
    ids.push_back({{"name", r.name}, {"tolerance", r.tolerance}, {"max_deviation", r.max_deviation}, {"checks", r.checks}});
  }
  j["identities"] = ids;
  io::Json fs = io::Json::array();
  for (const Failure& f : failures) {
    io::Json fj{{"seed", f.seed}, {"instance", f.instance}, {"identity", f.identity}, {"deviation", f.deviation}};
    if (!f.message.empty()) fj["message"] = f.message;
    fs.push_back(fj);
  }
  j["failures"] = fs;
  if (runtime_ms) j["runtime_ms"] = *runtime_ms;
  return j;
}

}  // namespace krein::verify
