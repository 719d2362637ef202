#include "krein/functions.hpp"
#include "support.hpp"

using namespace krein;
using namespace krein::test;

namespace {

HermitianContractionData zero_c2() {
  return HermitianContractionData::decompose(Matrix::Zero(2, 1), Subspace::coordinate(2, 0, 1));
}

const Matrix kSwap = mat(2, 2, {0.0, 1.0, 1.0, 0.0});

// Θ constant in z, equal to x.
PassiveSystem constant_system(const Matrix& x) {
  const Index n = x.rows();
  return PassiveSystem::from_blocks(x, Matrix(n, 0), Matrix(0, n), Matrix(0, 0));
}

cplx scalar(const Matrix& m) {
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  return m(0, 0);
}

}  // namespace

TEST_CASE("transfer and schur_frobenius examples") {
  const PassiveSystem swap = PassiveSystem::from_matrix(kSwap, 1);
  for (const cplx z : {cplx(0.0, 0.0), cplx(0.3, -0.2), cplx(-0.9, 0.0)}) {
    CHECK(std::abs(scalar(transfer(swap, z)) - z) < 1e-15);
  }
  // (U - 2)^{-1} = -(1/3) [[2, 1], [1, 2]].
  const BlockResolvent r = schur_frobenius(swap, 2.0);
  CHECK(std::abs(scalar(r.v) - 1.5) < 1e-14);
  CHECK(std::abs(scalar(r.top_left) + 2.0 / 3.0) < 1e-14);
  CHECK(dist(r.assembled(), mat(2, 2, {-2.0, -1.0, -1.0, -2.0}) / 3.0) < 1e-14);
}

TEST_CASE("phi_x and phi_limits examples") {
  const ExitParameter x = ExitParameter::split(kSwap, 1);
  CHECK(std::abs(scalar(phi_x(x, 0.4)) - 0.4) < 1e-15);
  const PhiLimits lim = phi_limits(x);
  CHECK(std::abs(scalar(lim.exact.z0) + 1.0) < 1e-12);
  CHECK(std::abs(scalar(lim.exact.z1) - 1.0) < 1e-12);
  CHECK(lim.deviation < 1e-8);
}

TEST_CASE("neville_at_zero recovers polynomials") {
  // f(h) = 2 - 3h + h², sampled at three points.
  std::vector<double> hs{0.1, 0.05, 0.025};
  std::vector<Matrix> fs;
  for (const double h : hs) fs.push_back(Matrix::Constant(1, 1, 2.0 - 3.0 * h + h * h));
  CHECK(std::abs(scalar(neville_at_zero(hs, fs)) - 2.0) < 1e-12);
}

TEST_CASE("q_pair example on C²") {
  const HermitianContractionData d = zero_c2();
  const Extremes e = extremes(d);
  const cplx xi(0.0, 2.0);
  const QPair q = q_pair(e.b_mu, e.b_m, d.n_space(), xi);
  CHECK(std::abs(scalar(q.q0) - (1.0 + 2.0 / (-1.0 - xi))) < 1e-14);
  CHECK(std::abs(scalar(q.q1) - (-1.0 + 2.0 / (1.0 - xi))) < 1e-14);
  const QPair dressed = q_pair_dressed(e.b_mu, e.b_m, d.n_space(), eye(1), xi);
  CHECK(dist(dressed.q0, q.q0) < 1e-15);
  CHECK(dist(dressed.q1, q.q1) < 1e-15);
  try {
    q_pair(e.b_mu, e.b_m, d.n_space(), 0.5);
    FAIL("expected ResolventSingular");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::ResolventSingular);
  }
  CHECK_THROWS_AS(q_pair(e.b_m, e.b_mu, d.n_space(), xi), Error);
  CHECK_THROWS_AS(q_pair_dressed(e.b_mu, e.b_m, d.n_space(), Matrix::Constant(1, 1, 0.5), xi), Error);
}

TEST_CASE("class_probe sorts the extreme pair") {
  const HermitianContractionData d = zero_c2();
  const Extremes e = extremes(d);
  const auto q0 = [&](cplx xi) { return q_pair(e.b_mu, e.b_m, d.n_space(), xi).q0; };
  const auto q1 = [&](cplx xi) { return q_pair(e.b_mu, e.b_m, d.n_space(), xi).q1; };
  CHECK(class_probe(q0, QClass::S_mu).passes());
  CHECK(class_probe(q1, QClass::S_M).passes());
  CHECK_FALSE(class_probe(q0, QClass::S_M).passes());
  CHECK_FALSE(class_probe(q1, QClass::S_mu).passes());
}

TEST_CASE("krein_ovcharenko examples at xi = 3") {
  const HermitianContractionData d = zero_c2();
  const Extremes e = extremes(d);
  const Matrix c = e.b_m - e.b_mu;
  const cplx xi = 3.0;
  CHECK(dist(krein_ovcharenko(e.b_mu, c, d.n_space(), Matrix::Zero(1, 1), xi), diag({-1.0 / 3.0, -0.25})) < 1e-14);
  CHECK(dist(krein_ovcharenko(e.b_mu, c, d.n_space(), eye(1), xi), diag({-1.0 / 3.0, -0.5})) < 1e-14);
  CHECK(dist(krein_ovcharenko(e.b_mu, c, d.n_space(), eye(1) / 2.0, xi), diag({-1.0 / 3.0, -1.0 / 3.0})) < 1e-14);
  CHECK(dist(canonical_extension(e.b_mu, c, d.n_space(), eye(1) / 2.0), Matrix::Zero(2, 2)) < 1e-14);
  try {
    krein_ovcharenko(e.b_mu, c, d.n_space(), Matrix::Constant(1, 1, 1.5), xi);
    FAIL("expected ParameterNotHermitianContraction");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::ParameterNotHermitianContraction);
  }
}

TEST_CASE("n_lambda examples") {
  // Constant Θ = x: N = (1 - x)/(1 + x).
  const LinearRelation n = n_lambda(constant_system(Matrix::Constant(1, 1, 0.5)), -2.0);
  const auto op = n.as_operator();
  REQUIRE(op.has_value());
  CHECK(std::abs(scalar(*op) - 1.0 / 3.0) < 1e-14);

  // Θ(w) = w with w = (1 + λ)/(1 - λ) = 0 at λ = -1.
  const auto at_minus_one = n_lambda(PassiveSystem::from_matrix(kSwap, 1), -1.0).as_operator();
  REQUIRE(at_minus_one.has_value());
  CHECK(std::abs(scalar(*at_minus_one) - 1.0) < 1e-14);

  // Θ = -1 makes N purely multivalued.
  const LinearRelation mv = n_lambda(constant_system(-eye(1)), -1.0);
  CHECK(mv.multivalued_part().dim() == 1);
  CHECK_THROWS_AS(n_lambda(constant_system(eye(1)), 0.5), Error);
  CHECK(std::abs(lambda_to_w(cplx(0.0, 1.0)) - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("n_form_value example with a decoupled exit block") {
  const HermitianContractionData d = zero_c2();
  const ExitParameter x = ExitParameter::split(diag({0.2, 0.5}), 1);
  const Vector h = mat(1, 1, {cplx(1.0, 1.0)}).col(0);
  // N = (1 - 0.5)/(1 + 0.5) on the exit block, whatever lambda is.
  for (const cplx lambda : {cplx(-1.0, 0.0), cplx(-0.5, 2.0)}) {
    CHECK(std::abs(n_form_value(d, x, lambda, h, h) - h.squaredNorm() / 3.0) < 1e-13);
  }
  // X22 = -1 leaves an empty form domain.
  const ExitParameter y = ExitParameter::split(diag({0.2, -1.0}), 1);
  try {
    n_form_value(d, y, -1.0, h, h);
    FAIL("expected VectorOutsideFormDomain");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::VectorOutsideFormDomain);
  }
}

TEST_CASE("property: schur_frobenius matches the direct inverse") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(601, i);
    const Index io = rng.integer(1, 3), st = rng.integer(0, 4);
    const PassiveSystem sys = PassiveSystem::from_matrix(gen::contraction(rng, io + st, io + st), io);
    const cplx lambda = rng.unit_phase() * rng.uniform(1.2, 3.0);
    const Matrix direct = (sys.assembled() - lambda * eye(io + st)).inverse();
    CHECK(dist(schur_frobenius(sys, lambda).assembled(), direct) < 1e-9);
  }
}

TEST_CASE("property: selfadjoint passive transfer functions are symmetric contractions") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(602, i);
    const Index io = rng.integer(1, 3), st = rng.integer(0, 4);
    const PassiveSystem sys = PassiveSystem::from_matrix(gen::hermitian_contraction(rng, io + st), io);
    const cplx z = rng.unit_phase() * rng.uniform(0.0, 0.95);
    const Matrix th = transfer(sys, z);
    CHECK(is_contraction(th, 1e-9));
    CHECK(dist(Matrix(transfer(sys, std::conj(z)).adjoint()), th) < 1e-10);
    // Im z and Im Θ(z) share a sign.
    const Matrix im = (th - th.adjoint()) / cplx(0.0, 2.0);
    CHECK(is_psd(Matrix(im * (z.imag() >= 0.0 ? 1.0 : -1.0)), Tolerance{1e-10, 1e-9}));
  }
}

TEST_CASE("property: phi limits agree with the shorted formula") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(603, i);
    const Index k = rng.integer(1, 4), h = rng.integer(1, 3);
    Matrix xm = gen::hermitian_contraction(rng, k + h);
    const ExitParameter x = ExitParameter::split(xm, k);
    if (op_norm(x.x22()) > 0.95) continue;
    const PhiLimits lim = phi_limits(x);
    const ZPair z = z_pair(x);
    CHECK(dist(lim.exact.z0, z.z0) < 1e-10);
    CHECK(dist(lim.exact.z1, z.z1) < 1e-10);
    CHECK(lim.deviation < 1e-5);
  }
}

TEST_CASE("property: Krein-Ovcharenko resolvent of the canonical extension") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(604, i);
    const Index n = rng.integer(1, 6);
    const HermitianContractionData d = gen::hermitian_data(rng, n, rng.integer(0, n - 1));
    const Extremes e = extremes(d);
    const Index nn = d.n_dim();
    Matrix k = gen::psd(rng, nn, rng.integer(0, nn));
    if (k.norm() > 0.0) k /= op_norm(k) * rng.uniform(1.0, 2.0);
    const cplx xi(rng.uniform(-3.0, 3.0), rng.uniform(0.2, 2.0));
    const Matrix c = e.b_m - e.b_mu;
    const Matrix direct = (canonical_extension(e.b_mu, c, d.n_space(), k) - xi * eye(n)).inverse();
    CHECK(dist(krein_ovcharenko(e.b_mu, c, d.n_space(), k, xi), direct) < 1e-8);
  }
}

TEST_CASE("property: n_form_value equals the closed form of N") {
  for (int i = 0; i < 60; ++i) {
    gen::Rng rng = trial(605, i);
    const Index n = rng.integer(2, 5);
    const HermitianContractionData d = gen::hermitian_data(rng, n, rng.integer(0, n - 1));
    const Index k = d.param_dim();
    const Index h = rng.integer(1, 3);
    const ExitParameter x = ExitParameter::split(gen::hermitian_contraction(rng, k + h, 0.9), k);
    const PassiveSystem ts = theta_system(d, x);
    const Matrix dom = form_domain(ts);
    const Vector hv = dom * gen::gaussian_vector(rng, dom.cols());
    const Vector gv = dom * gen::gaussian_vector(rng, dom.cols());
    for (const cplx lambda : {cplx(-1.0, 0.0), cplx(-0.5, 0.0), cplx(-2.0, 1.0)}) {
      // N = (I - Θ)(I + Θ)^{-1} with Θ invertible-shifted since ||X|| <= 0.9.
      const Matrix th = transfer(ts, lambda_to_w(lambda));
      const Matrix nm = (eye(h) - th) * (eye(h) + th).inverse();
      CHECK(std::abs(n_form_value(d, x, lambda, hv, gv) - gv.dot(nm * hv)) < 1e-7);
    }
  }
}
