#include "krein/shorted.hpp"
#include "support.hpp"

using namespace krein;
using namespace krein::test;

namespace {

// H = C², H0 = span e1, B e1 = column.
HermitianContractionData c2(cplx b11, cplx b21) {
  return HermitianContractionData::decompose(mat(2, 1, {b11, b21}), Subspace::coordinate(2, 0, 1));
}

}  // namespace

TEST_CASE("decompose examples") {
  const HermitianContractionData zero = c2(0.0, 0.0);
  CHECK(std::abs(zero.b0()(0, 0)) < 1e-15);
  CHECK(std::abs(zero.d_b0()(0, 0) - 1.0) < 1e-15);
  CHECK(zero.k0().norm() < 1e-15);
  CHECK(zero.param_dim() == 1);

  const double r = 1.0 / std::sqrt(2.0);
  const HermitianContractionData iso = c2(r, r);
  CHECK(std::abs(iso.b0()(0, 0) - r) < 1e-12);
  CHECK(std::abs(iso.d_b0()(0, 0) - r) < 1e-12);
  CHECK(std::abs(std::abs(iso.k0()(0, 0)) - 1.0) < 1e-12);
  CHECK(iso.param_dim() == 0);

  const HermitianContractionData c3 =
      HermitianContractionData::decompose(Matrix::Zero(3, 2), Subspace::coordinate(3, 0, 2));
  CHECK(c3.b0().norm() == 0.0);
  CHECK(c3.k0().rows() == 1);
  CHECK(c3.k0().cols() == 2);
  CHECK(c3.k0().norm() == 0.0);
}

TEST_CASE("decompose rejects invalid columns") {
  const Subspace dom = Subspace::coordinate(2, 0, 1);
  try {
    HermitianContractionData::decompose(mat(2, 1, {2.0, 0.0}), dom);
    FAIL("expected NotContraction");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotContraction);
  }
  // Not Hermitian on H0: (B e1, e2) != (e1, B e2) cannot be tested with one
  // vector, so use H0 = C² inside C³.
  try {
    HermitianContractionData::decompose(mat(3, 2, {0.0, 0.5, 0.0, 0.0, 0.0, 0.0}), Subspace::coordinate(3, 0, 2));
    FAIL("expected NotHermitianOnDomain");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHermitianOnDomain);
  }
}

TEST_CASE("qsc_extension and extremes examples") {
  const HermitianContractionData d = c2(0.0, 0.0);
  CHECK(qsc_extension(d, Matrix::Zero(1, 1)).matrix.norm() < 1e-15);
  CHECK(dist(qsc_extension(d, eye(1)).matrix, diag({0.0, 1.0})) < 1e-15);
  CHECK(dist(qsc_extension(d, -eye(1)).matrix, diag({0.0, -1.0})) < 1e-15);
  const Extremes e = extremes(d);
  CHECK(dist(e.b_mu, diag({0.0, -1.0})) < 1e-15);
  CHECK(dist(e.b_m, diag({0.0, 1.0})) < 1e-15);
  CHECK_THROWS_AS(qsc_extension(d, Matrix::Zero(2, 2)), Error);
  CHECK_THROWS_AS(qsc_extension(d, Matrix::Constant(1, 1, 1.5)), Error);

  const double r = 1.0 / std::sqrt(2.0);
  const HermitianContractionData iso = c2(r, r);
  const Matrix unique = qsc_extension(iso, Matrix(0, 0)).matrix;
  const Matrix expected = r * mat(2, 2, {1.0, 1.0, 1.0, -1.0});
  CHECK(dist(unique, expected) < 1e-12);
  CHECK(dist(unique * unique, eye(2)) < 1e-12);
  const Extremes ie = extremes(iso);
  CHECK(dist(ie.b_mu, ie.b_m) < 1e-12);

  const Extremes e3 = extremes(HermitianContractionData::decompose(Matrix::Zero(3, 2), Subspace::coordinate(3, 0, 2)));
  CHECK(dist(e3.b_mu, diag({0.0, 0.0, -1.0})) < 1e-15);
  CHECK(dist(e3.b_m, diag({0.0, 0.0, 1.0})) < 1e-15);
}

TEST_CASE("interval_extension examples") {
  const Extremes e = extremes(c2(0.0, 0.0));
  CHECK(dist(interval_extension(e.b_mu, e.b_m, -eye(1)).matrix, e.b_mu) < 1e-14);
  CHECK(dist(interval_extension(e.b_mu, e.b_m, eye(1)).matrix, e.b_m) < 1e-14);
  CHECK(dist(interval_extension(e.b_mu, e.b_m, Matrix::Zero(1, 1)).matrix, (e.b_mu + e.b_m) / 2.0) < 1e-14);
  CHECK(dist(interval_extension(e.b_mu, e.b_m, Matrix::Constant(1, 1, 0.5)).matrix, diag({0.0, 0.5})) < 1e-14);
  try {
    interval_extension(e.b_m, e.b_mu, Matrix::Zero(1, 1));
    FAIL("expected OrderViolated");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::OrderViolated);
  }
}

TEST_CASE("property: every qsc extension extends B and contracts") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(401, i);
    const Index n = rng.integer(1, 7);
    const Index m = rng.integer(0, n);
    const HermitianContractionData d = gen::hermitian_data(rng, n, m, rng.integer(0, std::min(m, n - m)));
    const Index k = d.param_dim();
    const Matrix x = gen::contraction(rng, k, k);
    const Matrix b = qsc_extension(d, x).matrix;
    CHECK(is_contraction(b, 1e-10));
    CHECK(dist(b * d.dom().basis(), d.b_column()) < 1e-9);
    CHECK(dist(b.adjoint() * d.dom().basis(), d.b_column()) < 1e-9);
    CHECK(dist(d.recover_parameter(b), x) < 1e-8);
  }
}

TEST_CASE("property: selfadjoint parameters give extensions between the extremes") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(402, i);
    const Index n = rng.integer(1, 7);
    const Index m = rng.integer(0, n);
    const HermitianContractionData d = gen::hermitian_data(rng, n, m, rng.integer(0, std::min(m, n - m)));
    const Matrix x = gen::hermitian_contraction(rng, d.param_dim());
    const Matrix b = qsc_extension(d, x).matrix;
    const Extremes e = extremes(d);
    CHECK(is_hermitian(b, 1e-10));
    CHECK(psd_leq(e.b_mu, b));
    CHECK(psd_leq(b, e.b_m));
    const Matrix y = interval_parameter(d, x);
    CHECK(dist(interval_extension(e.b_mu, e.b_m, y).matrix, b) < 1e-8);
  }
}

TEST_CASE("property: shortenings measure the distance to the extremes") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(403, i);
    const Index n = rng.integer(1, 7);
    const Index m = rng.integer(0, n - 1);
    const HermitianContractionData d = gen::hermitian_data(rng, n, m, rng.integer(0, std::min(m, n - m)));
    const Matrix b = qsc_extension(d, gen::hermitian_contraction(rng, d.param_dim())).matrix;
    const Extremes e = extremes(d);
    CHECK(dist(shorted(Matrix(eye(n) + b), d.n_space()).value, b - e.b_mu) < 1e-8);
    CHECK(dist(shorted(Matrix(eye(n) - b), d.n_space()).value, e.b_m - b) < 1e-8);
  }
}

TEST_CASE("property: unique extension exactly when K0* is an isometry") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(404, i);
    const Index n = rng.integer(2, 7);
    const Index m = rng.integer(1, n - 1);
    const Index cap = std::min(m, n - m);
    const Index unit = rng.uniform() < 0.5 && n - m <= m ? cap : rng.integer(0, cap);
    const HermitianContractionData d = gen::hermitian_data(rng, n, m, unit);
    const Extremes e = extremes(d);
    const bool isometric = (d.k0() * d.k0().adjoint() - eye(n - m)).norm() < 1e-8;
    CHECK(isometric == (dist(e.b_mu, e.b_m) < 1e-8));
    CHECK(d.param_dim() == n - m - unit);
  }
}
