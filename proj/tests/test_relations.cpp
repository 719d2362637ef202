#include <numbers>

#include "krein/relations.hpp"
#include "support.hpp"

using namespace krein;
using namespace krein::test;

namespace {

Matrix operator_of(const LinearRelation& r) {
  const auto op = r.as_operator();
  REQUIRE(op.has_value());
  return *op;
}

}  // namespace

TEST_CASE("cayley examples") {
  CHECK(dist(operator_of(cayley(LinearRelation::graph_of(Matrix::Zero(2, 2)))), eye(2)) < 1e-14);

  const LinearRelation mul = LinearRelation::from_pairs(Matrix::Zero(1, 1), eye(1));
  CHECK(mul.multivalued_part().dim() == 1);
  CHECK(dist(operator_of(cayley(mul)), -eye(1)) < 1e-14);

  const Matrix t = operator_of(cayley(LinearRelation::graph_of(diag({1.0, 3.0}))));
  CHECK(dist(t, diag({0.0, -0.5})) < 1e-14);
  CHECK(is_hermitian(t, 1e-12));
  CHECK(is_contraction(t, 1e-12));
}

TEST_CASE("relation structure") {
  // {(x, y) : x = (a, 0)} with a multivalued direction e2.
  const Matrix args = mat(2, 2, {1.0, 0.0, 0.0, 0.0});
  const Matrix values = mat(2, 2, {2.0, 0.0, 0.0, 1.0});
  const LinearRelation r = LinearRelation::from_pairs(args, values);
  CHECK(r.dim() == 2);
  CHECK(r.domain().dim() == 1);
  CHECK(r.multivalued_part().dim() == 1);
  CHECK_FALSE(r.as_operator().has_value());
  CHECK(is_selfadjoint(r));
  CHECK(is_nonnegative_selfadjoint(r));
  const LinearRelation neg = LinearRelation::from_pairs(args, Matrix(-values));
  CHECK_FALSE(is_accretive(neg));
}

TEST_CASE("sectorial_angle examples") {
  CHECK(sectorial_angle(diag({0.5, -0.5})) == 0.0);
  CHECK(sectorial_angle(eye(2)) == 0.0);
  // Scalar brute force over an alpha grid as the oracle. Every T passes at
  // alpha = 0 only in the degenerate sense |±i| = 1, so the scan starts above it.
  const cplx t(0.0, 0.5);
  double grid = 0.0;
  for (int k = 1; k <= 200000; ++k) {
    const double a = (std::numbers::pi / 2.0) * k / 200000.0;
    const double lhs = std::max(std::abs(t * std::sin(a) + cplx(0.0, std::cos(a))),
                                std::abs(t * std::sin(a) - cplx(0.0, std::cos(a))));
    if (lhs <= 1.0) {
      grid = a;
      break;
    }
  }
  const double alpha = sectorial_angle(Matrix::Constant(1, 1, t));
  CHECK(alpha == doctest::Approx(grid).epsilon(1e-4));
  CHECK(alpha == doctest::Approx(0.927295218001612));
  CHECK(in_class(Matrix::Constant(1, 1, t), alpha + 1e-9));
  CHECK_FALSE(in_class(Matrix::Constant(1, 1, t), alpha - 1e-3));
}

TEST_CASE("sectorial_angle near the unit circle") {
  // An eigenvalue i on the unit circle needs alpha within eq_tol of pi/2.
  CHECK(sectorial_angle(Matrix::Constant(1, 1, cplx(0.0, 1.0))) > std::numbers::pi / 2.0 - 1e-7);
  // Norm excess below the contraction tolerance still leaves no admissible angle.
  try {
    sectorial_angle(Matrix::Constant(1, 1, cplx(0.0, 1.0 + 5e-9)));
    FAIL("expected NotInClass");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInClass);
  }
  CHECK_THROWS_AS(sectorial_angle(Matrix::Constant(1, 1, cplx(0.0, 1.1))), Error);
}

TEST_CASE("clfrm_value examples") {
  const Vector u = mat(2, 1, {1.0, cplx(0.0, 2.0)}).col(0);
  CHECK(std::abs(clfrm_value(Matrix::Zero(2, 2), u, u) - u.squaredNorm()) < 1e-14);
  const Vector e1 = mat(2, 1, {1.0, 0.0}).col(0);
  CHECK(std::abs(clfrm_value(diag({0.5, -0.5}), e1, e1) - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("clfrm_value with a kernel direction of I + T") {
  // T = diag(-1, 0.2): the form domain is span e2, and e1 lies outside it.
  const Matrix t = diag({-1.0, 0.2});
  const Vector e1 = mat(2, 1, {1.0, 0.0}).col(0);
  const Vector e2 = mat(2, 1, {0.0, 1.0}).col(0);
  CHECK(std::abs(clfrm_value(t, e2, e2) - 0.8 / 1.2) < 1e-14);
  try {
    clfrm_value(t, e1, e2);
    FAIL("expected VectorOutsideFormDomain");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::VectorOutsideFormDomain);
  }
}

TEST_CASE("region_classify examples") {
  CHECK(region_classify(0.0, 0.3) == Region::Both);
  // |0.5i sin 0.3 + i cos 0.3| = 1.103, |0.5i sin 0.3 - i cos 0.3| = 0.808.
  CHECK(region_classify(cplx(0.0, 0.5), 0.3) == Region::PiMinus);
  CHECK(region_classify(5.0, 0.3) == Region::Outside);
  CHECK(region_classify(cplx(0.3, 0.0), 0.0) == Region::Both);
  CHECK(region_classify(cplx(2.0, 0.0), 0.0) == Region::Outside);
  CHECK(region_classify(cplx(2.0, 1.0), 0.0) == Region::PiMinus);
}

TEST_CASE("property: cayley is an involution") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(201, i);
    const Index n = rng.integer(1, 6);
    const LinearRelation s(n, Subspace(gen::isometry(rng, 2 * n, rng.integer(0, 2 * n))));
    CHECK(relation_distance(cayley(cayley(s)), s) < 1e-12);
  }
}

TEST_CASE("property: cayley maps accretive relations to contractions") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(202, i);
    const Index n = rng.integer(1, 6);
    const Matrix t = gen::sectorial_contraction(rng, n, rng.uniform(0.0, 1.4), rng.integer(0, n));
    CHECK(is_contraction(t, 1e-10));
    const LinearRelation s = cayley(LinearRelation::graph_of(t));
    CHECK(is_accretive(s));
    CHECK(dist(operator_of(cayley(s)), t) < 1e-9);
  }
}

TEST_CASE("property: generated sectorial contractions lie in their class") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(203, i);
    const Index n = rng.integer(1, 6);
    const double alpha = rng.uniform(0.05, 1.4);
    const Matrix t = gen::sectorial_contraction(rng, n, alpha, rng.integer(0, n - 1));
    CHECK(in_class(t, alpha));
    CHECK(sectorial_angle(t) <= alpha + 1e-8);
  }
}

TEST_CASE("property: clfrm_value equals (Mu, v) on the domain of M") {
  for (int i = 0; i < 100; ++i) {
    gen::Rng rng = trial(204, i);
    const Index n = rng.integer(1, 6);
    const Matrix t = gen::sectorial_contraction(rng, n, rng.uniform(0.05, 1.4), rng.integer(0, n - 1));
    const Vector h = gen::gaussian_vector(rng, n);
    const Vector g = gen::gaussian_vector(rng, n);
    const Vector u = (eye(n) + t) * h;
    const Vector v = (eye(n) + t) * g;
    CHECK(std::abs(clfrm_value(t, u, v) - v.dot((eye(n) - t) * h)) < 1e-9);
  }
}

TEST_CASE("property: region membership follows the defining inequalities") {
  for (int i = 0; i < 200; ++i) {
    gen::Rng rng = trial(205, i);
    const double a = rng.uniform(0.05, 1.5);
    const cplx z(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0));
    const bool plus = std::abs(z * std::sin(a) + cplx(0.0, std::cos(a))) < 1.0;
    const bool minus = std::abs(z * std::sin(a) - cplx(0.0, std::cos(a))) < 1.0;
    CHECK(in_pi_plus(z, a) == plus);
    CHECK(in_pi_minus(z, a) == minus);
  }
}
