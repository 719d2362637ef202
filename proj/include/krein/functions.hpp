#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "krein/exitspace.hpp"
#include "krein/relations.hpp"

namespace krein {

// U = [D C; B A] acting from input ⊕ state to output ⊕ state.
struct PassiveSystem {
  Matrix d, c, b, a;

  static PassiveSystem from_blocks(Matrix d, Matrix c, Matrix b, Matrix a);
  // Selfadjoint U with the first io_dim coordinates as input/output.
  static PassiveSystem from_matrix(const Matrix& u, Index io_dim);

  Index in_dim() const { return d.cols(); }
  Index out_dim() const { return d.rows(); }
  Index state_dim() const { return a.rows(); }
  Matrix assembled() const { return block_matrix(d, c, b, a); }
  bool is_passive(const Tolerance& tol = {}) const { return is_contraction(assembled(), tol.eq_tol); }
  bool is_selfadjoint(const Tolerance& tol = {}) const { return is_hermitian(assembled(), tol.eq_tol); }
};

// D + z C (I - zA)^{-1} B.
Matrix transfer(const PassiveSystem& sys, cplx z, const Tolerance& tol = {});

// Φ_X as the transfer function of [X11 X12; X21 X22].
PassiveSystem phi_system(const ExitParameter& x);
Matrix phi_x(const ExitParameter& x, cplx z, const Tolerance& tol = {});

// Σ_X: state space H, input/output 𝓗, U = B̃_X.
PassiveSystem theta_system(const HermitianContractionData& data, const ExitParameter& x, const Tolerance& tol = {});

// The block resolvent of U - λ via V(λ) = λ - D + C (A - λ)^{-1} B.
struct BlockResolvent {
  Matrix top_left, top_right, bottom_left, bottom_right;
  Matrix v;  // V(λ)
  Matrix assembled() const { return block_matrix(top_left, top_right, bottom_left, bottom_right); }
};

BlockResolvent schur_frobenius(const PassiveSystem& sys, cplx lambda, const Tolerance& tol = {});

enum class Side { H, Exit };

// Compression of (z Bt - I)^{-1} to the first h_dim coordinates (H) or the
// remaining ones (Exit).
Matrix compressed_resolvent(const Matrix& bt, Index h_dim, Side side, cplx z, const Tolerance& tol = {});

// B̂_X(z) = base + E Φ_X(z) E*.
Matrix b_hat(const HermitianContractionData& data, const ExitParameter& x, cplx z, const Tolerance& tol = {});

struct QPair {
  Matrix q0;
  Matrix q1;
};

// Both in N coordinates.
QPair q_pair(const Matrix& b0, const Matrix& b1, const Subspace& n_space, cplx xi, const Tolerance& tol = {});
// I + V(...)V* and -I + V(...)V* with V an isometry in N coordinates.
QPair q_pair_dressed(const Matrix& b0, const Matrix& b1, const Subspace& n_space, const Matrix& v, cplx xi,
                     const Tolerance& tol = {});

enum class QClass { S_mu, S_M };
enum class Verdict { Pass, Fail, Indeterminate };
const char* verdict_name(Verdict v);

struct ConditionProbe {
  Verdict verdict = Verdict::Indeterminate;
  std::vector<double> points;
  std::vector<double> metric;  // limit: ||Q - L||; divergence: λ_min(±Q)
};

struct ClassReport {
  std::array<ConditionProbe, 3> conditions;  // x -> ∞, x ↑ -1, x ↓ 1
  bool passes() const;
};

using QEvaluator = std::function<Matrix(cplx)>;
ClassReport class_probe(const QEvaluator& q, QClass which);

struct PhiLimits {
  ZPair exact;         // shorted-operator formula
  ZPair extrapolated;  // Neville extrapolation along x = ±(1 - h)
  double deviation = 0.0;
};

PhiLimits phi_limits(const ExitParameter& x, const Tolerance& tol = {});

// Polynomial extrapolation to h = 0 of samples f(h_i).
Matrix neville_at_zero(const std::vector<double>& h, const std::vector<Matrix>& f);

// (B_mu - ξ)^{-1} - (B_mu - ξ)^{-1} C^{1/2} K (I + (Q_mu(ξ) - I) K)^{-1} C^{1/2} (B_mu - ξ)^{-1}
// for constant K (N coordinates, 0 <= K <= I).
Matrix krein_ovcharenko(const Matrix& b_mu, const Matrix& c, const Subspace& n_space, const Matrix& k, cplx xi,
                        const Tolerance& tol = {});
// B_mu + C^{1/2} K C^{1/2}: the extension whose resolvent the constant-K formula gives.
Matrix canonical_extension(const Matrix& b_mu, const Matrix& c, const Subspace& n_space, const Matrix& k,
                           const Tolerance& tol = {});

// Cayley-type variable change w = (1 + λ)/(1 - λ).
cplx lambda_to_w(cplx lambda);

// {(I + Θ(w)) h, (I - Θ(w)) h} for a selfadjoint passive system.
LinearRelation n_lambda(const PassiveSystem& theta_sys, cplx lambda, const Tolerance& tol = {});

// Basis of ran(I + Θ(0)), the form domain.
Matrix form_domain(const PassiveSystem& theta_sys, const Tolerance& tol = {});

// The form of N(λ) through the pair (B̂0, B̂1) induced by x and the isometry
// V with sqrt(2) (D_{K0*} U)* = V (B̂1 - B̂0)^{1/2}, where X12 = U D_{X22}.
cplx n_form_value(const HermitianContractionData& data, const ExitParameter& x, cplx lambda, const Vector& h,
                  const Vector& g, const Tolerance& tol = {});

}  // namespace krein
