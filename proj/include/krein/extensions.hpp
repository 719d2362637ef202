#pragma once

#include "krein/numcore.hpp"

namespace krein {

// A Hermitian contraction B defined on a subspace H0 of H, split as
// B = [B0; K0 D_{B0}] with respect to H = H0 ⊕ N.
//
// Parameters of the extensions live on D_{K0*} = cran D_{K0*} ⊆ N and are
// given in the coordinates of param_basis(): the N coordinates themselves
// when D_{K0*} has full rank, otherwise eigenvectors of D_{K0*}.
class HermitianContractionData {
 public:
  static HermitianContractionData decompose(const Matrix& b_column, const Subspace& dom,
                                            const Tolerance& tol = {});

  Index ambient_dim() const { return dom_.ambient_dim(); }
  Index dom_dim() const { return dom_.dim(); }
  Index n_dim() const { return n_space_.dim(); }
  Index param_dim() const { return param_basis_.cols(); }

  const Subspace& dom() const { return dom_; }
  const Subspace& n_space() const { return n_space_; }
  const Matrix& b_column() const { return b_column_; }
  const Matrix& b0() const { return b0_; }
  const Matrix& k0() const { return k0_; }
  const Matrix& d_b0() const { return d_b0_; }
  const Matrix& d_k0_adj() const { return d_k0_adj_; }  // on N, in N coordinates
  const Matrix& param_basis() const { return param_basis_; }

  // B extended by zero on N, as an operator on H.
  Matrix b_operator() const { return b_column_ * dom_.basis().adjoint(); }
  // D_{K0*} read from parameter coordinates into H (ambient x param_dim).
  const Matrix& param_embedding() const { return embedding_; }
  // The block matrix of the extension with parameter x, without checks:
  // base + E x E* with E = param_embedding().
  Matrix assemble(const Matrix& x) const;
  // Inverse of assemble on extensions of B.
  Matrix recover_parameter(const Matrix& extension, const Tolerance& tol = {}) const;

 private:
  Subspace dom_, n_space_;
  Matrix b_column_, b0_, k0_, d_b0_, d_k0_adj_, param_basis_;
  Matrix base_, embedding_;
};

struct ScExtension {
  enum class Origin { BlockParameter, IntervalParameter };
  Matrix matrix;
  Matrix parameter;
  Origin origin = Origin::BlockParameter;
};

ScExtension qsc_extension(const HermitianContractionData& data, const Matrix& x, const Tolerance& tol = {});

struct Extremes {
  Matrix b_mu;
  Matrix b_m;
};

Extremes extremes(const HermitianContractionData& data);

// Coordinates on cran(B_M - B_mu) used for the interval parameter.
Matrix interval_basis(const Matrix& b_mu, const Matrix& b_m, const Tolerance& tol = {});

ScExtension interval_extension(const Matrix& b_mu, const Matrix& b_m, const Matrix& y, const Tolerance& tol = {});

// The interval parameter Y describing the same extension as qsc parameter x.
Matrix interval_parameter(const HermitianContractionData& data, const Matrix& x, const Tolerance& tol = {});

}  // namespace krein
