#pragma once

#include <cstdint>
#include <string>

#include "krein/extensions.hpp"

namespace krein {

// X = [X11 X12; X21 X22] on K ⊕ 𝓗, with K = D_{K0*} when paired with data.
class ExitParameter {
 public:
  ExitParameter() = default;
  ExitParameter(Matrix x11, Matrix x12, Matrix x21, Matrix x22);

  static ExitParameter selfadjoint(Matrix x11, Matrix x12, Matrix x22);
  static ExitParameter split(const Matrix& x, Index k_dim);

  Index k_dim() const { return x11_.rows(); }
  Index h_dim() const { return x22_.rows(); }
  const Matrix& x11() const { return x11_; }
  const Matrix& x12() const { return x12_; }
  const Matrix& x21() const { return x21_; }
  const Matrix& x22() const { return x22_; }
  Matrix assembled() const { return block_matrix(x11_, x12_, x21_, x22_); }
  bool is_selfadjoint(double tol) const { return is_hermitian(assembled(), tol); }

 private:
  Matrix x11_, x12_, x21_, x22_;
};

struct ZPair {
  Matrix z0;
  Matrix z1;
};

// The extension of B to H ⊕ 𝓗 with exit parameter x; first ambient_dim
// coordinates are H.
Matrix exit_extension(const HermitianContractionData& data, const ExitParameter& x, const Tolerance& tol = {});

// z0 = (I + X)_K - I and z1 = I - (I - X)_K on K.
ZPair z_pair(const ExitParameter& x, const Tolerance& tol = {});

struct InducedPair {
  Matrix b0;
  Matrix b1;
};

InducedPair induced_pair(const HermitianContractionData& data, const ExitParameter& x, const Tolerance& tol = {});

// Coordinates on cran(z1 - z0) in which the isometry V is given.
Matrix gap_basis(const ZPair& z, const Tolerance& tol = {});

// The selfadjoint contraction with given z-pair, 2,2 block x22, and isometry
// v from cran(z1 - z0) (gap_basis coordinates) into ran D_{x22}.
ExitParameter x_from_z_pair(const ZPair& z, const Matrix& x22, const Matrix& v, const Tolerance& tol = {});

// First rank(z1 - z0) basis vectors of ran D_{x22}.
Matrix default_isometry(const ZPair& z, const Matrix& x22, const Tolerance& tol = {});

// Properties one may demand from the two-step construction.
struct SpecialRequest {
  bool kernel_free_coupling = false;  // ker X12* = {0}
  bool nontrivial_pair = false;       // z0 != -I and z1 != I
  bool injective_gap = false;         // ker(z1 - z0) = {0}

  static SpecialRequest full() { return {true, true, true}; }
};

struct SpecialProperties {
  bool intersections_trivial = false;  // L0 and its complement meet ran D_{M*} trivially
  bool shorted_vanish = false;         // (I ± X)_𝓗 = 0
  bool strict_x22 = false;             // ||X22|| < 1
  bool ker_x12_trivial = false;
  bool ker_x12_adj_trivial = false;
  bool z0_not_minus_identity = false;
  bool z1_not_identity = false;
  bool gap_injective = false;
  bool gap_meets_trivially = false;  // ran(z1-z0)^{1/2} meets ran(I+z0)^{1/2} and ran(I-z1)^{1/2} trivially
};

struct SpecialConstruction {
  Matrix coupling;      // 𝓜 : Ω0 -> M0
  Matrix l0_basis;      // L0 ⊂ M0
  Matrix j0;            // 2 P_L0 - I on M0
  Matrix x11;           // on K = Ω0 ⊕ M0
  Matrix exit_isometry; // L* : 𝓗 -> K
  ExitParameter x;
  ZPair z;
  SpecialProperties properties;
};

// Two-step construction on K = Ω0 ⊕ M0 with dim Ω0 = dim_omega0 and
// dim M0 = dim_m0. Throws InfeasibleInFiniteDim when the request cannot be
// met at these dimensions.
SpecialConstruction construct_special_x(Index dim_omega0, Index dim_m0, const Matrix& a, std::uint64_t seed,
                                        SpecialRequest request = {}, const Tolerance& tol = {});

// X = [(z1 + z0)/2, W V*; V W, 0] with W = ((z1 - z0)/2)^{1/2} and a seeded
// unitary V, for pairs with ker(z1 - z0) = {0} and both gap intersections
// trivial.
ExitParameter construct_from_z_pair(const ZPair& z, std::uint64_t seed, const Tolerance& tol = {});

// Largest principal cosine between ran(z1 - z0) and either of ran(I + z0),
// ran(I - z1); below 1 exactly when both intersections are trivial.
double max_gap_cosine(const ZPair& z, const Tolerance& tol = {});

// Shorted operators (I + X)_𝓗 and (I - X)_𝓗 on the exit block, in 𝓗 coordinates.
ZPair exit_shortenings(const Matrix& x, Index h_dim, const Tolerance& tol = {});

}  // namespace krein
