#pragma once

#include <cstdint>
#include <random>

#include "krein/extensions.hpp"

namespace krein::gen {

inline constexpr double kMaxNorm = 1.0 - 1e-3;

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic generator; split() derives independent child streams so a
// single seed fans out reproducibly over instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const;
  std::uint64_t seed() const { return seed_; }

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  Index integer(Index lo, Index hi);  // inclusive
  cplx complex_normal();
  cplx unit_phase();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

Matrix gaussian(Rng& rng, Index rows, Index cols);
Vector gaussian_vector(Rng& rng, Index n);
Matrix unitary(Rng& rng, Index n);
// Orthonormal columns, rows >= cols.
Matrix isometry(Rng& rng, Index rows, Index cols);
// Rescaled to spectral norm max_norm.
Matrix contraction(Rng& rng, Index rows, Index cols, double max_norm = kMaxNorm);
// Singular values drawn uniformly from [0, max_norm]; the first `unit`
// of them set to exactly 1.
Matrix contraction_with_units(Rng& rng, Index rows, Index cols, Index unit, double max_norm = kMaxNorm);
Matrix hermitian_contraction(Rng& rng, Index n, double max_norm = kMaxNorm);
Matrix psd(Rng& rng, Index n, Index rank);
// A member of C(alpha) whose ker(I + T) has dimension kernel_dim: the Cayley
// image of A^{1/2}(I + iG)A^{1/2} with ||G|| <= tan alpha, direct-summed with
// -I and rotated.
Matrix sectorial_contraction(Rng& rng, Index n, double alpha, Index kernel_dim = 0);
Subspace subspace(Rng& rng, Index n, Index k);

// B on a random m-dimensional H0 ⊂ C^n with ||B0|| <= max_norm and K0 having
// `unit` singular values equal to 1 (so D_{K0*} is a proper subspace of N).
HermitianContractionData hermitian_data(Rng& rng, Index n, Index m, Index unit = 0, double max_norm = kMaxNorm);

}  // namespace krein::gen
