#pragma once

#include "krein/numcore.hpp"

namespace krein {

struct ShortedResult {
  Matrix value;             // S_K in ambient coordinates
  Matrix schur_complement;  // the K block, in the coordinates of K's basis
};

// Shorted operator of a PSD matrix to the subspace k.
ShortedResult shorted(const Matrix& s, const Subspace& k, const Tolerance& tol = {});

// inf over phi in K-perp of (S(f + phi), f + phi).
double shorted_infimum_oracle(const Matrix& s, const Subspace& k, const Vector& f, const Tolerance& tol = {});

// F(F + G)^+ G.
Matrix parallel_sum(const Matrix& f, const Matrix& g, const Tolerance& tol = {});

}  // namespace krein
