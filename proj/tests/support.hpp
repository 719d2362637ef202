#pragma once

#include <doctest.h>

#include "krein/random.hpp"

namespace krein::test {

inline Matrix mat(Index rows, Index cols, std::initializer_list<cplx> values) {
  Matrix m(rows, cols);
  auto it = values.begin();
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = *it++;
  }
  return m;
}

inline Matrix diag(std::initializer_list<cplx> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (const cplx x : values) v(i++) = x;
  return v.asDiagonal();
}

inline Matrix eye(Index n) { return Matrix::Identity(n, n); }

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

// Seeds for property loops: one root per test case, split per trial.
inline gen::Rng trial(std::uint64_t root, int i) { return gen::Rng(root).split(static_cast<std::uint64_t>(i)); }

}  // namespace krein::test
