#pragma once

#include <vector>

#include "krein/functions.hpp"

namespace krein {

// Orthonormal basis of span{A^n B : n >= 0}, grown by modified Gram-Schmidt
// until a sweep adds nothing.
Matrix krylov_basis(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

enum class MinimalMode { StateMinimal, InputSide };

// Compression of the state space to span{A^n B} (StateMinimal) or to
// span{A*^n C*} (InputSide).
PassiveSystem minimal_restriction(const PassiveSystem& sys, MinimalMode mode, const Tolerance& tol = {});

// C A^k B for k = 0..count-1.
std::vector<Matrix> moments(const PassiveSystem& sys, Index count);

enum class RecoverSide {
  ExitSide,   // state H, input/output 𝓗: [Y M̃*; M̃ C̃]
  InnerSide,  // state 𝓗, input/output H: [C̃ M̃; M̃* Y]
};

struct RealizationResult {
  PassiveSystem system;
  Subspace recovered_dom;  // H0 = ker M̃*
  Matrix recovered_b;      // C̃ restricted to H0, as an H-valued column
  Index krylov_rank = 0;
  bool simple = false;     // span{A^n B} fills the state space
};

RealizationResult recover_hermitian(const PassiveSystem& sys, RecoverSide side, const Tolerance& tol = {});

}  // namespace krein
