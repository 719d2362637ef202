#pragma once

#include <optional>

#include "krein/numcore.hpp"

namespace krein {

// A linear relation in H, stored as an orthonormal basis of its graph in
// H ⊕ H. The first ambient_dim coordinates carry the argument, the rest the
// value.
class LinearRelation {
 public:
  LinearRelation(Index ambient_dim, Subspace graph);

  static LinearRelation graph_of(const Matrix& t, const Tolerance& tol = {});
  // Span of the pairs (args.col(j), values.col(j)).
  static LinearRelation from_pairs(const Matrix& args, const Matrix& values, const Tolerance& tol = {});

  Index ambient_dim() const { return n_; }
  Index dim() const { return graph_.dim(); }
  const Subspace& graph() const { return graph_; }
  auto args() const { return graph_.basis().topRows(n_); }
  auto values() const { return graph_.basis().bottomRows(n_); }

  Subspace domain(const Tolerance& tol = {}) const;
  Subspace multivalued_part(const Tolerance& tol = {}) const;
  // The operator matrix when the relation is the graph of an everywhere
  // defined operator.
  std::optional<Matrix> as_operator(const Tolerance& tol = {}) const;

 private:
  Index n_ = 0;
  Subspace graph_;
};

double relation_distance(const LinearRelation& a, const LinearRelation& b);

// {<x + x', x - x'> : <x, x'> in s}.
LinearRelation cayley(const LinearRelation& s);

bool is_accretive(const LinearRelation& s, const Tolerance& tol = {});
bool is_selfadjoint(const LinearRelation& s, const Tolerance& tol = {});
bool is_nonnegative_selfadjoint(const LinearRelation& s, const Tolerance& tol = {});

struct SectorialDecomposition {
  Matrix real_part;   // T_R
  Matrix g_factor;    // G, supported on cran (I + T_R)^{1/2}
  Matrix half_root;   // (I + T_R)^{1/2}
  Matrix form_basis;  // orthonormal basis of cran (I + T_R)^{1/2}
};

// Smallest alpha with ||T sin a ± i cos a|| <= 1; 0 for Hermitian T.
double sectorial_angle(const Matrix& t, const Tolerance& tol = {});
bool in_class(const Matrix& t, double alpha, const Tolerance& tol = {});

SectorialDecomposition sectorial_decomposition(const Matrix& t, const Tolerance& tol = {});

// Closed form of the sectorial form of the relation (I - T)(I + T)^{-1}.
cplx clfrm_value(const Matrix& t, const Vector& u, const Vector& v, const Tolerance& tol = {});
cplx clfrm_value(const SectorialDecomposition& dec, const Vector& u, const Vector& v,
                 const Tolerance& tol = {});

enum class Region { PiPlus, PiMinus, Both, Outside };
const char* region_name(Region r);

bool in_pi_plus(cplx z, double alpha);
bool in_pi_minus(cplx z, double alpha);
// At alpha = 0 the half-plane limits are used, so that the union is the
// plane cut along (-inf, -1] and [1, inf).
Region region_classify(cplx z, double alpha);

}  // namespace krein
