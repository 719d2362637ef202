#include "krein/realization.hpp"

namespace krein {

Matrix krylov_basis(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw Error(Errc::BadDims, "krylov_basis: size mismatch");
  Matrix q(n, 0);
  if (n == 0 || b.cols() == 0) return q;
  const double scale = std::max(1.0, op_norm(b));
  Matrix block = b;
  while (q.cols() < n) {
    const Index before = q.cols();
    Matrix fresh(n, 0);
    for (Index j = 0; j < block.cols(); ++j) {
      Vector v = block.col(j);
      // Two passes of modified Gram-Schmidt keep orthogonality at machine level.
      for (int pass = 0; pass < 2; ++pass) {
        for (Index i = 0; i < q.cols(); ++i) v -= q.col(i).dot(v) * q.col(i);
      }
      const double nv = v.norm();
      if (nv > tol.rank_cut * scale * 1e2) {
        q.conservativeResize(n, q.cols() + 1);
        q.col(q.cols() - 1) = v / nv;
        fresh.conservativeResize(n, fresh.cols() + 1);
        fresh.col(fresh.cols() - 1) = q.col(q.cols() - 1);
        if (q.cols() == n) break;
      }
    }
    if (q.cols() == before) break;
    block = a * fresh;
  }
  return q;
}

PassiveSystem minimal_restriction(const PassiveSystem& sys, MinimalMode mode, const Tolerance& tol) {
  const Matrix q = mode == MinimalMode::StateMinimal ? krylov_basis(sys.a, sys.b, tol)
                                                     : krylov_basis(Matrix(sys.a.adjoint()), Matrix(sys.c.adjoint()), tol);
  return {sys.d, sys.c * q, q.adjoint() * sys.b, q.adjoint() * sys.a * q};
}

std::vector<Matrix> moments(const PassiveSystem& sys, Index count) {
  std::vector<Matrix> out;
  Matrix p = sys.b;
  for (Index k = 0; k < count; ++k) {
    out.push_back(sys.c * p);
    p = sys.a * p;
  }
  return out;
}

RealizationResult recover_hermitian(const PassiveSystem& sys, RecoverSide side, const Tolerance& tol) {
  RealizationResult r;
  r.system = sys;
  // M̃* is c on the exit side and b on the inner side; C̃ is a or d.
  const Matrix& m_adj = side == RecoverSide::ExitSide ? sys.c : sys.b;
  const Matrix& c_tilde = side == RecoverSide::ExitSide ? sys.a : sys.d;
  r.recovered_dom = Subspace(null_basis(m_adj, tol));
  r.recovered_b = c_tilde * r.recovered_dom.basis();
  r.krylov_rank = krylov_basis(sys.a, sys.b, tol).cols();
  r.simple = r.krylov_rank == sys.state_dim();
  return r;
}

}  // namespace krein
