#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace krein {

using cplx = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<cplx>;
using Vector = VectorX<cplx>;

enum class Errc {
  InvalidInput,
  NotHermitian,
  NegativeEigenvalueBeyondTolerance,
  NotContraction,
  NotPSD,
  NotInClass,
  VectorOutsideFormDomain,
  NotHermitianOnDomain,
  InconsistentFactorization,
  ParameterNotContraction,
  ParameterWrongSpace,
  ParameterNotHermitianContraction,
  IsometryInfeasible,
  InfeasibleInFiniteDim,
  ResolventSingular,
  OrderViolated,
  BadDims,
  UnknownSuite,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Singular values below rank_cut * sigma_max count as zero; eq_tol is the
// threshold for every identity and membership check.
struct Tolerance {
  double rank_cut = 1e-10;
  double eq_tol = 1e-8;

  void validate() const;
};

}  // namespace krein
