// Constructors for the model curvature tensors: space forms, products of
// surfaces, and the constant-holomorphic-sectional-curvature family, with
// the complex structures that accompany the Kahler ones.
#pragma once

#include "cosk/curvature_tensor.hpp"
#include "cosk/sym_tensors.hpp"

#include <cmath>

namespace cosk {

// An orthogonal complex structure J with J^2 = -I. The standard one sends
// e_{2k-1} -> e_{2k}; with that ordering the Kahler form lands in the
// self-dual part for the standard orientation.
template <typename Scalar = double>
class ComplexStructure {
 public:
  explicit ComplexStructure(const Matrix<Scalar>& j, Scalar tol = Scalar(1e-12))
      : j_(j) {
    if (j.rows() != j.cols() || j.rows() % 2 != 0)
      throw DimensionError("ComplexStructure: J must be square of even dimension");
    const Index n = j.rows();
    const Scalar sq = (j_ * j_ + Matrix<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
    const Scalar orth =
        (j_.transpose() * j_ - Matrix<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
    if (sq > tol || orth > tol)
      throw ValidationError("ComplexStructure: J^2 = -I or J^T J = I violated");
  }

  static ComplexStructure standard(Index n) {
    if (n % 2 != 0) throw DimensionError("ComplexStructure: n must be even");
    Matrix<Scalar> j = Matrix<Scalar>::Zero(n, n);
    for (Index k = 0; k < n; k += 2) {
      j(k + 1, k) = Scalar(1);   // J e_{2k-1} = e_{2k}
      j(k, k + 1) = Scalar(-1);  // J e_{2k}   = -e_{2k-1}
    }
    return ComplexStructure(j);
  }

  Index dim() const { return j_.rows(); }
  const Matrix<Scalar>& mat() const { return j_; }
  Vector<Scalar> apply(const Vector<Scalar>& x) const { return j_ * x; }

  // omega(X, Y) = g(JX, Y); as a matrix omega = J^T.
  TwoForm<Scalar> kahler_form() const { return TwoForm<Scalar>(j_.transpose()); }

 private:
  Matrix<Scalar> j_;
};

// R_{ijkl} = kappa (d_ik d_jl - d_il d_jk): all sectional curvatures kappa.
template <typename Scalar = double>
CurvatureTensor<Scalar> space_form(Index n, Scalar kappa) {
  return CurvatureTensor<Scalar>::build(n, [&](Index i, Index j, Index k, Index l) {
    const Scalar v = ((i == k && j == l) ? Scalar(1) : Scalar(0)) -
                     ((i == l && j == k) ? Scalar(1) : Scalar(0));
    return kappa * v;
  });
}

template <typename Scalar = double>
CurvatureTensor<Scalar> flat(Index n) {
  return space_form<Scalar>(n, Scalar(0));
}

// Product of two surfaces with curvatures kappa1, kappa2: the only nonzero
// canonical components are R_{1212} = kappa1 and R_{3434} = kappa2.
template <typename Scalar = double>
CurvatureTensor<Scalar> product_surfaces(Scalar kappa1, Scalar kappa2) {
  return CurvatureTensor<Scalar>::build(4, [&](Index i, Index j, Index k, Index l) {
    if (i == 0 && j == 1 && k == 0 && l == 1) return kappa1;
    if (i == 2 && j == 3 && k == 2 && l == 3) return kappa2;
    return Scalar(0);
  });
}

template <typename Scalar = double>
struct KahlerModel {
  CurvatureTensor<Scalar> tensor;
  ComplexStructure<Scalar> structure;
};

// Round 2-sphere times round 2-sphere, unit curvature on both factors,
// with the product complex structure.
template <typename Scalar = double>
KahlerModel<Scalar> s2xs2() {
  return {product_surfaces<Scalar>(Scalar(1), Scalar(1)),
          ComplexStructure<Scalar>::standard(4)};
}

// Constant holomorphic sectional curvature c in complex dimension m:
//
//   R(X,Y,Z,W) = (c/4) [ <X,Z><Y,W> - <X,W><Y,Z> + w(X,Z) w(Y,W)
//                        - w(X,W) w(Y,Z) + 2 w(X,Y) w(Z,W) ],
//
// where w is the Kahler form of the standard J. Positive c is the
// projective-space model; negative c gives its dual.
template <typename Scalar = double>
KahlerModel<Scalar> fubini_study(Index m, Scalar c) {
  if (m < 1) throw DimensionError("fubini_study: m must be >= 1");
  auto j = ComplexStructure<Scalar>::standard(2 * m);
  const Matrix<Scalar> w = j.kahler_form().mat();
  auto tensor =
      CurvatureTensor<Scalar>::build(2 * m, [&](Index i, Index jj, Index k, Index l) {
        const Scalar did = ((i == k && jj == l) ? Scalar(1) : Scalar(0)) -
                           ((i == l && jj == k) ? Scalar(1) : Scalar(0));
        return (c / Scalar(4)) * (did + w(i, k) * w(jj, l) - w(i, l) * w(jj, k) +
                                  Scalar(2) * w(i, jj) * w(k, l));
      });
  return {std::move(tensor), std::move(j)};
}

}  // namespace cosk
