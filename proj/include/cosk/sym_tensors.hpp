// Symmetric and antisymmetric two-tensors on a Euclidean vector space.
//
// Inner products follow the convention that makes the coordinate families
// orthonormal: <A,B> = tr(A^T B) on S^2(V) and <A,B> = tr(A^T B)/2 on
// Lambda^2(V). Under these, {e_i (.) e_j / sqrt(2)}_{i<j} together with the
// traceless diagonal family is an orthonormal basis of S^2_0(V), and
// {e_i ^ e_j}_{i<j} is an orthonormal basis of Lambda^2(V).
#pragma once

#include "cosk/common.hpp"

#include <cmath>
#include <vector>

namespace cosk {

// Symmetric two-tensor, stored as a dense matrix which is symmetric
// bit-for-bit (the constructor mirrors the strict upper triangle).
template <typename Scalar = double>
class SymTwoTensor {
 public:
  explicit SymTwoTensor(const Matrix<Scalar>& m) : m_(m) {
    if (m.rows() != m.cols()) throw DimensionError("SymTwoTensor: matrix must be square");
    for (Index i = 0; i < m_.rows(); ++i)
      for (Index j = i + 1; j < m_.cols(); ++j) {
        const Scalar v = (m_(i, j) + m_(j, i)) / Scalar(2);
        m_(i, j) = v;
        m_(j, i) = v;
      }
  }

  static SymTwoTensor zero(Index n) { return SymTwoTensor(Matrix<Scalar>::Zero(n, n)); }
  static SymTwoTensor identity(Index n) {
    return SymTwoTensor(Matrix<Scalar>::Identity(n, n));
  }

  Index dim() const { return m_.rows(); }
  const Matrix<Scalar>& mat() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

  Scalar trace() const { return m_.trace(); }

  Scalar dot(const SymTwoTensor& other) const {
    if (other.dim() != dim()) throw DimensionError("SymTwoTensor::dot: dimension mismatch");
    return (m_.transpose() * other.m_).trace();
  }
  Scalar norm() const { return std::sqrt(dot(*this)); }

  // Orthogonal projection onto S^2_0(V).
  SymTwoTensor traceless() const {
    Matrix<Scalar> out = m_;
    out -= Matrix<Scalar>::Identity(dim(), dim()) * (trace() / Scalar(dim()));
    return SymTwoTensor(out);
  }

 private:
  Matrix<Scalar> m_;
};

// Two-form, stored as a dense skew matrix (strict lower triangle mirrored
// with a sign flip, so skewness is exact).
template <typename Scalar = double>
class TwoForm {
 public:
  explicit TwoForm(const Matrix<Scalar>& m) : m_(m) {
    if (m.rows() != m.cols()) throw DimensionError("TwoForm: matrix must be square");
    for (Index i = 0; i < m_.rows(); ++i) {
      m_(i, i) = Scalar(0);
      for (Index j = i + 1; j < m_.cols(); ++j) {
        const Scalar v = (m_(i, j) - m_(j, i)) / Scalar(2);
        m_(i, j) = v;
        m_(j, i) = -v;
      }
    }
  }

  static TwoForm zero(Index n) { return TwoForm(Matrix<Scalar>::Zero(n, n)); }

  Index dim() const { return m_.rows(); }
  const Matrix<Scalar>& mat() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }

  Scalar dot(const TwoForm& other) const {
    if (other.dim() != dim()) throw DimensionError("TwoForm::dot: dimension mismatch");
    return (m_.transpose() * other.m_).trace() / Scalar(2);
  }
  Scalar norm() const { return std::sqrt(dot(*this)); }

 private:
  Matrix<Scalar> m_;
};

// u (.) v = u x v + v x u.
template <typename Scalar>
SymTwoTensor<Scalar> sym_product(const Vector<Scalar>& u, const Vector<Scalar>& v) {
  if (u.size() != v.size()) throw DimensionError("sym_product: dimension mismatch");
  Matrix<Scalar> m = u * v.transpose() + v * u.transpose();
  return SymTwoTensor<Scalar>(m);
}

// u ^ v = u x v - v x u.
template <typename Scalar>
TwoForm<Scalar> wedge_product(const Vector<Scalar>& u, const Vector<Scalar>& v) {
  if (u.size() != v.size()) throw DimensionError("wedge_product: dimension mismatch");
  Matrix<Scalar> m = u * v.transpose() - v * u.transpose();
  return TwoForm<Scalar>(m);
}

inline Index lambda2_dim(Index n) { return n * (n - 1) / 2; }
inline Index s20_dim(Index n) { return (n - 1) * (n + 2) / 2; }

// Index pairs (i, j), i < j, in lexicographic order. This ordering is the
// coordinate convention for every matrix on Lambda^2 in the library.
inline std::vector<std::pair<Index, Index>> index_pairs(Index n) {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(static_cast<std::size_t>(lambda2_dim(n)));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// Orthonormal basis {e_i ^ e_j}_{i<j} of Lambda^2(V), lexicographic.
template <typename Scalar = double>
std::vector<TwoForm<Scalar>> basis_lambda2(Index n) {
  if (n < 2) throw DimensionError("basis_lambda2: n must be >= 2");
  std::vector<TwoForm<Scalar>> out;
  for (const auto& [i, j] : index_pairs(n)) {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
    m(i, j) = Scalar(1);
    m(j, i) = Scalar(-1);
    out.push_back(TwoForm<Scalar>(m));
  }
  return out;
}

// Orthonormal basis of S^2_0(V): the (n choose 2) off-diagonal tensors
// e_i (.) e_j / sqrt(2) in lexicographic order, followed by n-1 traceless
// diagonal tensors obtained by Gram-Schmidt on the differences
// e_i (.) e_i - e_{i+1} (.) e_{i+1}.
template <typename Scalar = double>
std::vector<SymTwoTensor<Scalar>> basis_s20(Index n) {
  if (n < 2) throw DimensionError("basis_s20: n must be >= 2");
  std::vector<SymTwoTensor<Scalar>> out;
  out.reserve(static_cast<std::size_t>(s20_dim(n)));
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  for (const auto& [i, j] : index_pairs(n)) {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
    m(i, j) = inv_sqrt2;
    m(j, i) = inv_sqrt2;
    out.push_back(SymTwoTensor<Scalar>(m));
  }
  std::vector<SymTwoTensor<Scalar>> diag;
  for (Index i = 0; i + 1 < n; ++i) {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
    m(i, i) = Scalar(2);
    m(i + 1, i + 1) = Scalar(-2);
    SymTwoTensor<Scalar> cand(m);
    Matrix<Scalar> acc = cand.mat();
    for (const auto& u : diag) acc -= u.dot(cand) * u.mat();
    SymTwoTensor<Scalar> ortho(acc);
    diag.push_back(SymTwoTensor<Scalar>(ortho.mat() / ortho.norm()));
  }
  for (auto& d : diag) out.push_back(std::move(d));
  return out;
}

// Full orthonormal basis of S^2(V): basis_s20 followed by g / sqrt(n).
template <typename Scalar = double>
std::vector<SymTwoTensor<Scalar>> basis_s2(Index n) {
  auto out = basis_s20<Scalar>(n);
  out.push_back(SymTwoTensor<Scalar>(Matrix<Scalar>::Identity(n, n) /
                                     std::sqrt(Scalar(n))));
  return out;
}

}  // namespace cosk
