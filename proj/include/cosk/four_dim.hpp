// Dimension-four structure: the Hodge star splitting of Lambda^2, the
// block form of the first-kind operator, W+/W- spectra, and the 9x9 normal
// form of the second-kind operator built from products of self-dual and
// anti-self-dual eigenforms. In that basis the diagonal blocks are
// predicted entrywise by -(lambda_a + mu_b) + S/12 and the off-diagonal
// blocks are skew, vanishing exactly in the Einstein case.
#pragma once

#include "cosk/curvature_tensor.hpp"
#include "cosk/kahler.hpp"
#include "cosk/operators.hpp"
#include "cosk/spectral.hpp"

#include <array>
#include <cmath>
#include <string>

namespace cosk {

template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

// Hodge star on Lambda^2(R^4) in the lexicographic wedge basis, for the
// orientation given by e1 ^ e2 ^ e3 ^ e4 (+1) or its reverse (-1).
template <typename Scalar = double>
Matrix<Scalar> hodge_star_matrix(int orientation = +1) {
  if (orientation != +1 && orientation != -1)
    throw ValidationError("hodge_star_matrix: orientation must be +1 or -1");
  Matrix<Scalar> s = Matrix<Scalar>::Zero(6, 6);
  s(5, 0) = 1;
  s(4, 1) = -1;
  s(3, 2) = 1;
  s(2, 3) = 1;
  s(1, 4) = -1;
  s(0, 5) = 1;
  return Scalar(orientation) * s;
}

namespace detail {

// Columns: coordinates of w1+, w2+, w3+, w1-, w2-, w3- in the lex wedge
// basis (an orthogonal matrix).
template <typename Scalar>
Matrix<Scalar> pm_coordinate_matrix(int orientation) {
  const Scalar is2 = Scalar(1) / std::sqrt(Scalar(2));
  Matrix<Scalar> p = Matrix<Scalar>::Zero(6, 6);
  // (b1 +- b6)/s, (b2 -+ b5)/s, (b3 +- b4)/s
  p(0, 0) = is2; p(5, 0) = is2;
  p(1, 1) = is2; p(4, 1) = -is2;
  p(2, 2) = is2; p(3, 2) = is2;
  p(0, 3) = is2; p(5, 3) = -is2;
  p(1, 4) = is2; p(4, 4) = is2;
  p(2, 5) = is2; p(3, 5) = -is2;
  if (orientation == -1) {
    Matrix<Scalar> swapped(6, 6);
    swapped << p.rightCols(3), p.leftCols(3);
    return swapped;
  }
  return p;
}

template <typename Scalar>
TwoForm<Scalar> form_from_lambda2_coords(const Vector<Scalar>& coords) {
  const auto pairs = index_pairs(4);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(4, 4);
  for (Index p = 0; p < 6; ++p) {
    m(pairs[p].first, pairs[p].second) += coords[p];
    m(pairs[p].second, pairs[p].first) -= coords[p];
  }
  return TwoForm<Scalar>(m);
}

}  // namespace detail

// Unit eigenforms of the star operator: first three self-dual, last three
// anti-self-dual (for the chosen orientation).
template <typename Scalar = double>
std::array<TwoForm<Scalar>, 6> lambda_pm_bases(int orientation = +1) {
  if (orientation != +1 && orientation != -1)
    throw ValidationError("lambda_pm_bases: orientation must be +1 or -1");
  const Matrix<Scalar> p = detail::pm_coordinate_matrix<Scalar>(orientation);
  return {detail::form_from_lambda2_coords<Scalar>(p.col(0)),
          detail::form_from_lambda2_coords<Scalar>(p.col(1)),
          detail::form_from_lambda2_coords<Scalar>(p.col(2)),
          detail::form_from_lambda2_coords<Scalar>(p.col(3)),
          detail::form_from_lambda2_coords<Scalar>(p.col(4)),
          detail::form_from_lambda2_coords<Scalar>(p.col(5))};
}

template <typename Scalar = double>
struct RhatBlocks {
  Matrix3<Scalar> a_plus;   // S/12 id + W+
  Matrix3<Scalar> b;        // traceless-Ricci coupling, zero iff Einstein
  Matrix3<Scalar> a_minus;  // S/12 id + W-
};

// The 6x6 first-kind matrix conjugated into the (w+, w-) eigenform basis.
template <typename Scalar>
RhatBlocks<Scalar> r_hat_blocks(const CurvatureTensor<Scalar>& r,
                                int orientation = +1) {
  if (r.dim() != 4) throw DimensionError("r_hat_blocks: requires n = 4");
  const Matrix<Scalar> p = detail::pm_coordinate_matrix<Scalar>(orientation);
  const Matrix<Scalar> m = p.transpose() * r_hat_matrix(r) * p;
  RhatBlocks<Scalar> out;
  out.a_plus = m.template block<3, 3>(0, 0);
  out.b = m.template block<3, 3>(0, 3);
  out.a_minus = m.template block<3, 3>(3, 3);
  return out;
}

template <typename Scalar = double>
struct WpmEigen {
  Vector3<Scalar> lambda;  // eigenvalues of W+, descending
  Vector3<Scalar> mu;      // eigenvalues of W-, descending
  std::array<TwoForm<Scalar>, 3> plus_forms;
  std::array<TwoForm<Scalar>, 3> minus_forms;
};

// Eigen-decomposition of the Weyl restrictions A+- - S/12 id. Descending
// order puts the distinguished eigenvalue first on Kahler input.
template <typename Scalar>
WpmEigen<Scalar> w_pm_eigen(const CurvatureTensor<Scalar>& r, int orientation = +1) {
  if (r.dim() != 4) throw DimensionError("w_pm_eigen: requires n = 4");
  const Scalar s = scalar_curv(r);
  const RhatBlocks<Scalar> blocks = r_hat_blocks(r, orientation);
  const Matrix<Scalar> p = detail::pm_coordinate_matrix<Scalar>(orientation);

  WpmEigen<Scalar> out{
      Vector3<Scalar>::Zero(),
      Vector3<Scalar>::Zero(),
      {TwoForm<Scalar>::zero(4), TwoForm<Scalar>::zero(4), TwoForm<Scalar>::zero(4)},
      {TwoForm<Scalar>::zero(4), TwoForm<Scalar>::zero(4), TwoForm<Scalar>::zero(4)}};
  for (int side = 0; side < 2; ++side) {
    const Matrix3<Scalar> w3 =
        (side == 0 ? blocks.a_plus : blocks.a_minus) -
        Matrix3<Scalar>::Identity() * (s / Scalar(12));
    const auto ed = sym_eigen(Matrix<Scalar>(w3));
    for (int k = 0; k < 3; ++k) {
      const Index src = 2 - k;  // descending
      // Eigenform in Lambda^2 coordinates through the +- coordinate block.
      Vector<Scalar> coords = Vector<Scalar>::Zero(6);
      for (Index c = 0; c < 3; ++c)
        coords += ed.vectors(c, src) * p.col(side == 0 ? c : c + 3);
      if (side == 0) {
        out.lambda[k] = ed.values[src];
        out.plus_forms[static_cast<std::size_t>(k)] =
            detail::form_from_lambda2_coords<Scalar>(coords);
      } else {
        out.mu[k] = ed.values[src];
        out.minus_forms[static_cast<std::size_t>(k)] =
            detail::form_from_lambda2_coords<Scalar>(coords);
      }
    }
  }
  return out;
}

// Basis phi_(a,b) = (matrix product) w_a+ . w_b-, a major, b minor. Each
// product of unit eigenforms from opposite sides is symmetric, traceless,
// and unit-norm; the nine together are orthonormal in S^2_0.
template <typename Scalar>
std::array<SymTwoTensor<Scalar>, 9> cgt_basis(const CurvatureTensor<Scalar>& r,
                                              int orientation = +1) {
  const WpmEigen<Scalar> w = w_pm_eigen(r, orientation);
  std::array<SymTwoTensor<Scalar>, 9> out = {
      SymTwoTensor<Scalar>::zero(4), SymTwoTensor<Scalar>::zero(4),
      SymTwoTensor<Scalar>::zero(4), SymTwoTensor<Scalar>::zero(4),
      SymTwoTensor<Scalar>::zero(4), SymTwoTensor<Scalar>::zero(4),
      SymTwoTensor<Scalar>::zero(4), SymTwoTensor<Scalar>::zero(4),
      SymTwoTensor<Scalar>::zero(4)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      SymTwoTensor<Scalar> prod(
          Matrix<Scalar>(w.plus_forms[static_cast<std::size_t>(a)].mat() *
                         w.minus_forms[static_cast<std::size_t>(b)].mat()));
      if (std::abs(prod.trace()) > Scalar(1e-9) ||
          std::abs(prod.norm() - Scalar(1)) > Scalar(1e-9))
        throw ValidationError("cgt_basis: eigenform product failed unit/traceless check");
      out[static_cast<std::size_t>(a * 3 + b)] = std::move(prod);
    }
  return out;
}

template <typename Scalar = double>
struct CgtBlocks {
  std::array<SymTwoTensor<Scalar>, 9> basis;
  Matrix<Scalar> matrix;               // 9x9 representation in `basis`
  std::array<Matrix3<Scalar>, 3> d;    // diagonal blocks
  std::array<Matrix3<Scalar>, 3> o;    // blocks (1,2), (1,3), (2,3)
  Vector3<Scalar> lambda, mu;
  Scalar scalar;
  Scalar d_defect;       // worst |D entry - predicted|
  Scalar o_skew_defect;  // worst |O + O^T| entry
  Scalar o_norm;         // sqrt(sum of squared O entries)
};

template <typename Scalar>
CgtBlocks<Scalar> cgt_blocks(const CurvatureTensor<Scalar>& r, int orientation = +1) {
  if (r.dim() != 4) throw DimensionError("cgt_blocks: requires n = 4");
  CgtBlocks<Scalar> out{cgt_basis(r, orientation),
                        Matrix<Scalar>(9, 9),
                        {},
                        {},
                        Vector3<Scalar>::Zero(),
                        Vector3<Scalar>::Zero(),
                        Scalar(0),
                        Scalar(0),
                        Scalar(0),
                        Scalar(0)};
  const WpmEigen<Scalar> w = w_pm_eigen(r, orientation);
  out.lambda = w.lambda;
  out.mu = w.mu;
  out.scalar = scalar_curv(r);
  for (Index p = 0; p < 9; ++p)
    for (Index q = p; q < 9; ++q) {
      const Scalar v = r_ring_pair(r, out.basis[static_cast<std::size_t>(p)],
                                   out.basis[static_cast<std::size_t>(q)]);
      out.matrix(p, q) = v;
      out.matrix(q, p) = v;
    }

  const Scalar s12 = out.scalar / Scalar(12);
  Scalar o_sq(0);
  for (int a = 0; a < 3; ++a) {
    out.d[static_cast<std::size_t>(a)] = out.matrix.template block<3, 3>(3 * a, 3 * a);
    for (int rr = 0; rr < 3; ++rr)
      for (int cc = 0; cc < 3; ++cc) {
        const Scalar predicted =
            (rr == cc) ? -(out.lambda[a] + out.mu[rr]) + s12 : Scalar(0);
        out.d_defect = std::max(
            out.d_defect,
            std::abs(out.d[static_cast<std::size_t>(a)](rr, cc) - predicted));
      }
  }
  const std::array<std::pair<int, int>, 3> off = {{{0, 1}, {0, 2}, {1, 2}}};
  for (std::size_t t = 0; t < 3; ++t) {
    const Matrix3<Scalar> blk =
        out.matrix.template block<3, 3>(3 * off[t].first, 3 * off[t].second);
    out.o[t] = blk;
    out.o_skew_defect = std::max(out.o_skew_defect,
                                 Scalar((blk + blk.transpose()).cwiseAbs().maxCoeff()));
    o_sq += blk.squaredNorm();
  }
  out.o_norm = std::sqrt(o_sq);
  return out;
}

// Traceless-Ricci test at tol relative to the component scale.
template <typename Scalar>
bool is_einstein(const CurvatureTensor<Scalar>& r, Scalar tol = Scalar(1e-10)) {
  return ricci(r).traceless().norm() <= tol * std::max(r.max_abs(), Scalar(1e-300));
}

enum class RigidityVerdict { kCp2Type, kFlat, kInconclusive };

inline const char* to_string(RigidityVerdict v) {
  switch (v) {
    case RigidityVerdict::kCp2Type: return "cp2-type";
    case RigidityVerdict::kFlat: return "flat";
    default: return "inconclusive";
  }
}

template <typename Scalar = double>
struct RigidityCertificate {
  Scalar einstein_defect;  // |Ric - (S/n) g|
  Scalar w_minus_norm;     // |W-| as a block on Lambda-
  Scalar scalar;
  RigidityVerdict verdict;
};

// The three algebraic conclusions reachable from a Kahler surface:
// Einstein, W- = 0, S >= 0. "cp2-type" certifies all three with S > 0,
// "flat" certifies a vanishing tensor; no topological claim is made.
template <typename Scalar>
RigidityCertificate<Scalar> rigidity_certificate(const KahlerStructure<Scalar>& k,
                                                 Scalar tol = Scalar(1e-8)) {
  if (k.tensor.dim() != 4) throw DimensionError("rigidity_certificate: requires n = 4");
  RigidityCertificate<Scalar> cert{};
  cert.scalar = scalar_curv(k.tensor);
  cert.einstein_defect = ricci(k.tensor).traceless().norm();
  const RhatBlocks<Scalar> blocks = r_hat_blocks(k.tensor);
  cert.w_minus_norm =
      (blocks.a_minus - Matrix3<Scalar>::Identity() * (cert.scalar / Scalar(12)))
          .norm();
  const Scalar scale = k.tensor.max_abs();
  if (scale <= tol)
    cert.verdict = RigidityVerdict::kFlat;
  else if (cert.scalar > Scalar(0) && cert.einstein_defect <= tol * scale &&
           cert.w_minus_norm <= tol * scale)
    cert.verdict = RigidityVerdict::kCp2Type;
  else
    cert.verdict = RigidityVerdict::kInconclusive;
  return cert;
}

}  // namespace cosk
