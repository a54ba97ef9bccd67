// The two curvature operators induced by an algebraic curvature tensor:
// the action on two-forms (r_hat_matrix) and the bilinear form on traceless
// symmetric two-tensors (r_ring_*), together with fractional eigenvalue
// partial sums and the four-frame machinery built on a distinguished
// orthonormal 9-subset of S^2_0.
#pragma once

#include "cosk/curvature_tensor.hpp"
#include "cosk/spectral.hpp"
#include "cosk/sym_tensors.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace cosk {

// Matrix of the curvature operator on Lambda^2 in the lexicographic wedge
// basis; entry ((i,j),(k,l)) is R_{ijkl}.
template <typename Scalar>
Matrix<Scalar> r_hat_matrix(const CurvatureTensor<Scalar>& r) {
  const auto pairs = index_pairs(r.dim());
  const Index m = static_cast<Index>(pairs.size());
  Matrix<Scalar> out(m, m);
  for (Index p = 0; p < m; ++p)
    for (Index q = 0; q < m; ++q)
      out(p, q) = r(pairs[p].first, pairs[p].second, pairs[q].first, pairs[q].second);
  return out;
}

// The bilinear form sum_{ijkl} R_{ijkl} phi_{il} psi_{jk}, symmetric in
// (phi, psi) and linear in each slot.
template <typename Scalar>
Scalar r_ring_pair(const CurvatureTensor<Scalar>& r, const SymTwoTensor<Scalar>& phi,
                   const SymTwoTensor<Scalar>& psi) {
  const Index n = r.dim();
  if (phi.dim() != n || psi.dim() != n)
    throw DimensionError("r_ring_pair: dimension mismatch");
  Scalar acc(0);
  for (Index i = 0; i < n; ++i)
    for (Index l = 0; l < n; ++l) {
      const Scalar f = phi(i, l);
      if (f == Scalar(0)) continue;
      Scalar inner(0);
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) inner += r(i, j, k, l) * psi(j, k);
      acc += f * inner;
    }
  return acc;
}

// The same form through the operator route: phi is expanded over the
// symmetric products e_i (.) e_j and the defining action is applied
// term by term. Cross-asserted against r_ring_pair in the test suite.
template <typename Scalar>
SymTwoTensor<Scalar> r_ring_apply(const CurvatureTensor<Scalar>& r,
                                  const SymTwoTensor<Scalar>& phi) {
  const Index n = r.dim();
  if (phi.dim() != n) throw DimensionError("r_ring_apply: dimension mismatch");
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      const Scalar c = (i == j) ? phi(i, i) / Scalar(2) : phi(i, j);
      if (c == Scalar(0)) continue;
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) out(a, b) += c * (r(i, a, b, j) + r(i, b, a, j));
    }
  return SymTwoTensor<Scalar>(out);
}

// Matrix of the second-kind form over basis_s20.
template <typename Scalar>
Matrix<Scalar> r_ring_s20_matrix(const CurvatureTensor<Scalar>& r) {
  const auto basis = basis_s20<Scalar>(r.dim());
  const Index m = static_cast<Index>(basis.size());
  Matrix<Scalar> out(m, m);
  for (Index p = 0; p < m; ++p)
    for (Index q = p; q < m; ++q) {
      const Scalar v = r_ring_pair(r, basis[static_cast<std::size_t>(p)],
                                   basis[static_cast<std::size_t>(q)]);
      out(p, q) = v;
      out(q, p) = v;
    }
  return out;
}

// Partial eigenvalue sum with fractional weight: the floor-many smallest
// eigenvalues plus the fractional remainder times the next one. At integer
// alpha the fractional term vanishes, making the sum continuous in alpha.
template <typename Scalar>
Scalar alpha_sum(const Vector<Scalar>& eigs_ascending, Scalar alpha) {
  const Index n = eigs_ascending.size();
  if (!(alpha >= Scalar(1) && alpha <= Scalar(n)))
    throw ValidationError("alpha_sum: alpha out of [1, N]");
  const Index fl = static_cast<Index>(std::floor(alpha));
  Scalar s(0);
  for (Index i = 0; i < fl; ++i) s += eigs_ascending[i];
  const Scalar frac = alpha - Scalar(fl);
  if (frac > Scalar(0)) s += frac * eigs_ascending[fl];
  return s;
}

// Largest-magnitude eigenvalue, the scale for positivity verdicts.
template <typename Scalar>
Scalar spectral_scale(const Vector<Scalar>& eigs) {
  return eigs.size() == 0 ? Scalar(0) : eigs.cwiseAbs().maxCoeff();
}

// The alpha at which the cumulative sum crosses zero. alpha_sum is
// piecewise linear in alpha with nondecreasing slopes, so on [1, N] it is
// nonnegative exactly on [root, N]: the root is returned, N when every
// eigenvalue is nonnegative, nothing when even the full sum is negative.
template <typename Scalar>
std::optional<Scalar> max_alpha(const Vector<Scalar>& eigs_ascending) {
  const Index n = eigs_ascending.size();
  if (n == 0) return std::nullopt;
  if (eigs_ascending[0] >= Scalar(0)) return Scalar(n);
  Scalar total(0);
  for (Index i = 0; i < n; ++i) total += eigs_ascending[i];
  if (total < Scalar(0)) return std::nullopt;
  Scalar cum = eigs_ascending[0];  // alpha_sum at alpha = 1
  for (Index k = 1; k < n; ++k) {
    const Scalar next = cum + eigs_ascending[k];
    if (cum < Scalar(0) && next >= Scalar(0))
      return Scalar(k) - cum / eigs_ascending[k];
    cum = next;
  }
  return Scalar(n);  // unreachable for ascending data; keeps the contract total
}

template <typename Scalar = double>
struct SpectrumReport {
  Index n = 0;
  Index big_n = 0;                  // dim S^2_0 = (n-1)(n+2)/2
  Vector<Scalar> eigs;              // ascending eigenvalues on S^2_0
  Scalar scalar = Scalar(0);        // S
  std::optional<Scalar> alpha_max;  // see max_alpha
};

template <typename Scalar>
SpectrumReport<Scalar> cosk_spectrum(const CurvatureTensor<Scalar>& r) {
  SpectrumReport<Scalar> rep;
  rep.n = r.dim();
  rep.big_n = s20_dim(r.dim());
  rep.eigs = sym_eigen(r_ring_s20_matrix(r)).values;
  rep.scalar = scalar_curv(r);
  rep.alpha_max = max_alpha(rep.eigs);
  return rep;
}

// Positivity verdicts, thresholded at tol relative to the spectral scale
// (equivalently: absolute tol after normalizing the largest eigenvalue
// magnitude to one). The default separates roundoff from genuine zero modes.
template <typename Scalar>
bool is_alpha_nonneg(const CurvatureTensor<Scalar>& r, Scalar alpha,
                     Scalar tol = Scalar(1e-9)) {
  const auto eigs = sym_eigen(r_ring_s20_matrix(r)).values;
  return alpha_sum(eigs, alpha) >= -tol * spectral_scale(eigs);
}

template <typename Scalar>
bool is_alpha_positive(const CurvatureTensor<Scalar>& r, Scalar alpha,
                       Scalar tol = Scalar(1e-9)) {
  const auto eigs = sym_eigen(r_ring_s20_matrix(r)).values;
  return alpha_sum(eigs, alpha) > tol * spectral_scale(eigs);
}

// Monte Carlo probe of the basis-minimum formulation: the partial-sum
// expression is evaluated over random orthonormal families in S^2_0, with
// the eigenbasis injected as trial zero so the known minimum is always
// attained. Ky Fan's principle says no trial can go below alpha_sum.
template <typename Scalar>
Scalar min_basis_sum_montecarlo(const CurvatureTensor<Scalar>& r, Scalar alpha,
                                int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("min_basis_sum_montecarlo: trials >= 1");
  const Matrix<Scalar> m = r_ring_s20_matrix(r);
  const Index big_n = m.rows();
  if (!(alpha >= Scalar(1) && alpha <= Scalar(big_n)))
    throw ValidationError("min_basis_sum_montecarlo: alpha out of [1, N]");
  const auto ed = sym_eigen(m);
  Scalar best = alpha_sum(ed.values, alpha);

  const Index fl = static_cast<Index>(std::floor(alpha));
  const Scalar frac = alpha - Scalar(fl);
  const Index cols = fl + (frac > Scalar(0) ? 1 : 0);
  Rng rng(seed);
  for (int t = 1; t < trials; ++t) {
    const Matrix<double> q = rng.stiefel(big_n, cols);
    Scalar s(0);
    for (Index c = 0; c < fl; ++c) {
      const Vector<Scalar> col = q.col(c).template cast<Scalar>();
      s += col.dot(m * col);
    }
    if (frac > Scalar(0)) {
      const Vector<Scalar> col = q.col(fl).template cast<Scalar>();
      s += frac * col.dot(m * col);
    }
    best = std::min(best, s);
  }
  return best;
}

// The nine traceless symmetric two-tensors attached to an orthonormal
// four-frame {f1, f2, f3, f4} in ambient dimension n >= 4:
//
//   phi1 = (f1.f1 + f2.f2 - f3.f3 - f4.f4)/4,
//   phi2..phi5 = f1.f3/s, f1.f4/s, f2.f3/s, f2.f4/s      (s = sqrt 2),
//   phi6, phi7 = f1.f2/s, f3.f4/s,
//   phi8, phi9 = (f1.f1 - f2.f2)/(2s), (f3.f3 - f4.f4)/(2s),
//
// an orthonormal subset of S^2_0(V).
template <typename Scalar>
std::array<SymTwoTensor<Scalar>, 9> phi_frame_basis(const Matrix<Scalar>& frame) {
  const Index n = frame.rows();
  if (frame.cols() != 4 || n < 4)
    throw DimensionError("phi_frame_basis: frame must be n x 4 with n >= 4");
  const Matrix<Scalar> gram =
      frame.transpose() * frame - Matrix<Scalar>::Identity(4, 4);
  if (gram.cwiseAbs().maxCoeff() > Scalar(1e-10))
    throw ValidationError("phi_frame_basis: frame not orthonormal");

  const Vector<Scalar> f1 = frame.col(0), f2 = frame.col(1), f3 = frame.col(2),
                       f4 = frame.col(3);
  const Scalar is2 = Scalar(1) / std::sqrt(Scalar(2));
  auto scaled = [](Scalar c, const SymTwoTensor<Scalar>& t) {
    return SymTwoTensor<Scalar>(c * t.mat());
  };
  const auto p11 = sym_product(f1, f1), p22 = sym_product(f2, f2),
             p33 = sym_product(f3, f3), p44 = sym_product(f4, f4);
  return {
      SymTwoTensor<Scalar>((p11.mat() + p22.mat() - p33.mat() - p44.mat()) / Scalar(4)),
      scaled(is2, sym_product(f1, f3)),
      scaled(is2, sym_product(f1, f4)),
      scaled(is2, sym_product(f2, f3)),
      scaled(is2, sym_product(f2, f4)),
      scaled(is2, sym_product(f1, f2)),
      scaled(is2, sym_product(f3, f4)),
      SymTwoTensor<Scalar>((p11.mat() - p22.mat()) / (Scalar(2) * std::sqrt(Scalar(2)))),
      SymTwoTensor<Scalar>((p33.mat() - p44.mat()) / (Scalar(2) * std::sqrt(Scalar(2)))),
  };
}

// R(f1,f3,f1,f3) + R(f1,f4,f1,f4) + R(f2,f3,f2,f3) + R(f2,f4,f2,f4).
template <typename Scalar>
Scalar frame_quad_sum(const CurvatureTensor<Scalar>& r, const Matrix<Scalar>& frame) {
  const Index n = r.dim();
  if (n < 4) throw DimensionError("frame_quad_sum: requires n >= 4");
  if (frame.rows() != n || frame.cols() != 4)
    throw DimensionError("frame_quad_sum: frame must be n x 4");
  const Matrix<Scalar> gram =
      frame.transpose() * frame - Matrix<Scalar>::Identity(4, 4);
  if (gram.cwiseAbs().maxCoeff() > Scalar(1e-10))
    throw ValidationError("frame_quad_sum: frame not orthonormal");
  Scalar s(0);
  constexpr int pairs[4][2] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  for (const auto& p : pairs) {
    const Vector<Scalar> a = frame.col(p[0]), b = frame.col(p[1]);
    s += eval(r, a, b, a, b);
  }
  return s;
}

namespace detail {

// Column-wise Gram-Schmidt retraction back onto the orthonormal-frame
// manifold.
template <typename Scalar>
Matrix<Scalar> orthonormalize_columns(Matrix<Scalar> f) {
  for (Index c = 0; c < f.cols(); ++c) {
    for (Index p = 0; p < c; ++p) f.col(c) -= f.col(p).dot(f.col(c)) * f.col(p);
    f.col(c) /= f.col(c).norm();
  }
  return f;
}

template <typename Scalar>
Matrix<Scalar> frame_quad_gradient(const CurvatureTensor<Scalar>& r,
                                   const Matrix<Scalar>& f) {
  Matrix<Scalar> g = Matrix<Scalar>::Zero(f.rows(), 4);
  constexpr int pairs[4][2] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  for (const auto& p : pairs) {
    const Vector<Scalar> a = f.col(p[0]), b = f.col(p[1]);
    g.col(p[0]) += Scalar(2) * eval_first_slot(r, b, a, b);
    g.col(p[1]) -= Scalar(2) * eval_first_slot(r, a, a, b);
  }
  return g;
}

}  // namespace detail

// Minimize frame_quad_sum over orthonormal four-frames: multi-start random
// sampling, then projected gradient from the best start with step halving
// on non-decrease. The result is always an upper bound for the true
// minimum; determinism follows from the seed.
template <typename Scalar>
Scalar min_frame_quad_sum(const CurvatureTensor<Scalar>& r, int samples = 256,
                          int refine_steps = 200, std::uint64_t seed = 0) {
  const Index n = r.dim();
  if (n < 4) throw DimensionError("min_frame_quad_sum: requires n >= 4");
  if (samples < 1) throw ValidationError("min_frame_quad_sum: samples >= 1");
  Rng rng(seed);
  Scalar best(0);
  Matrix<Scalar> best_frame;
  for (int s = 0; s < samples; ++s) {
    const Matrix<Scalar> f = rng.stiefel(n, 4).template cast<Scalar>();
    const Scalar v = frame_quad_sum(r, f);
    if (s == 0 || v < best) {
      best = v;
      best_frame = f;
    }
  }
  Matrix<Scalar> f = best_frame;
  Scalar step(1e-2);
  for (int it = 0; it < refine_steps && step > Scalar(1e-15); ++it) {
    const Matrix<Scalar> g = detail::frame_quad_gradient(r, f);
    const Matrix<Scalar> cand = detail::orthonormalize_columns<Scalar>(f - step * g);
    const Scalar v = frame_quad_sum(r, cand);
    if (v < best) {
      f = cand;
      best = v;
      step = std::min(step * Scalar(1.5), Scalar(0.1));
    } else {
      step /= Scalar(2);
    }
  }
  return best;
}

// R + kappa * (constant curvature one tensor): shifts every eigenvalue of
// the second-kind operator on S^2_0 by exactly kappa.
template <typename Scalar>
CurvatureTensor<Scalar> shift_constant_curvature(const CurvatureTensor<Scalar>& r,
                                                 Scalar kappa) {
  return CurvatureTensor<Scalar>::build(r.dim(), [&](Index i, Index j, Index k, Index l) {
    const Scalar sf = ((i == k && j == l) ? Scalar(1) : Scalar(0)) -
                      ((i == l && j == k) ? Scalar(1) : Scalar(0));
    return r(i, j, k, l) + kappa * sf;
  });
}

}  // namespace cosk
