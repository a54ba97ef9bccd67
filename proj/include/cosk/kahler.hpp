// Kahler-structure validation, bisectional-curvature functionals,
// constrained minimization over complex pairs, and random Kahler tensor
// generation by alternating projections.
#pragma once

#include "cosk/curvature_tensor.hpp"
#include "cosk/model_spaces.hpp"
#include "cosk/operators.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace cosk {

// Substitute J into the last index pair: T_{ijkl} = R(e_i, e_j, J e_k, J e_l).
template <typename Scalar>
CurvatureTensor<Scalar> j_substitute_last(const CurvatureTensor<Scalar>& r,
                                          const ComplexStructure<Scalar>& j) {
  const Index n = r.dim();
  if (j.dim() != n) throw DimensionError("j_substitute_last: dimension mismatch");
  const Matrix<Scalar>& jm = j.mat();
  std::vector<Matrix<Scalar>> blocks(static_cast<std::size_t>(n * n));
  Matrix<Scalar> b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index jj = 0; jj < n; ++jj) {
      for (Index a = 0; a < n; ++a)
        for (Index c = 0; c < n; ++c) b(a, c) = r(i, jj, a, c);
      blocks[static_cast<std::size_t>(i * n + jj)] = jm.transpose() * b * jm;
    }
  return CurvatureTensor<Scalar>::build(n, [&](Index i, Index jj, Index k, Index l) {
    return blocks[static_cast<std::size_t>(i * n + jj)](k, l);
  });
}

// Largest violation of the Kahler identity R(X,Y,Z,W) = R(X,Y,JZ,JW) over
// coordinate slots.
template <typename Scalar>
Scalar j_invariance_defect(const CurvatureTensor<Scalar>& r,
                           const ComplexStructure<Scalar>& j) {
  const CurvatureTensor<Scalar> sub = j_substitute_last(r, j);
  const Index n = r.dim();
  Scalar worst(0);
  for (Index i = 0; i < n; ++i)
    for (Index jj = 0; jj < n; ++jj)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(r(i, jj, k, l) - sub(i, jj, k, l)));
  return worst;
}

// A curvature tensor paired with a compatible complex structure.
template <typename Scalar = double>
struct KahlerStructure {
  CurvatureTensor<Scalar> tensor;
  ComplexStructure<Scalar> structure;
  Scalar j_defect;
};

template <typename Scalar>
KahlerStructure<Scalar> make_kahler(CurvatureTensor<Scalar> r,
                                    ComplexStructure<Scalar> j,
                                    Scalar j_tol = Scalar(1e-9)) {
  if (r.dim() != j.dim()) throw DimensionError("make_kahler: dimension mismatch");
  const Scalar defect = j_invariance_defect(r, j);
  if (defect > j_tol * std::max(r.max_abs(), Scalar(1e-300)))
    throw ValidationError("make_kahler: tensor is not J-invariant within tolerance");
  return {std::move(r), std::move(j), defect};
}

template <typename Scalar = double>
struct ProjectionResult {
  CurvatureTensor<Scalar> tensor;
  int iterations;
  Scalar last_delta;
};

// Alternating orthogonal projections between the J-invariant subspace
// (group average over the pair-slot J substitutions) and the Bianchi
// subspace; both are linear, so the iteration converges to the projection
// onto their intersection.
template <typename Scalar>
ProjectionResult<Scalar> project_kahler(const CurvatureTensor<Scalar>& r,
                                        const ComplexStructure<Scalar>& j,
                                        Scalar tol = Scalar(1e-12),
                                        int max_iter = 500) {
  const Index n = r.dim();
  if (j.dim() != n) throw DimensionError("project_kahler: dimension mismatch");
  CurvatureTensor<Scalar> x = r;
  Scalar delta(0);
  for (int it = 1; it <= max_iter; ++it) {
    const CurvatureTensor<Scalar> t1 = j_substitute_last(x, j);
    // sigma_2 x = pair transpose of t1; sigma_1 sigma_2 x substitutes both.
    const CurvatureTensor<Scalar> t2 =
        CurvatureTensor<Scalar>::build(n, [&](Index a, Index b, Index c, Index d) {
          return t1(c, d, a, b);
        });
    const CurvatureTensor<Scalar> t3 = j_substitute_last(t2, j);
    const CurvatureTensor<Scalar> averaged =
        CurvatureTensor<Scalar>::build(n, [&](Index a, Index b, Index c, Index d) {
          return (x(a, b, c, d) + t1(a, b, c, d) + t2(a, b, c, d) + t3(a, b, c, d)) /
                 Scalar(4);
        });
    const CurvatureTensor<Scalar> next = bianchi_project(averaged);
    const CurvatureTensor<Scalar> diff = next - x;
    delta = diff.max_abs();
    x = next;
    if (delta <= tol * std::max(x.max_abs(), Scalar(1e-300)))
      return {std::move(x), it, delta};
  }
  std::ostringstream msg;
  msg << "project_kahler: max_iter exceeded, last delta " << delta;
  throw ConvergenceError(msg.str());
}

// R(X, JX, Y, JY) for unit vectors.
template <typename Scalar>
Scalar bisectional(const KahlerStructure<Scalar>& k, const Vector<Scalar>& x,
                   const Vector<Scalar>& y) {
  if (std::abs(x.norm() - Scalar(1)) > Scalar(1e-10) ||
      std::abs(y.norm() - Scalar(1)) > Scalar(1e-10))
    throw ValidationError("bisectional: inputs must be unit vectors");
  return eval(k.tensor, x, k.structure.apply(x), y, k.structure.apply(y));
}

// True when X, Y are unit with <X,Y> = <X,JY> = 0; then {X, JX, Y, JY} is
// an orthonormal four-frame.
template <typename Scalar>
bool is_orthogonal_pair(const ComplexStructure<Scalar>& j, const Vector<Scalar>& x,
                        const Vector<Scalar>& y, Scalar tol = Scalar(1e-10)) {
  if (x.size() != j.dim() || y.size() != j.dim())
    throw DimensionError("is_orthogonal_pair: dimension mismatch");
  return std::abs(x.norm() - Scalar(1)) <= tol &&
         std::abs(y.norm() - Scalar(1)) <= tol && std::abs(x.dot(y)) <= tol &&
         std::abs(x.dot(j.apply(y))) <= tol;
}

// | 2 R(X,JX,Y,JY) - [R(X,Y,X,Y) + R(JX,Y,JX,Y) + R(X,JY,X,JY)
//   + R(JX,JY,JX,JY)] |, the first-Bianchi consequence that ties the
// bisectional to four sectional terms on an orthogonal pair.
template <typename Scalar>
Scalar four_sectional_identity_defect(const KahlerStructure<Scalar>& k,
                                      const Vector<Scalar>& x,
                                      const Vector<Scalar>& y) {
  if (!is_orthogonal_pair(k.structure, x, y))
    throw ValidationError("four_sectional_identity_defect: not an orthogonal pair");
  const Vector<Scalar> jx = k.structure.apply(x), jy = k.structure.apply(y);
  const Scalar lhs = Scalar(2) * eval(k.tensor, x, jx, y, jy);
  const Scalar rhs = eval(k.tensor, x, y, x, y) + eval(k.tensor, jx, y, jx, y) +
                     eval(k.tensor, x, jy, x, jy) + eval(k.tensor, jx, jy, jx, jy);
  return std::abs(lhs - rhs);
}

namespace detail {

// Draw a unit X and a unit Y orthogonal to span{X, JX}.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> sample_orthogonal_pair(
    Rng& rng, const ComplexStructure<Scalar>& j) {
  const Index n = j.dim();
  Vector<Scalar> x = rng.gaussian_vector(n).template cast<Scalar>();
  x /= x.norm();
  const Vector<Scalar> jx = j.apply(x);
  for (;;) {
    Vector<Scalar> y = rng.gaussian_vector(n).template cast<Scalar>();
    y -= y.dot(x) * x;
    y -= y.dot(jx) * jx;
    const Scalar nrm = y.norm();
    if (nrm > Scalar(1e-8)) return {x, y / nrm};
  }
}

template <typename Scalar>
Vector<Scalar> reproject_pair_second(const ComplexStructure<Scalar>& j,
                                     const Vector<Scalar>& x, Vector<Scalar> y) {
  const Vector<Scalar> jx = j.apply(x);
  y -= y.dot(x) * x;
  y -= y.dot(jx) * jx;
  return y / y.norm();
}

}  // namespace detail

// Minimize the bisectional over the orthogonality-constrained pairs:
// random sampling, then projected gradient from the best start with
// re-projection onto the constraints after every step. Upper bound for the
// true constrained minimum; deterministic in seed.
template <typename Scalar>
Scalar min_orth_bisectional(const KahlerStructure<Scalar>& k, int samples = 512,
                            int refine_steps = 200, std::uint64_t seed = 0) {
  const Index n = k.tensor.dim();
  if (n < 4)
    throw DimensionError("min_orth_bisectional: no orthogonal pair exists below n = 4");
  if (samples < 1) throw ValidationError("min_orth_bisectional: samples >= 1");
  Rng rng(seed);
  const auto& r = k.tensor;
  const Matrix<Scalar>& jm = k.structure.mat();

  Scalar best(0);
  Vector<Scalar> bx, by;
  for (int s = 0; s < samples; ++s) {
    auto [x, y] = detail::sample_orthogonal_pair(rng, k.structure);
    const Scalar v = eval(r, x, k.structure.apply(x), y, k.structure.apply(y));
    if (s == 0 || v < best) {
      best = v;
      bx = x;
      by = y;
    }
  }

  Vector<Scalar> x = bx, y = by;
  Scalar step(1e-2);
  for (int it = 0; it < refine_steps && step > Scalar(1e-15); ++it) {
    const Vector<Scalar> jx = jm * x, jy = jm * y;
    const Vector<Scalar> gx = eval_first_slot(r, jx, y, jy) -
                              jm.transpose() * eval_first_slot(r, x, y, jy);
    const Vector<Scalar> gy = eval_first_slot(r, jy, x, jx) -
                              jm.transpose() * eval_first_slot(r, y, x, jx);
    Vector<Scalar> xn = x - step * gx;
    xn /= xn.norm();
    const Vector<Scalar> yn = detail::reproject_pair_second(k.structure, xn, y - step * gy);
    const Scalar v = eval(r, xn, jm * xn, yn, jm * yn);
    if (v < best) {
      x = xn;
      y = yn;
      best = v;
      step = std::min(step * Scalar(1.5), Scalar(0.1));
    } else {
      step /= Scalar(2);
    }
  }
  return best;
}

// Random J-invariant algebraic curvature tensor: the generic fuzz sample is
// projected into the intersection of the Bianchi and J-invariant subspaces.
// With ensure_six_nonneg, a multiple of the constant-holomorphic-curvature
// tensor is added (the shift must stay inside the Kahler subspace) with the
// coefficient grown geometrically and then bisected to near-minimal, so the
// output satisfies alpha_sum(., 6) >= delta. If no multiple can achieve
// that -- the six-sum of the shifted family is concave in t and may peak
// below zero -- ShiftInfeasibleError reports the best achievable value.
template <typename Scalar = double>
KahlerStructure<Scalar> random_kahler_act(Index m, std::uint64_t seed,
                                          bool ensure_six_nonneg = false) {
  if (m < 2) throw DimensionError("random_kahler_act: m must be >= 2");
  const Index n = 2 * m;
  auto j = ComplexStructure<Scalar>::standard(n);
  CurvatureTensor<Scalar> base =
      project_kahler(random_act<Scalar>(n, seed), j).tensor;
  if (!ensure_six_nonneg) return make_kahler(std::move(base), std::move(j));

  auto six_sum = [](const CurvatureTensor<Scalar>& t) {
    return alpha_sum(sym_eigen(r_ring_s20_matrix(t)).values, Scalar(6));
  };
  const Scalar scale0 = std::max(base.max_abs(), Scalar(1));
  const Scalar delta = Scalar(1e-6) * scale0;
  if (six_sum(base) >= delta) return make_kahler(std::move(base), std::move(j));

  const CurvatureTensor<Scalar> shift = fubini_study<Scalar>(m, Scalar(1)).tensor;
  Scalar t = scale0;
  Scalar f_prev = six_sum(base + t * shift);
  Scalar best_seen = std::max(six_sum(base), f_prev);
  while (f_prev < delta) {
    const Scalar f_next = six_sum(base + (Scalar(2) * t) * shift);
    best_seen = std::max(best_seen, f_next);
    if (f_next <= f_prev) {
      // Concave in t and already descending: no multiple will ever work.
      std::ostringstream msg;
      msg << "random_kahler_act: no shift multiple reaches alpha_sum(.,6) >= "
          << delta << " at m = " << m << "; best achievable " << best_seen;
      throw ShiftInfeasibleError(msg.str());
    }
    t *= Scalar(2);
    f_prev = f_next;
  }

  Scalar lo(0), hi = t;  // six_sum at hi >= delta, at lo < delta
  for (int it = 0; it < 80 && (hi - lo) > Scalar(1e-12) * hi; ++it) {
    const Scalar mid = (lo + hi) / Scalar(2);
    if (six_sum(base + mid * shift) >= delta)
      hi = mid;
    else
      lo = mid;
  }
  return make_kahler(base + hi * shift, std::move(j));
}

}  // namespace cosk
