// Algebraic curvature tensors: dense rank-4 arrays R_{ijkl} carrying the
// index symmetries
//
//   R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij}
//
// bit-for-bit (every constructor evaluates canonical slots i<j, k<l,
// (i,j) <= (k,l) only and writes all eight symmetry images), plus the first
// Bianchi identity, which is validated rather than forced: bianchi_defect
// measures it and bianchi_project removes the obstruction.
//
// Sign convention: R_{ijij} is the sectional curvature of the (e_i, e_j)
// plane, so constant curvature kappa means
// R_{ijkl} = kappa (d_{ik} d_{jl} - d_{il} d_{jk}).
// Ricci is Ric_{jl} = sum_k R_{kjkl} (giving (n-1) kappa g on space forms)
// and the scalar curvature is its trace.
//
// Indices are 0-based here; file formats and reports are 1-based.
#pragma once

#include "cosk/common.hpp"
#include "cosk/sym_tensors.hpp"

#include <utility>
#include <vector>

namespace cosk {

template <typename Scalar = double>
class CurvatureTensor {
 public:
  static constexpr Index kMinDim = 2;
  static constexpr Index kMaxDim = 8;

  struct Slot {
    Index i, j, k, l;  // i < j, k < l, (i,j) <= (k,l) lexicographically
  };

  static std::vector<Slot> canonical_slots(Index n) {
    const auto pairs = index_pairs(n);
    std::vector<Slot> out;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t q = p; q < pairs.size(); ++q)
        out.push_back({pairs[p].first, pairs[p].second, pairs[q].first, pairs[q].second});
    return out;
  }

  // The one constructor every operation funnels through: f is evaluated at
  // canonical slots only and the result is written to all symmetry images,
  // which makes the index symmetries exact by construction.
  template <typename F>
  static CurvatureTensor build(Index n, F&& f) {
    CurvatureTensor r(n);
    for (const Slot& s : canonical_slots(n)) {
      r.write_images(s.i, s.j, s.k, s.l, f(s.i, s.j, s.k, s.l));
    }
    return r;
  }

  static CurvatureTensor zero(Index n) { return CurvatureTensor(n); }

  Index dim() const { return n_; }

  Scalar operator()(Index i, Index j, Index k, Index l) const {
    return c_[idx(i, j, k, l)];
  }

  // Max-abs component norm, the scale used by validation tolerances.
  Scalar max_abs() const {
    Scalar m(0);
    for (const Scalar& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  CurvatureTensor& operator+=(const CurvatureTensor& o) {
    check_same_dim(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    return *this;
  }
  CurvatureTensor& operator-=(const CurvatureTensor& o) {
    check_same_dim(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] -= o.c_[t];
    return *this;
  }
  CurvatureTensor& operator*=(Scalar s) {
    for (Scalar& v : c_) v *= s;
    return *this;
  }

  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) {
    a += b;
    return a;
  }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) {
    a -= b;
    return a;
  }
  friend CurvatureTensor operator*(Scalar s, CurvatureTensor r) {
    r *= s;
    return r;
  }

  bool operator==(const CurvatureTensor& o) const {
    return n_ == o.n_ && c_ == o.c_;
  }

 private:
  explicit CurvatureTensor(Index n) : n_(n) {
    if (n < kMinDim || n > kMaxDim)
      throw DimensionError("CurvatureTensor: dimension must be in [2, 8]");
    c_.assign(static_cast<std::size_t>(n * n * n * n), Scalar(0));
  }

  std::size_t idx(Index i, Index j, Index k, Index l) const {
    return static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }

  void write_images(Index i, Index j, Index k, Index l, Scalar v) {
    c_[idx(i, j, k, l)] = v;
    c_[idx(j, i, k, l)] = -v;
    c_[idx(i, j, l, k)] = -v;
    c_[idx(j, i, l, k)] = v;
    c_[idx(k, l, i, j)] = v;
    c_[idx(l, k, i, j)] = -v;
    c_[idx(k, l, j, i)] = -v;
    c_[idx(l, k, j, i)] = v;
  }

  void check_same_dim(const CurvatureTensor& o) const {
    if (o.n_ != n_) throw DimensionError("CurvatureTensor: dimension mismatch");
  }

  Index n_;
  std::vector<Scalar> c_;
};

// R(X, Y, Z, W) by staged contraction.
template <typename Scalar>
Scalar eval(const CurvatureTensor<Scalar>& r, const Vector<Scalar>& x,
            const Vector<Scalar>& y, const Vector<Scalar>& z,
            const Vector<Scalar>& w) {
  const Index n = r.dim();
  if (x.size() != n || y.size() != n || z.size() != n || w.size() != n)
    throw DimensionError("eval: vector dimension mismatch");
  Scalar acc(0);
  for (Index i = 0; i < n; ++i) {
    if (x[i] == Scalar(0)) continue;
    Scalar ai(0);
    for (Index j = 0; j < n; ++j) {
      if (y[j] == Scalar(0)) continue;
      Scalar aj(0);
      for (Index k = 0; k < n; ++k) {
        Scalar ak(0);
        for (Index l = 0; l < n; ++l) ak += r(i, j, k, l) * w[l];
        aj += z[k] * ak;
      }
      ai += y[j] * aj;
    }
    acc += x[i] * ai;
  }
  return acc;
}

// v_i = R(e_i, Y, Z, W); the other slots follow from the symmetries.
template <typename Scalar>
Vector<Scalar> eval_first_slot(const CurvatureTensor<Scalar>& r,
                               const Vector<Scalar>& y, const Vector<Scalar>& z,
                               const Vector<Scalar>& w) {
  const Index n = r.dim();
  Vector<Scalar> out = Vector<Scalar>::Zero(n);
  for (Index i = 0; i < n; ++i) {
    Scalar ai(0);
    for (Index j = 0; j < n; ++j) {
      if (y[j] == Scalar(0)) continue;
      Scalar aj(0);
      for (Index k = 0; k < n; ++k) {
        Scalar ak(0);
        for (Index l = 0; l < n; ++l) ak += r(i, j, k, l) * w[l];
        aj += z[k] * ak;
      }
      ai += y[j] * aj;
    }
    out[i] = ai;
  }
  return out;
}

// Largest cyclic-sum residual |R_{ijkl} + R_{jkil} + R_{kijl}|.
template <typename Scalar>
Scalar bianchi_defect(const CurvatureTensor<Scalar>& r) {
  const Index n = r.dim();
  Scalar worst(0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
          worst = std::max(worst,
                           std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
  return worst;
}

// Orthogonal projection onto the Bianchi subspace along Lambda^4(V): for a
// tensor with the pair symmetries the cyclic sum B(R) is fully
// antisymmetric and B(R)/3 is exactly the Lambda^4 part.
template <typename Scalar>
CurvatureTensor<Scalar> bianchi_project(const CurvatureTensor<Scalar>& r) {
  return CurvatureTensor<Scalar>::build(r.dim(), [&](Index i, Index j, Index k, Index l) {
    return r(i, j, k, l) -
           (r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)) / Scalar(3);
  });
}

// Sectional curvature of the plane spanned by X, Y.
template <typename Scalar>
Scalar sectional(const CurvatureTensor<Scalar>& r, const Vector<Scalar>& x,
                 const Vector<Scalar>& y) {
  const Scalar gram = x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y);
  if (!(gram > Scalar(1e-12) * x.squaredNorm() * y.squaredNorm()))
    throw ValidationError("sectional: degenerate plane");
  return eval(r, x, y, x, y) / gram;
}

template <typename Scalar>
SymTwoTensor<Scalar> ricci(const CurvatureTensor<Scalar>& r) {
  const Index n = r.dim();
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index l = 0; l < n; ++l) {
      Scalar s(0);
      for (Index k = 0; k < n; ++k) s += r(k, j, k, l);
      m(j, l) = s;
    }
  return SymTwoTensor<Scalar>(m);
}

template <typename Scalar>
Scalar scalar_curv(const CurvatureTensor<Scalar>& r) {
  return ricci(r).trace();
}

// Kulkarni-Nomizu product (A o B)_{ijkl} = A_ik B_jl + A_jl B_ik - A_il B_jk
// - A_jk B_il; the output satisfies every curvature symmetry, Bianchi
// included, exactly.
template <typename Scalar>
CurvatureTensor<Scalar> kulkarni_nomizu(const SymTwoTensor<Scalar>& a,
                                        const SymTwoTensor<Scalar>& b) {
  if (a.dim() != b.dim()) throw DimensionError("kulkarni_nomizu: dimension mismatch");
  return CurvatureTensor<Scalar>::build(a.dim(), [&](Index i, Index j, Index k, Index l) {
    return a(i, k) * b(j, l) + a(j, l) * b(i, k) - a(i, l) * b(j, k) -
           a(j, k) * b(i, l);
  });
}

template <typename Scalar>
struct WeylDecomposition {
  Scalar scalar;                   // S
  SymTwoTensor<Scalar> ric0;       // traceless Ricci
  CurvatureTensor<Scalar> weyl;    // totally trace-free part
};

// R = W + ric0 o g / (n-2) + S g o g / (2n(n-1)).
template <typename Scalar>
WeylDecomposition<Scalar> weyl_decompose(const CurvatureTensor<Scalar>& r) {
  const Index n = r.dim();
  if (n < 3) throw DimensionError("weyl_decompose: requires n >= 3");
  const SymTwoTensor<Scalar> ric = ricci(r);
  const Scalar s = ric.trace();
  const SymTwoTensor<Scalar> ric0 = ric.traceless();
  const SymTwoTensor<Scalar> g = SymTwoTensor<Scalar>::identity(n);
  const CurvatureTensor<Scalar> ric0_g = kulkarni_nomizu(ric0, g);
  const CurvatureTensor<Scalar> g_g = kulkarni_nomizu(g, g);
  const Scalar c1 = Scalar(1) / Scalar(n - 2);
  const Scalar c2 = s / Scalar(2 * n * (n - 1));
  CurvatureTensor<Scalar> w =
      CurvatureTensor<Scalar>::build(n, [&](Index i, Index j, Index k, Index l) {
        return r(i, j, k, l) - c1 * ric0_g(i, j, k, l) - c2 * g_g(i, j, k, l);
      });
  return {s, ric0, std::move(w)};
}

// Reassemble a tensor from its decomposition parts.
template <typename Scalar>
CurvatureTensor<Scalar> weyl_reassemble(const WeylDecomposition<Scalar>& d) {
  const Index n = d.weyl.dim();
  const SymTwoTensor<Scalar> g = SymTwoTensor<Scalar>::identity(n);
  const CurvatureTensor<Scalar> ric0_g = kulkarni_nomizu(d.ric0, g);
  const CurvatureTensor<Scalar> g_g = kulkarni_nomizu(g, g);
  const Scalar c1 = Scalar(1) / Scalar(n - 2);
  const Scalar c2 = d.scalar / Scalar(2 * n * (n - 1));
  return CurvatureTensor<Scalar>::build(n, [&](Index i, Index j, Index k, Index l) {
    return d.weyl(i, j, k, l) + c1 * ric0_g(i, j, k, l) + c2 * g_g(i, j, k, l);
  });
}

// Block-diagonal tensor of a Riemannian product: factor components are
// copied, all mixed components vanish.
template <typename Scalar>
CurvatureTensor<Scalar> direct_sum(const CurvatureTensor<Scalar>& r1,
                                   const CurvatureTensor<Scalar>& r2) {
  const Index n1 = r1.dim();
  const Index n = n1 + r2.dim();
  return CurvatureTensor<Scalar>::build(n, [&](Index i, Index j, Index k, Index l) {
    const bool lo = i < n1 && j < n1 && k < n1 && l < n1;
    const bool hi = i >= n1 && j >= n1 && k >= n1 && l >= n1;
    if (lo) return r1(i, j, k, l);
    if (hi) return r2(i - n1, j - n1, k - n1, l - n1);
    return Scalar(0);
  });
}

// One sparse component in 1-based canonical position.
template <typename Scalar = double>
struct ComponentEntry {
  Index i, j, k, l;  // 1-based, i < j, k < l, (i,j) <= (k,l)
  Scalar v;
};

// Build a tensor from canonical-slot components (the CTJ ingestion path).
// Slots must be canonical and unique; omitted slots are zero. The Bianchi
// identity is the caller's concern: query bianchi_defect on the result.
template <typename Scalar = double>
CurvatureTensor<Scalar> act_from_components(
    Index n, const std::vector<ComponentEntry<Scalar>>& entries) {
  if (n < CurvatureTensor<Scalar>::kMinDim || n > CurvatureTensor<Scalar>::kMaxDim)
    throw ParseError("act_from_components: dimension must be in [2, 8]");
  std::vector<Scalar> slot_value(static_cast<std::size_t>(n * n * n * n), Scalar(0));
  std::vector<bool> seen(slot_value.size(), false);
  auto flat = [n](Index i, Index j, Index k, Index l) {
    return static_cast<std::size_t>(((i * n + j) * n + k) * n + l);
  };
  for (const auto& e : entries) {
    const Index i = e.i - 1, j = e.j - 1, k = e.k - 1, l = e.l - 1;
    if (i < 0 || j < 0 || k < 0 || l < 0 || i >= n || j >= n || k >= n || l >= n)
      throw ParseError("act_from_components: index out of range");
    if (!(i < j && k < l && (i < k || (i == k && j <= l))))
      throw ParseError("act_from_components: slot not canonical");
    if (seen[flat(i, j, k, l)])
      throw ParseError("act_from_components: duplicate canonical slot");
    seen[flat(i, j, k, l)] = true;
    slot_value[flat(i, j, k, l)] = e.v;
  }
  return CurvatureTensor<Scalar>::build(n, [&](Index i, Index j, Index k, Index l) {
    return slot_value[flat(i, j, k, l)];
  });
}

// Deterministic fuzzing source: a Gaussian symmetric matrix on Lambda^2 is
// lifted through the pair indexing and projected onto the Bianchi subspace.
template <typename Scalar = double>
CurvatureTensor<Scalar> random_act(Index n, std::uint64_t seed) {
  const auto pairs = index_pairs(n);
  const Index m = static_cast<Index>(pairs.size());
  Rng rng(seed);
  Matrix<Scalar> a(m, m);
  for (Index p = 0; p < m; ++p)
    for (Index q = p; q < m; ++q) {
      const Scalar v = Scalar(rng.gaussian());
      a(p, q) = v;
      a(q, p) = v;
    }
  std::vector<Index> pair_of(static_cast<std::size_t>(n * n), -1);
  for (Index p = 0; p < m; ++p)
    pair_of[static_cast<std::size_t>(pairs[p].first * n + pairs[p].second)] = p;
  auto lifted =
      CurvatureTensor<Scalar>::build(n, [&](Index i, Index j, Index k, Index l) {
        return a(pair_of[static_cast<std::size_t>(i * n + j)],
                 pair_of[static_cast<std::size_t>(k * n + l)]);
      });
  return bianchi_project(lifted);
}

}  // namespace cosk
