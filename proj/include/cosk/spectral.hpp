// Deterministic symmetric eigensolver for the small dense matrices the rest
// of the library produces (N <= 35 for n <= 8).
//
// Cyclic Jacobi was chosen over QR: unconditionally stable at these sizes
// and free of library-dependent iteration order, so identical input bits
// give identical output bits. Eigenvalues are sorted ascending with ties
// broken by original diagonal position; eigenvector columns are
// sign-normalized on their largest-magnitude entry.
#pragma once

#include "cosk/common.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cosk {

template <typename Scalar = double>
struct EigenDecomposition {
  Vector<Scalar> values;   // ascending
  Matrix<Scalar> vectors;  // column k pairs with values[k]
};

template <typename Scalar>
EigenDecomposition<Scalar> sym_eigen(const Matrix<Scalar>& m,
                                     Scalar tol = Scalar(1e-14)) {
  if (m.rows() != m.cols()) throw DimensionError("sym_eigen: matrix must be square");
  const Index n = m.rows();
  if (n > 64) throw DimensionError("sym_eigen: size capped at 64");

  Matrix<Scalar> a = (m + m.transpose()) / Scalar(2);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar scale = a.cwiseAbs().maxCoeff();

  if (scale > Scalar(0)) {
    const Scalar threshold = tol * scale;
    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
      converged = true;
      for (Index p = 0; p < n; ++p) {
        for (Index q = p + 1; q < n; ++q) {
          const Scalar apq = a(p, q);
          if (std::abs(apq) <= threshold) continue;
          converged = false;
          const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
          Scalar t;
          if (theta >= Scalar(0))
            t = Scalar(1) / (theta + std::sqrt(Scalar(1) + theta * theta));
          else
            t = Scalar(-1) / (-theta + std::sqrt(Scalar(1) + theta * theta));
          const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
          const Scalar s = t * c;
          // A <- J^T A J on rows/columns p, q
          for (Index r = 0; r < n; ++r) {
            const Scalar arp = a(r, p), arq = a(r, q);
            a(r, p) = c * arp - s * arq;
            a(r, q) = s * arp + c * arq;
          }
          for (Index r = 0; r < n; ++r) {
            const Scalar apr = a(p, r), aqr = a(q, r);
            a(p, r) = c * apr - s * aqr;
            a(q, r) = s * apr + c * aqr;
          }
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);
          for (Index r = 0; r < n; ++r) {
            const Scalar vrp = v(r, p), vrq = v(r, q);
            v(r, p) = c * vrp - s * vrq;
            v(r, q) = s * vrp + c * vrq;
          }
        }
      }
    }
    if (!converged) {
      // One last look: accept if the residual off-diagonal is tiny anyway.
      Scalar off(0);
      for (Index p = 0; p < n; ++p)
        for (Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
      if (off > threshold) throw ConvergenceError("sym_eigen: no convergence in 100 sweeps");
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x) < a(y, y); });

  EigenDecomposition<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    Index pivot = 0;
    out.vectors.col(k).cwiseAbs().maxCoeff(&pivot);
    if (out.vectors(pivot, k) < Scalar(0)) out.vectors.col(k) = -out.vectors.col(k);
  }
  return out;
}

}  // namespace cosk
