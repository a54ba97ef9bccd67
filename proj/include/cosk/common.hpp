// Shared aliases, error types, and the deterministic RNG used by every
// sampling routine in the library.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace cosk {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr const char* kVersion = "0.1.0";

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched or unsupported dimensions (CLI exit code 5 where applicable).
struct DimensionError : Error {
  using Error::Error;
};

// A numeric invariant failed on ingestion or construction (CLI exit code 3).
struct ValidationError : Error {
  using Error::Error;
};

// Malformed input data: bad file schema, non-canonical slots, duplicates
// (CLI exit code 2).
struct ParseError : Error {
  using Error::Error;
};

// An operation requiring a complex structure was called without one
// (CLI exit code 4).
struct MissingStructureError : Error {
  using Error::Error;
};

// Iteration failed to converge within its budget.
struct ConvergenceError : Error {
  using Error::Error;
};

// A requested constructive shift has no solution (see random_kahler_act).
struct ShiftInfeasibleError : Error {
  using Error::Error;
};

// Deterministic random source. std::mt19937_64 gives a pinned integer
// stream; the mapping to doubles is done here rather than through
// std::normal_distribution so that the produced sequence is identical on
// every standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; pairs are cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = two_pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vector<double> gaussian_vector(Index n) {
    Vector<double> v(n);
    for (Index i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Matrix<double> gaussian_matrix(Index rows, Index cols) {
    Matrix<double> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = gaussian();
    return m;
  }

  // First k columns of a Haar-distributed orthogonal matrix: Gram-Schmidt
  // on a Gaussian n x k block. Column signs are fixed by the pivot of the
  // triangular factor so the result is a deterministic function of the
  // integer stream.
  Matrix<double> stiefel(Index n, Index k) {
    Matrix<double> a = gaussian_matrix(n, k);
    for (Index c = 0; c < k; ++c) {
      for (Index p = 0; p < c; ++p) a.col(c) -= a.col(p).dot(a.col(c)) * a.col(p);
      const double nrm = a.col(c).norm();
      a.col(c) /= nrm;
    }
    return a;
  }

  Matrix<double> haar_orthogonal(Index n) { return stiefel(n, n); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cosk
