#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cosk/model_spaces.hpp"
#include "cosk/operators.hpp"

#include <cmath>

using namespace cosk;

namespace {

Vector<double> unit(Index n, Index k) {
  Vector<double> v = Vector<double>::Zero(n);
  v[k] = 1.0;
  return v;
}

Vector<double> eigs_of(const CurvatureTensor<double>& r) {
  return sym_eigen(r_ring_s20_matrix(r)).values;
}

}  // namespace

TEST_CASE("r_hat_matrix on models and against quadratic forms") {
  CHECK(r_hat_matrix(space_form<double>(4, 2.0))
            .isApprox(2.0 * Matrix<double>::Identity(6, 6), 1e-15));

  Vector<double> diag(6);
  diag << 1, 0, 0, 0, 0, 1;
  CHECK(r_hat_matrix(product_surfaces(1.0, 1.0))
            .isApprox(Matrix<double>(diag.asDiagonal()), 1e-15));

  // <Rhat(X ^ Y), X ^ Y> = R(X, Y, X, Y)
  Rng rng(2);
  const auto r = random_act(4, 77);
  const auto m = r_hat_matrix(r);
  const auto pairs = index_pairs(4);
  for (int t = 0; t < 100; ++t) {
    const Vector<double> x = rng.gaussian_vector(4), y = rng.gaussian_vector(4);
    Vector<double> coords(6);
    for (Index p = 0; p < 6; ++p)
      coords[p] = x[pairs[p].first] * y[pairs[p].second] -
                  x[pairs[p].second] * y[pairs[p].first];
    CHECK(coords.dot(m * coords) ==
          doctest::Approx(eval(r, x, y, x, y)).epsilon(1e-11));
  }
}

TEST_CASE("r_ring_pair: coordinate tensors and g") {
  const auto r = random_act(4, 5);
  const double is2 = 1.0 / std::sqrt(2.0);
  const SymTwoTensor<double> p12(is2 * sym_product(unit(4, 0), unit(4, 1)).mat());
  CHECK(r_ring_pair(r, p12, p12) == doctest::Approx(r(0, 1, 0, 1)).epsilon(1e-13));

  const SymTwoTensor<double> p13(is2 * sym_product(unit(4, 0), unit(4, 2)).mat());
  CHECK(r_ring_pair(r, p13, p13) == doctest::Approx(r(0, 2, 0, 2)).epsilon(1e-13));

  const auto g = SymTwoTensor<double>::identity(4);
  CHECK(r_ring_pair(r, g, g) == doctest::Approx(-scalar_curv(r)).epsilon(1e-12));

  // symmetry and bilinearity
  Rng rng(6);
  const SymTwoTensor<double> a(rng.gaussian_matrix(4, 4)), b(rng.gaussian_matrix(4, 4));
  CHECK(r_ring_pair(r, a, b) == doctest::Approx(r_ring_pair(r, b, a)).epsilon(1e-12));
  const SymTwoTensor<double> a2(2.5 * a.mat());
  CHECK(r_ring_pair(r, a2, b) == doctest::Approx(2.5 * r_ring_pair(r, a, b)).epsilon(1e-12));
}

TEST_CASE("bilinear form agrees with the operator route") {
  Rng rng(8);
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto r = random_act(5, seed);
    for (int t = 0; t < 20; ++t) {
      const SymTwoTensor<double> phi =
          SymTwoTensor<double>(rng.gaussian_matrix(5, 5)).traceless();
      const SymTwoTensor<double> psi =
          SymTwoTensor<double>(rng.gaussian_matrix(5, 5)).traceless();
      CHECK(r_ring_apply(r, phi).dot(psi) ==
            doctest::Approx(r_ring_pair(r, phi, psi)).epsilon(1e-11));
    }
  }
}

TEST_CASE("spectra of the model tensors") {
  {
    const auto eigs = eigs_of(space_form<double>(4, 1.0));
    for (Index k = 0; k < 9; ++k) CHECK(std::abs(eigs[k] - 1.0) <= 1e-12);
  }
  {
    const auto eigs = eigs_of(product_surfaces(1.0, 1.0));
    const double expect[9] = {-1, 0, 0, 0, 0, 1, 1, 1, 1};
    for (Index k = 0; k < 9; ++k) CHECK(std::abs(eigs[k] - expect[k]) <= 1e-12);
  }
  {
    const auto eigs = eigs_of(fubini_study<double>(2, 4.0).tensor);
    const double expect[9] = {-2, -2, -2, 4, 4, 4, 4, 4, 4};
    for (Index k = 0; k < 9; ++k) CHECK(std::abs(eigs[k] - expect[k]) <= 1e-10);
  }
}

TEST_CASE("trace identities over S^2(V)") {
  for (Index n : {3, 4, 5, 6}) {
    for (std::uint64_t seed : {11, 12}) {
      const auto r = random_act(n, seed);
      const double scale = std::max(r.max_abs(), 1e-300);
      const auto basis = basis_s2<double>(n);
      double trace = 0.0;
      for (const auto& phi : basis) trace += r_ring_pair(r, phi, phi);
      CHECK(std::abs(trace - scalar_curv(r) / 2.0) <= 1e-11 * scale);
      const auto g = SymTwoTensor<double>::identity(n);
      CHECK(std::abs(r_ring_pair(r, g, g) + scalar_curv(r)) <= 1e-11 * scale);
    }
  }
}

TEST_CASE("spectrum is independent of the orthonormal basis") {
  const auto r = random_act(4, 13);
  const Matrix<double> m = r_ring_s20_matrix(r);
  Rng rng(14);
  const Matrix<double> q = rng.haar_orthogonal(9);
  const auto conj = sym_eigen(Matrix<double>(q.transpose() * m * q)).values;
  const auto base = sym_eigen(m).values;
  CHECK((base - conj).cwiseAbs().maxCoeff() <= 1e-11 * m.cwiseAbs().maxCoeff());
}

TEST_CASE("SpectrumReport trace consistency") {
  for (std::uint64_t seed : {21, 22, 23}) {
    const auto r = random_act(4, seed);
    const auto rep = cosk_spectrum(r);
    CHECK(rep.big_n == 9);
    // trace over S^2_0 = S/2 + S/n
    CHECK(rep.eigs.sum() ==
          doctest::Approx(rep.scalar / 2.0 + rep.scalar / 4.0).epsilon(1e-10));
  }
}

TEST_CASE("alpha_sum values and range checks") {
  Vector<double> s2xs2_eigs(9);
  s2xs2_eigs << -1, 0, 0, 0, 0, 1, 1, 1, 1;
  CHECK(alpha_sum(s2xs2_eigs, 6.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(alpha_sum(s2xs2_eigs, 6.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(alpha_sum(s2xs2_eigs, 1.0) == doctest::Approx(-1.0));

  Vector<double> cp2_eigs(9);
  cp2_eigs << -2, -2, -2, 4, 4, 4, 4, 4, 4;
  CHECK(alpha_sum(cp2_eigs, 4.5) == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(alpha_sum(s2xs2_eigs, 0.5), ValidationError);
  CHECK_THROWS_AS(alpha_sum(s2xs2_eigs, 9.5), ValidationError);
  CHECK(alpha_sum(s2xs2_eigs, 9.0) == doctest::Approx(3.0));
}

TEST_CASE("max_alpha: crossing roots and sentinels") {
  CHECK(*max_alpha(eigs_of(product_surfaces(1.0, 1.0))) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(*max_alpha(eigs_of(fubini_study<double>(2, 4.0).tensor)) ==
        doctest::Approx(4.5).epsilon(1e-12));
  CHECK(*max_alpha(eigs_of(space_form<double>(4, 1.0))) == 9.0);
  CHECK_FALSE(max_alpha(eigs_of(space_form<double>(4, -1.0))).has_value());

  Vector<double> zero_slope(4);
  zero_slope << -1, 0, 0, 1;
  CHECK(*max_alpha(zero_slope) == doctest::Approx(4.0));
  Vector<double> early(4);
  early << -1, 1, 1, 1;
  CHECK(*max_alpha(early) == doctest::Approx(2.0));
}

TEST_CASE("positivity verdicts") {
  CHECK(is_alpha_nonneg(product_surfaces(1.0, 1.0), 6.0));
  CHECK_FALSE(is_alpha_positive(product_surfaces(1.0, 1.0), 6.0));
  CHECK(is_alpha_positive(product_surfaces(1.0, 1.0), 6.5));
  CHECK_FALSE(is_alpha_nonneg(product_surfaces(1.0, 2.0), 6.0));
  CHECK_FALSE(is_alpha_nonneg(product_surfaces(-1.0, -1.0), 6.0));
  CHECK(is_alpha_nonneg(flat<double>(4), 6.0));
  CHECK_FALSE(is_alpha_positive(flat<double>(4), 6.0));
}

TEST_CASE("Ky Fan minimum property via Monte Carlo bases") {
  for (std::uint64_t seed : {41, 42}) {
    const auto r = random_act(4, seed);
    const auto eigs = eigs_of(r);
    const double scale = std::max(spectral_scale(eigs), 1e-300);
    for (double alpha : {2.0, 4.5, 6.0}) {
      const double target = alpha_sum(eigs, alpha);
      const double mc = min_basis_sum_montecarlo(r, alpha, 1000, seed * 7 + 1);
      CHECK(mc >= target - 1e-12 * scale);
      CHECK(mc <= target + 1e-12 * scale);  // eigenbasis injected as trial 0
    }
  }
  // spec'd model case
  CHECK(min_basis_sum_montecarlo(product_surfaces(1.0, 1.0), 6.0, 10000, 3) >= -1e-12);
}

TEST_CASE("phi_frame_basis: orthonormality and displayed formulas") {
  Matrix<double> std_frame = Matrix<double>::Identity(4, 4);
  const auto phis = phi_frame_basis(std_frame);
  for (int p = 0; p < 9; ++p)
    for (int q = 0; q < 9; ++q)
      CHECK(std::abs(phis[p].dot(phis[q]) - (p == q ? 1.0 : 0.0)) <= 1e-13);

  Rng rng(55);
  for (Index n : {4, 5, 6}) {
    const auto r = random_act(n, 60 + static_cast<std::uint64_t>(n));
    const double scale = std::max(r.max_abs(), 1e-300);
    for (int t = 0; t < 10; ++t) {
      const Matrix<double> f = rng.stiefel(n, 4);
      const auto phi = phi_frame_basis(f);
      auto rf = [&](int a, int b) {
        return eval(r, Vector<double>(f.col(a)), Vector<double>(f.col(b)),
                    Vector<double>(f.col(a)), Vector<double>(f.col(b)));
      };
      const double r1212 = rf(0, 1), r3434 = rf(2, 3), r1313 = rf(0, 2),
                   r1414 = rf(0, 3), r2323 = rf(1, 2), r2424 = rf(1, 3);
      CHECK(std::abs(r_ring_pair(r, phi[0], phi[0]) -
                     0.5 * (-r1212 - r3434 + r1313 + r2424 + r1414 + r2323)) <=
            1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[1], phi[1]) - r1313) <= 1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[2], phi[2]) - r1414) <= 1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[3], phi[3]) - r2323) <= 1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[4], phi[4]) - r2424) <= 1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[5], phi[5]) - r1212) <= 1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[6], phi[6]) - r3434) <= 1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[7], phi[7]) - r1212) <= 1e-12 * scale);
      CHECK(std::abs(r_ring_pair(r, phi[8], phi[8]) - r3434) <= 1e-12 * scale);

      // the averaged combination collapses to 3/2 of the four-frame sum
      double combo = 0.0;
      for (int p = 0; p < 5; ++p) combo += r_ring_pair(r, phi[p], phi[p]);
      for (int p = 5; p < 9; ++p) combo += 0.25 * r_ring_pair(r, phi[p], phi[p]);
      CHECK(std::abs(combo - 1.5 * frame_quad_sum(r, f)) <= 1e-12 * scale);
    }
  }

  Matrix<double> bad = Matrix<double>::Identity(4, 4);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(phi_frame_basis(bad), ValidationError);
}

TEST_CASE("frame_quad_sum on models") {
  Matrix<double> std_frame = Matrix<double>::Identity(4, 4);
  CHECK(frame_quad_sum(space_form<double>(4, 2.0), std_frame) == doctest::Approx(8.0));
  CHECK(frame_quad_sum(product_surfaces(1.0, 1.0), std_frame) == 0.0);
  CHECK_THROWS_AS(frame_quad_sum(space_form<double>(4, 1.0),
                                 Matrix<double>(Matrix<double>::Identity(4, 3))),
                  DimensionError);
}

TEST_CASE("min_frame_quad_sum: frozen oracle value and determinism") {
  const auto fs = fubini_study<double>(2, 4.0).tensor;
  // Dense sampling plus refinement puts the constrained minimum at 4
  // (attained on complex-split frames; every sectional there equals 1).
  const double v = min_frame_quad_sum(fs, 256, 200, 7);
  CHECK(v == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(min_frame_quad_sum(fs, 64, 50, 9) == min_frame_quad_sum(fs, 64, 50, 9));

  // never below the Ky Fan bound implied by six-nonnegativity
  const auto prod = product_surfaces(1.0, 1.0);
  CHECK(min_frame_quad_sum(prod, 128, 100, 11) >= -1e-9);
}

TEST_CASE("shift_constant_curvature moves the spectrum rigidly") {
  CHECK(shift_constant_curvature(flat<double>(4), 1.0) == space_form<double>(4, 1.0));

  Rng rng(71);
  for (std::uint64_t seed : {81, 82, 83, 84}) {
    const auto r = random_act(5, seed);
    const double kappa = rng.gaussian();
    const auto base = eigs_of(r);
    const auto shifted = eigs_of(shift_constant_curvature(r, kappa));
    const double scale = std::max(spectral_scale(base), 1.0);
    CHECK((shifted - (base.array() + kappa).matrix()).cwiseAbs().maxCoeff() <=
          1e-12 * scale);

    const auto zeroed = eigs_of(shift_constant_curvature(r, -base[0]));
    CHECK(std::abs(zeroed[0]) <= 1e-12 * scale);
  }
}

TEST_CASE("alpha_sum is superadditive under tensor addition") {
  for (std::uint64_t seed : {91, 92, 93}) {
    const auto a = random_act(4, seed);
    const auto b = random_act(4, seed + 1000);
    const auto ea = eigs_of(a), eb = eigs_of(b), eab = eigs_of(a + b);
    const double scale =
        std::max({spectral_scale(ea), spectral_scale(eb), spectral_scale(eab)});
    for (double alpha : {2.0, 4.5, 6.0, 9.0}) {
      CHECK(alpha_sum(eab, alpha) >=
            alpha_sum(ea, alpha) + alpha_sum(eb, alpha) - 1e-11 * scale);
    }
  }
}
