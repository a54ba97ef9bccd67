#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cosk/curvature_tensor.hpp"
#include "cosk/model_spaces.hpp"
#include "cosk/sym_tensors.hpp"

#include <cmath>

using namespace cosk;

namespace {

Vector<double> unit(Index n, Index k) {
  Vector<double> v = Vector<double>::Zero(n);
  v[k] = 1.0;
  return v;
}

// Independent cyclic-sum evaluation used as the Bianchi oracle.
double brute_cyclic_max(const CurvatureTensor<double>& r) {
  double worst = 0.0;
  const Index n = r.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
  return worst;
}

}  // namespace

TEST_CASE("sym_product and wedge_product on basis vectors") {
  const auto u = unit(4, 0), v = unit(4, 1);
  const auto s = sym_product(u, v);
  CHECK(s(0, 1) == 1.0);
  CHECK(s(1, 0) == 1.0);
  CHECK(s(2, 3) == 0.0);
  CHECK(s.norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto d = sym_product(u, u);
  CHECK(d(0, 0) == 2.0);
  CHECK(d.norm() == doctest::Approx(2.0).epsilon(1e-15));

  const auto w = wedge_product(u, v);
  CHECK(w(0, 1) == 1.0);
  CHECK(w(1, 0) == -1.0);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(sym_product(unit(3, 0), unit(4, 0)), DimensionError);
  CHECK_THROWS_AS(wedge_product(unit(3, 0), unit(4, 0)), DimensionError);
}

TEST_CASE("basis_s20 sizes, orthonormality, tracelessness") {
  CHECK(basis_s20<double>(2).size() == 2);
  CHECK(basis_s20<double>(3).size() == 5);
  CHECK(basis_s20<double>(4).size() == 9);
  CHECK_THROWS_AS(basis_s20<double>(1), DimensionError);

  for (Index n : {2, 3, 4, 6}) {
    const auto basis = basis_s20<double>(n);
    REQUIRE(static_cast<Index>(basis.size()) == s20_dim(n));
    for (std::size_t p = 0; p < basis.size(); ++p) {
      CHECK(std::abs(basis[p].trace()) <= 1e-15);
      for (std::size_t q = 0; q < basis.size(); ++q) {
        const double expect = p == q ? 1.0 : 0.0;
        CHECK(std::abs(basis[p].dot(basis[q]) - expect) <= 1e-13);
      }
    }
  }
}

TEST_CASE("basis_lambda2 orthonormality") {
  const auto basis = basis_lambda2<double>(4);
  REQUIRE(basis.size() == 6);
  for (std::size_t p = 0; p < basis.size(); ++p)
    for (std::size_t q = 0; q < basis.size(); ++q)
      CHECK(std::abs(basis[p].dot(basis[q]) - (p == q ? 1.0 : 0.0)) <= 1e-15);
}

TEST_CASE("act_from_components: product tensor and validation") {
  const auto r = act_from_components<double>(
      4, {{1, 2, 1, 2, 1.0}, {3, 4, 3, 4, 1.0}});
  CHECK(r(0, 1, 0, 1) == 1.0);
  CHECK(r(2, 3, 2, 3) == 1.0);
  CHECK(r(1, 0, 0, 1) == -1.0);
  CHECK(r(0, 2, 0, 2) == 0.0);
  CHECK(r == product_surfaces(1.0, 1.0));

  const auto sf = act_from_components<double>(2, {{1, 2, 1, 2, 0.5}});
  CHECK(sf == space_form<double>(2, 0.5));

  CHECK_THROWS_AS(act_from_components<double>(4, {{1, 2, 1, 2, 1.0}, {1, 2, 1, 2, 2.0}}),
                  ParseError);
  CHECK_THROWS_AS(act_from_components<double>(4, {{2, 1, 1, 2, 1.0}}), ParseError);
  CHECK_THROWS_AS(act_from_components<double>(4, {{3, 4, 1, 2, 1.0}}), ParseError);
  CHECK_THROWS_AS(act_from_components<double>(4, {{1, 5, 1, 5, 1.0}}), ParseError);
  CHECK_THROWS_AS(act_from_components<double>(9, {}), ParseError);
}

TEST_CASE("index symmetries are exact bit-for-bit") {
  const auto r = random_act(4, 99);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k)
        for (Index l = 0; l < 4; ++l) {
          CHECK(r(i, j, k, l) == -r(j, i, k, l));
          CHECK(r(i, j, k, l) == -r(i, j, l, k));
          CHECK(r(i, j, k, l) == r(k, l, i, j));
        }
}

TEST_CASE("bianchi defect and projection") {
  CHECK(bianchi_defect(space_form<double>(4, 1.0)) == 0.0);

  // A pure alternating tensor is the Bianchi-orthogonal complement: its
  // projection vanishes.
  const auto alt = CurvatureTensor<double>::build(4, [](Index i, Index j, Index k, Index l) {
    // epsilon_{ijkl}
    const Index p[4] = {i, j, k, l};
    double sign = 1.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (p[a] == p[b]) return 0.0;
        if (p[a] > p[b]) sign = -sign;
      }
    return sign;
  });
  CHECK(bianchi_project(alt).max_abs() <= 1e-15);

  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto r = random_act(4, seed);
    CHECK(brute_cyclic_max(r) <= 1e-13 * r.max_abs());
    const auto again = bianchi_project(r);
    CHECK((again - r).max_abs() <= 1e-13 * r.max_abs());  // idempotent / fixes members
  }
}

TEST_CASE("sectional, ricci, scalar on models") {
  const auto sphere = space_form<double>(4, 1.0);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Vector<double> x = rng.gaussian_vector(4);
    const Vector<double> y = rng.gaussian_vector(4);
    CHECK(sectional(sphere, x, y) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(ricci(sphere).mat().isApprox(3.0 * Matrix<double>::Identity(4, 4), 1e-14));
  CHECK(scalar_curv(sphere) == doctest::Approx(12.0));

  const auto prod = product_surfaces(1.0, 1.0);
  CHECK(sectional(prod, unit(4, 0), unit(4, 2)) == 0.0);
  CHECK(sectional(prod, unit(4, 0), unit(4, 1)) == 1.0);

  CHECK_THROWS_AS(sectional(sphere, unit(4, 0), unit(4, 0)), ValidationError);

  // S equals the sum of coordinate-plane sectional numerators.
  const auto fs = fubini_study<double>(2, 4.0).tensor;
  double s = 0.0;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (i != j) s += fs(i, j, i, j);
  CHECK(scalar_curv(fs) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(s == doctest::Approx(scalar_curv(fs)).epsilon(1e-12));
}

TEST_CASE("kulkarni_nomizu identities") {
  const auto g = SymTwoTensor<double>::identity(4);
  const auto gg = kulkarni_nomizu(g, g);
  CHECK(gg == space_form<double>(4, 2.0));

  Matrix<double> e11 = Matrix<double>::Zero(4, 4);
  e11(0, 0) = 1.0;
  const auto ge = kulkarni_nomizu(g, SymTwoTensor<double>(e11));
  CHECK(ge(0, 1, 0, 1) == 1.0);
  CHECK(ge(0, 2, 0, 2) == 1.0);
  CHECK(ge(1, 2, 1, 2) == 0.0);
  CHECK(ge(2, 3, 2, 3) == 0.0);

  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const SymTwoTensor<double> a(rng.gaussian_matrix(4, 4));
    const SymTwoTensor<double> b(rng.gaussian_matrix(4, 4));
    const auto kn = kulkarni_nomizu(a, b);
    CHECK(brute_cyclic_max(kn) <= 1e-13 * std::max(kn.max_abs(), 1e-300));
  }
}

TEST_CASE("weyl decomposition: models and random round trips") {
  {
    const auto d = weyl_decompose(space_form<double>(5, 2.0));
    CHECK(d.scalar == doctest::Approx(40.0));
    CHECK(d.ric0.norm() <= 1e-12);
    CHECK(d.weyl.max_abs() <= 1e-12);
  }
  {
    const auto d = weyl_decompose(product_surfaces(1.0, 1.0));
    CHECK(d.scalar == doctest::Approx(4.0));
    CHECK(d.ric0.norm() <= 1e-13);  // Einstein
    CHECK(d.weyl.max_abs() > 0.1);
  }
  {
    const auto d = weyl_decompose(fubini_study<double>(2, 4.0).tensor);
    CHECK(d.scalar == doctest::Approx(24.0));
    CHECK(d.ric0.norm() <= 1e-12);
  }
  for (Index n : {3, 4, 5, 6}) {
    for (std::uint64_t seed : {7, 8, 9}) {
      const auto r = random_act(n, seed);
      const auto d = weyl_decompose(r);
      const double scale = std::max(r.max_abs(), 1e-300);
      CHECK(ricci(d.weyl).norm() <= 1e-12 * scale);
      CHECK((weyl_reassemble(d) - r).max_abs() <= 1e-12 * scale);
    }
  }
  CHECK_THROWS_AS(weyl_decompose(space_form<double>(2, 1.0)), DimensionError);
}

TEST_CASE("direct_sum: blocks and scalar additivity") {
  const auto prod = direct_sum(space_form<double>(2, 1.0), space_form<double>(2, 1.0));
  CHECK(prod == product_surfaces(1.0, 1.0));

  const auto with_flat = direct_sum(random_act(3, 21), flat<double>(2));
  for (Index i = 3; i < 5; ++i)
    for (Index j = 3; j < 5; ++j)
      for (Index k = 3; k < 5; ++k)
        for (Index l = 3; l < 5; ++l) CHECK(with_flat(i, j, k, l) == 0.0);
  CHECK(with_flat(0, 3, 0, 3) == 0.0);

  for (std::uint64_t seed : {31, 32, 33}) {
    const auto r1 = random_act(3, seed);
    const auto r2 = random_act(4, seed + 100);
    CHECK(scalar_curv(direct_sum(r1, r2)) ==
          doctest::Approx(scalar_curv(r1) + scalar_curv(r2)).epsilon(1e-12));
  }
}

TEST_CASE("random_act: determinism, Bianchi, sampling statistics") {
  CHECK(random_act(4, 123) == random_act(4, 123));
  CHECK_FALSE(random_act(4, 123) == random_act(4, 124));

  double mean_s = 0.0;
  const int count = 1000;
  for (int t = 0; t < count; ++t) {
    const auto r = random_act(4, 1000 + static_cast<std::uint64_t>(t));
    CHECK(bianchi_defect(r) <= 1e-12 * r.max_abs());
    mean_s += scalar_curv(r);
  }
  mean_s /= count;
  // S is a sum of 2L unit Gaussians (L = 6), so sd of the mean is
  // sqrt(4L/count); five sigma keeps this deterministic check honest.
  CHECK(std::abs(mean_s) <= 5.0 * std::sqrt(24.0 / count));
}
