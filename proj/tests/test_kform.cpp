#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace g2kit;
using g2test::randn_vec;
using g2test::randn_mat;
using g2test::random_form;
using g2test::random_spd;

TEST_CASE("wedge basis cases") {
  KForm e1 = KForm::basis(4, {0});
  KForm e2 = KForm::basis(4, {1});
  KForm e3 = KForm::basis(4, {2});

  KForm e12 = wedge(e1, e2);
  CHECK(e12[e12.table().rank_of_mask[0b0011]] == 1.0);
  CHECK(wedge(e12, e1).max_abs() == 0.0);

  KForm sum = wedge(e1 + e2, e3);
  CHECK(sum[sum.table().rank_of_mask[0b0101]] == 1.0);
  CHECK(sum[sum.table().rank_of_mask[0b0110]] == 1.0);

  CHECK_THROWS_AS(wedge(KForm(3, 2), KForm(4, 1)), DimensionMismatch);
  CHECK_THROWS_AS(wedge(KForm(4, 3), KForm(4, 2)), DegreeOverflow);
}

TEST_CASE("wedge is bilinear, associative, graded-commutative") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 50; ++t) {
    const int n = 4 + int(rng() % 4);  // 4..7
    const int ka = 1 + int(rng() % 2), kb = 1 + int(rng() % 2);
    if (ka + kb > n) continue;
    KForm a = random_form(rng, n, ka), b = random_form(rng, n, kb);
    const double sign = ((ka * kb) % 2) ? -1.0 : 1.0;
    CHECK(g2test::rel_err(wedge(a, b), sign * wedge(b, a)) < 1e-14);
    if (ka + kb + 1 <= n) {
      KForm c = random_form(rng, n, 1);
      KForm a2 = random_form(rng, n, ka);
      CHECK(g2test::rel_err(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-13);
      CHECK(g2test::rel_err(wedge(a + a2, b), wedge(a, b) + wedge(a2, b)) < 1e-13);
    }
  }
}

TEST_CASE("interior product basis cases and antiderivation") {
  KForm e12 = KForm::basis(4, {0, 1});
  Vec v1 = Vec::Unit(4, 0), v3 = Vec::Unit(4, 2);
  KForm r = interior(v1, e12);
  CHECK(r[1] == 1.0);  // e^2
  CHECK(interior(v3, e12).max_abs() == 0.0);
  CHECK_THROWS_AS(interior(v1, KForm(4, 0)), DegreeOverflow);

  std::mt19937_64 rng(102);
  for (int t = 0; t < 40; ++t) {
    const int n = 5 + int(rng() % 3);
    Vec v = randn_vec(rng, n);
    KForm a = random_form(rng, n, 2), b = random_form(rng, n, 2);
    // nilpotency
    CHECK(interior(v, interior(v, wedge(a, b))).max_abs() < 1e-12 * (1 + a.max_abs() * b.max_abs()));
    // antiderivation: v . (a ^ b) = (v . a) ^ b + (-1)^|a| a ^ (v . b)
    KForm lhs = interior(v, wedge(a, b));
    KForm rhs = wedge(interior(v, a), b) + wedge(a, interior(v, b));
    CHECK(g2test::rel_err(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("hodge star: orthonormal case and involution") {
  Metric eu(7, Mat::Identity(7, 7));
  KForm orient = KForm::basis(7, {0, 1, 2, 3, 4, 5, 6});
  KForm s = hodge(eu, orient, KForm::basis(7, {0, 1, 2}));
  KForm want = KForm::basis(7, {3, 4, 5, 6});
  CHECK(g2test::rel_err(s, want) == 0.0);

  std::mt19937_64 rng(103);
  for (int t = 0; t < 30; ++t) {
    const int n = 4 + int(rng() % 4);
    const int k = int(rng() % (n + 1));
    Metric g(n, random_spd(rng, n));
    KForm vol(n, n);
    vol[0] = (t % 2) ? 1.0 : -2.0;  // orientation scale must not matter
    KForm a = random_form(rng, n, k);
    KForm ss = hodge(g, vol, hodge(g, vol, a));
    const double sign = ((k * (n - k)) % 2) ? -1.0 : 1.0;
    CHECK(g2test::rel_err(ss, sign * a) < 1e-11);
  }
}

TEST_CASE("a ^ *b = b ^ *a = <a,b> dvol") {
  std::mt19937_64 rng(104);
  for (int t = 0; t < 30; ++t) {
    const int n = 4 + int(rng() % 4);
    const int k = 1 + int(rng() % (n - 1));
    Metric g(n, random_spd(rng, n));
    KForm vol(n, n);
    vol[0] = 1.0;
    KForm a = random_form(rng, n, k), b = random_form(rng, n, k);
    KForm lhs = wedge(a, hodge(g, vol, b));
    KForm rhs = wedge(b, hodge(g, vol, a));
    CHECK(std::abs(lhs[0] - rhs[0]) < 1e-11 * (1 + std::abs(lhs[0])));
    const double ip = inner(g, a, b) * g.sqrt_det;
    CHECK(std::abs(lhs[0] - ip) < 1e-11 * (1 + std::abs(ip)));
  }
}

TEST_CASE("interior is the metric adjoint of wedging with v^flat") {
  std::mt19937_64 rng(105);
  for (int t = 0; t < 30; ++t) {
    const int n = 5 + int(rng() % 3);
    const int k = 2 + int(rng() % 2);
    Metric g(n, random_spd(rng, n));
    Vec v = randn_vec(rng, n);
    KForm a = random_form(rng, n, k), b = random_form(rng, n, k - 1);
    const double lhs = inner(g, interior(v, a), b);
    const double rhs = inner(g, a, wedge(g.flat(v), b));
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("spd_invsqrt") {
  SPD3 id(Mat3::Identity());
  CHECK((spd_invsqrt(id).m - Mat3::Identity()).norm() == 0.0);

  Mat3 d = Vec3(4.0, 9.0, 25.0).asDiagonal();
  Mat3 want = Vec3(0.5, 1.0 / 3.0, 0.2).asDiagonal();
  CHECK((spd_invsqrt(SPD3(d)).m - want).norm() < 1e-14);

  std::mt19937_64 rng(106);
  for (int t = 0; t < 50; ++t) {
    Mat3 a = random_spd(rng, 3);
    Mat3 b = spd_invsqrt(SPD3(a)).m;
    CHECK(((b * b).inverse() - a).cwiseAbs().maxCoeff() < 1e-12 * a.norm());
  }

  Mat3 bad = Vec3(1.0, 1.0, -2.0).asDiagonal();
  CHECK_THROWS_AS(SPD3(bad), DependentGenerators);
}

TEST_CASE("adjugate and epsilon conventions") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 30; ++t) {
    Mat3 m = randn_mat(rng, 3, 3);
    CHECK((adjugate3(m) * m - m.determinant() * Mat3::Identity()).cwiseAbs().maxCoeff() <
          1e-12 * (1 + m.norm()));
  }
  CHECK(eps3(0, 1, 2) == 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        CHECK(eps3(i, j, k) == -eps3(j, i, k));
        CHECK(eps3(i, j, k) == -eps3(i, k, j));
      }
}

TEST_CASE("pullback respects wedge") {
  std::mt19937_64 rng(108);
  for (int t = 0; t < 20; ++t) {
    Mat p = randn_mat(rng, 6, 6);
    KForm a = random_form(rng, 6, 2), b = random_form(rng, 6, 1);
    CHECK(g2test::rel_err(pullback(wedge(a, b), p), wedge(pullback(a, p), pullback(b, p))) < 1e-12);
  }
}

TEST_CASE("degenerate metric is rejected") {
  Mat bad = Mat::Identity(5, 5);
  bad(4, 4) = 0.0;
  CHECK_THROWS_AS(Metric(5, bad), DegenerateMetric);
}
