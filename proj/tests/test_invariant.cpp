#include <catch2/catch_amalgamated.hpp>

#include "g2kit/invariantform.hpp"
#include "test_helpers.hpp"

using namespace g2kit;

namespace {

InvariantForm random_invariant(std::mt19937_64& rng, const Domain& base, int degree) {
  std::normal_distribution<double> N(0.0, 1.0);
  InvariantForm f(base, degree);
  for (int s = 0; s < 8; ++s) {
    const int k = degree - popcount8(std::uint8_t(s));
    if (k < 0 || k > base.dim()) continue;
    FormField& ff = f.sector(std::uint8_t(s));
    // smooth trig coefficients so the spectral derivative is meaningful
    for (int c = 0; c < ff.ncomps(); ++c) {
      const double a = N(rng), b = N(rng);
      const int k1 = 1 + int(rng() % 3), k2 = 1 + int(rng() % 3);
      for (std::size_t p = 0; p < base.npoints(); ++p) {
        const Vec x = base.point(p);
        ff.comp(c)[p] = a * std::sin(k1 * x[0] + 0.3) + b * std::cos(k2 * x[x.size() - 1]);
      }
    }
  }
  return f;
}

}  // namespace

TEST_CASE("pointwise assembly round-trips sectors") {
  std::mt19937_64 rng(501);
  Domain base = torus(2, 8);
  InvariantForm f = random_invariant(rng, base, 3);
  InvariantForm g(base, 3);
  for (std::size_t p = 0; p < base.npoints(); ++p) g.set(p, f.at(p));
  CHECK((g - f).sup_norm() < 1e-15);
}

TEST_CASE("wedge of invariant forms matches the ambient wedge") {
  std::mt19937_64 rng(502);
  Domain base = torus(2, 8);
  for (int trial = 0; trial < 4; ++trial) {
    InvariantForm a = random_invariant(rng, base, 2);
    InvariantForm b = random_invariant(rng, base, 2);
    InvariantForm w = wedge(a, b);
    double err = 0.0;
    for (std::size_t p = 0; p < base.npoints(); p += 7) {
      KForm want = wedge(a.at(p), b.at(p));
      err = std::max(err, (w.at(p) - want).max_abs());
    }
    CHECK(err < 1e-12);
  }
}

TEST_CASE("theta contraction matches the ambient interior product") {
  std::mt19937_64 rng(503);
  Domain base = torus(2, 8);
  InvariantForm f = random_invariant(rng, base, 3);
  for (int j = 0; j < 3; ++j) {
    InvariantForm c = contract_theta(f, j);
    Vec u = Vec::Zero(5);
    u[base.dim() + j] = 1.0;
    double err = 0.0;
    for (std::size_t p = 0; p < base.npoints(); p += 5)
      err = std::max(err, (c.at(p) - interior(u, f.at(p))).max_abs());
    CHECK(err < 1e-14);
  }
}

TEST_CASE("base contraction matches the ambient interior product") {
  std::mt19937_64 rng(504);
  Domain base = torus(2, 8);
  InvariantForm f = random_invariant(rng, base, 3);
  Vec v2 = g2test::randn_vec(rng, 2);
  AffineField v = AffineField::constant(v2);
  InvariantForm c = contract_base(f, v);
  Vec u = Vec::Zero(5);
  u.head(2) = v2;
  double err = 0.0;
  for (std::size_t p = 0; p < base.npoints(); p += 5)
    err = std::max(err, (c.at(p) - interior(u, f.at(p))).max_abs());
  CHECK(err < 1e-13);
}

TEST_CASE("exterior derivative commutes with the forgetful expansion") {
  std::mt19937_64 rng(505);
  Domain base = torus(2, 12);
  InvariantForm f = random_invariant(rng, base, 2);
  InvariantForm df = ext_d(f);
  FormField lhs = expand_product(df, 8);
  FormField rhs = ext_d(expand_product(f, 8));
  CHECK((lhs - rhs).sup_norm() < 1e-10 * (1 + f.sup_norm()));
}

TEST_CASE("invariant hodge matches the pointwise star") {
  std::mt19937_64 rng(506);
  Domain base = torus(2, 8);
  InvariantForm f = random_invariant(rng, base, 2);
  Mat gmat = g2test::random_spd(rng, 5);
  InvariantForm sf = hodge_invariant(f, [&](const Vec&) { return gmat; });
  Metric g(5, gmat);
  KForm orient(5, 5);
  orient[0] = 1.0;
  double err = 0.0;
  for (std::size_t p = 0; p < base.npoints(); p += 3)
    err = std::max(err, (sf.at(p) - hodge(g, orient, f.at(p))).max_abs());
  CHECK(err < 1e-12);
}
