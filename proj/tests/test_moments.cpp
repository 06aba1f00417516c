#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "g2kit/moments.hpp"
#include "test_helpers.hpp"

using namespace g2kit;

namespace {

std::array<std::array<long long, 7>, 3> iso_pi() {
  return {{{1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}}};
}

}  // namespace

TEST_CASE("moment chart on the isotropic flat quotient: linear potentials") {
  ModelInstance m = flat_quotient(iso_pi());
  Vec p0 = Vec::Zero(7);
  MomentChart c = build_moment_chart(m, p0);
  CHECK(c.loop_residual < 1e-10);

  // alpha = (-e^6, e^5, e^3) for this plane, so nu is linear in (x6, x5, x3)
  std::mt19937_64 rng(801);
  for (int t = 0; t < 10; ++t) {
    Vec q = g2test::randn_vec(rng, 7);
    Vec3 nu = c.nu(q);
    CHECK(std::abs(nu[0] + q[5]) < 1e-8);
    CHECK(std::abs(nu[1] - q[4]) < 1e-8);
    CHECK(std::abs(nu[2] - q[2]) < 1e-8);
  }
}

TEST_CASE("moment charts: dnu = alpha and invariance") {
  for (ModelInstance m : {flat_s1_c3(), flat_t2_r_c2()}) {
    Vec p0 = Vec::Zero(7);
    p0[0] = 0.4;
    MomentChart c = build_moment_chart(m, p0);
    CHECK(c.loop_residual < 1e-10);

    std::mt19937_64 rng(802);
    double fd_err = 0.0, inv_err = 0.0;
    for (int t = 0; t < 25; ++t) {
      Vec q = p0 + 0.8 * g2test::randn_vec(rng, 7);
      const Mat a = alpha_matrix(m, q);
      const double h = 1e-5;
      for (int dir = 0; dir < 7; ++dir) {
        Vec qp = q, qm = q;
        qp[dir] += h;
        qm[dir] -= h;
        const Vec3 fd = (c.nu(qp) - c.nu(qm)) / (2.0 * h);
        for (int i = 0; i < 3; ++i) fd_err = std::max(fd_err, std::abs(fd[i] - a(i, dir)));
      }
      // invariance along the flows
      const Vec3 base = c.nu(q);
      for (int j = 0; j < 3; ++j) {
        const Vec moved = flow(m.generators[j], 0.37, q);
        inv_err = std::max(inv_err, (c.nu(moved) - base).cwiseAbs().maxCoeff());
      }
    }
    CHECK(fd_err < 1e-6);
    CHECK(inv_err < 1e-8);
  }
}

TEST_CASE("chart uniqueness: same base point, same values") {
  ModelInstance m = flat_s1_c3();
  Vec p0 = Vec::Zero(7);
  p0[0] = 1.0;
  MomentChart c1 = build_moment_chart(m, p0, 8, 11);
  MomentChart c2 = build_moment_chart(m, p0, 8, 77);
  std::mt19937_64 rng(803);
  for (int t = 0; t < 10; ++t) {
    Vec q = p0 + g2test::randn_vec(rng, 7);
    CHECK((c1.nu(q) - c2.nu(q)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("vanishing orders at the T^2 stabilizer of S^1 x C^3") {
  ModelInstance m = flat_s1_c3();
  Vec p = Vec::Zero(7);
  p[0] = 0.9;  // on the z = 0 stratum
  MomentChart c = build_moment_chart(m, p);
  std::mt19937_64 rng(804);
  std::vector<Vec> dirs;
  for (int t = 0; t < 5; ++t) dirs.push_back(g2test::randn_vec(rng, 7));
  OrderEstimate est = vanishing_orders(c, p, dirs);
  CHECK(est.order[0] == 3);
  CHECK(est.order[1] == 2);
  CHECK(est.order[2] == 2);
  CHECK(est.order[3] == 2);
  for (int f = 0; f < 4; ++f) CHECK(std::abs(est.slope[f] - est.order[f]) < 0.15);
}

TEST_CASE("vanishing orders at the S^1 stabilizer of T^2 x R x C^2") {
  ModelInstance m = flat_t2_r_c2();
  Vec p = Vec::Zero(7);
  p[0] = 0.3;
  p[1] = 0.6;
  p[2] = 0.2;  // z = w = 0 stratum
  MomentChart c = build_moment_chart(m, p);
  std::mt19937_64 rng(805);
  std::vector<Vec> dirs;
  for (int t = 0; t < 5; ++t) dirs.push_back(g2test::randn_vec(rng, 7));
  OrderEstimate est = vanishing_orders(c, p, dirs);
  CHECK(est.order[0] == 2);
  CHECK(est.order[1] == 2);
  CHECK(est.order[2] == 1);
  CHECK(est.order[3] == 1);
}

TEST_CASE("principal points have orders 0 or 1") {
  ModelInstance m = flat_s1_c3();
  Vec p(7);
  p << 0.5, 0.9, 0.4, 0.7, -0.6, 0.8, 0.5;
  MomentChart c = build_moment_chart(m, p);
  std::mt19937_64 rng(806);
  std::vector<Vec> dirs{g2test::randn_vec(rng, 7), g2test::randn_vec(rng, 7)};
  OrderEstimate est = vanishing_orders(c, p, dirs);
  for (int f = 0; f < 3; ++f) CHECK(est.order[f] <= 1);
  CHECK(est.order[3] == 0);  // beta is nonzero on the principal stratum
}

TEST_CASE("singular image of the free quotient is empty") {
  ModelInstance m = flat_quotient(iso_pi());
  MomentChart c = build_moment_chart(m, Vec::Zero(7));
  SingularImage img = singular_image(c, m);
  CHECK(img.samples.empty());
}

TEST_CASE("singular image of S^1 x C^3 is the trivalent star") {
  ModelInstance m = flat_s1_c3();
  Vec p0 = Vec::Zero(7);
  MomentChart c = build_moment_chart(m, p0);
  SingularImage img = singular_image(c, m, 20, 5);
  REQUIRE(!img.samples.empty());
  CHECK(img.incidence_residual < 1e-8);
  CHECK(img.trivalent);

  // the three rays carry the stated sign pattern
  bool saw_pos_nu2 = false, saw_neg_nu3 = false, saw_antidiag = false;
  for (const auto& s : img.samples) {
    if (s.stabilizer_dim != 1) continue;
    if (std::abs(s.nu[0]) < 1e-8 && s.nu[1] > 1e-4 && std::abs(s.nu[2]) < 1e-8)
      saw_pos_nu2 = true;
    if (std::abs(s.nu[0]) < 1e-8 && std::abs(s.nu[1]) < 1e-8 && s.nu[2] < -1e-4)
      saw_neg_nu3 = true;
    if (std::abs(s.nu[0]) < 1e-8 && s.nu[1] < -1e-4 &&
        std::abs(s.nu[1] + s.nu[2]) < 1e-8)
      saw_antidiag = true;
  }
  CHECK(saw_pos_nu2);
  CHECK(saw_neg_nu3);
  CHECK(saw_antidiag);

  std::ostringstream os;
  write_csv(os, img);
  CHECK(os.str().rfind("x,y,z,stratum\n", 0) == 0);
}

TEST_CASE("singular image of T^2 x R x C^2 is the nu_3 line") {
  ModelInstance m = flat_t2_r_c2();
  Vec p0 = Vec::Zero(7);
  MomentChart c = build_moment_chart(m, p0);
  SingularImage img = singular_image(c, m, 20, 6);
  REQUIRE(!img.samples.empty());
  for (const auto& s : img.samples) {
    CHECK(s.stabilizer_dim == 1);
    CHECK(std::abs(s.nu[0]) < 1e-8);
    CHECK(std::abs(s.nu[1]) < 1e-8);
  }
}

TEST_CASE("generator change transforms the image linearly") {
  ModelInstance m = flat_s1_c3();
  MomentChart c = build_moment_chart(m, Vec::Zero(7));
  // change basis by a unimodular K: U'_i = K_i^j U_j
  Mat3 K;
  K << 1, 1, 0, 0, 1, 0, 0, 0, 1;
  ModelInstance m2 = m;
  for (int i = 0; i < 3; ++i) {
    Mat M = Mat::Zero(7, 7);
    Vec cc = Vec::Zero(7);
    for (int j = 0; j < 3; ++j) {
      M += K(i, j) * m.generators[j].M;
      cc += K(i, j) * m.generators[j].c;
    }
    m2.generators[i] = AffineField{M, cc};
  }
  MomentChart c2 = build_moment_chart(m2, Vec::Zero(7));
  // alpha transforms by det(K) K^{-T}, hence so does nu
  const Mat3 T = K.determinant() * K.inverse().transpose();
  std::mt19937_64 rng(807);
  for (int t = 0; t < 8; ++t) {
    Vec q = g2test::randn_vec(rng, 7);
    const Vec3 lhs = c2.nu(q);
    const Vec3 rhs = T * c.nu(q);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-8);
  }
  // the trivalent incidence survives the change of basis
  SingularImage img2 = singular_image(c2, m2, 16, 7);
  CHECK(img2.incidence_residual < 1e-8);
  CHECK(img2.trivalent);
}
