#include <catch2/catch_amalgamated.hpp>

#include "g2kit/models.hpp"
#include "test_helpers.hpp"

using namespace g2kit;

namespace {

const std::array<std::array<long long, 7>, 3> kPi123{{{1, 0, 0, 0, 0, 0, 0},
                                                      {0, 1, 0, 0, 0, 0, 0},
                                                      {0, 0, 1, 0, 0, 0, 0}}};
const std::array<std::array<long long, 7>, 3> kPi124{{{1, 0, 0, 0, 0, 0, 0},
                                                      {0, 1, 0, 0, 0, 0, 0},
                                                      {0, 0, 0, 1, 0, 0, 0}}};
const std::array<std::array<long long, 7>, 3> kPi12_34{{{1, 0, 0, 0, 0, 0, 0},
                                                        {0, 1, 0, 0, 0, 0, 0},
                                                        {0, 0, 1, 1, 0, 0, 0}}};

void check_model_basics(const ModelInstance& m, int npts = 40) {
  auto pts = m.samples(npts, 7u);
  double gen_comm = 0.0, star_err = 0.0;
  for (const Vec& p : pts) {
    const G2Point gp = metric_from_3form(m.phi_at(p));  // throws unless positive
    star_err = std::max(star_err, (m.starphi_at(p) - gp.starphi).max_abs());
    // commuting generators: [U, V] = JV U - JU V for affine fields
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const Vec br = m.generators[j].jacobian() * m.generators[i](p) -
                       m.generators[i].jacobian() * m.generators[j](p);
        gen_comm = std::max(gen_comm, br.cwiseAbs().maxCoeff());
      }
  }
  CHECK(gen_comm < 1e-10);
  CHECK(star_err < 1e-10);
}

}  // namespace

TEST_CASE("flat quotient: primitivity and type metadata") {
  CHECK(flat_quotient(kPi123).expected_type == 2);
  CHECK(flat_quotient(kPi124).expected_type == 3);
  ModelInstance m = flat_quotient(kPi12_34);
  CHECK(m.expected_type == 1);
  CHECK(std::abs(m.a_const - 1.0 / std::sqrt(2.0)) < 1e-12);

  // dependent and non-primitive bases are rejected
  std::array<std::array<long long, 7>, 3> dep{{{1, 0, 0, 0, 0, 0, 0},
                                               {0, 1, 0, 0, 0, 0, 0},
                                               {1, 1, 0, 0, 0, 0, 0}}};
  CHECK_THROWS_AS(flat_quotient(dep), DependentGenerators);
  std::array<std::array<long long, 7>, 3> imp{{{2, 0, 0, 0, 0, 0, 0},
                                               {0, 2, 0, 0, 0, 0, 0},
                                               {0, 0, 2, 0, 0, 0, 0}}};
  CHECK_THROWS_AS(flat_quotient(imp), DependentGenerators);
}

TEST_CASE("flat quotient basics") { check_model_basics(flat_quotient(kPi12_34)); }

TEST_CASE("product model: closed and coclosed for the standard triple") {
  Domain base = torus(4, 12);
  ModelInstance m = product_t3_standard(base);
  check_model_basics(m, 25);
  DomainDerivs ops(base);
  InvariantForm phi = sample_invariant(base, 3, m.phi_at);
  InvariantForm sphi = sample_invariant(base, 4, m.starphi_at);
  CHECK(ext_d(phi, ops).sup_norm() < 1e-12);
  CHECK(ext_d(sphi, ops).sup_norm() < 1e-12);

  // the displayed dual of the product form
  Vec x0 = Vec::Zero(7);
  KForm sp = m.starphi_at(x0);
  KForm want = KForm::basis(7, {0, 1, 2, 3});
  HSTriplePoint st = standard_triple();
  want -= wedge(detail::lift_base(st.omega[0]), KForm::basis(7, {5, 6}));
  want -= wedge(detail::lift_base(st.omega[1]), KForm::basis(7, {6, 4}));
  want -= wedge(detail::lift_base(st.omega[2]), KForm::basis(7, {4, 5}));
  CHECK((sp - want).max_abs() < 1e-14);
}

TEST_CASE("product model over a non-constant hypersymplectic triple") {
  // perturbed but still definite: omega_1 scaled by a positive function
  Domain base = torus(4, 12);
  auto omega_at = [](const Vec& x) {
    HSTriplePoint s = standard_triple();
    const double f = 1.0 + 0.2 * std::sin(x[0]) * std::cos(x[1]);
    std::array<KForm, 3> om = s.omega;
    om[0] = f * om[0];
    return om;
  };
  ModelInstance m = product_t3(base, omega_at);
  // phi is positive; *phi comes from the generic star (Q != I)
  check_model_basics(m, 10);
  // this triple is not closed, so d phi != 0: the product detects it
  DomainDerivs ops(base);
  InvariantForm phi = sample_invariant(base, 3, m.phi_at);
  CHECK(ext_d(phi, ops).sup_norm() > 1e-3);
}

TEST_CASE("closed Type-1 family: constant A") {
  Domain base = torus(4, 8);
  auto A_at = [](const Vec&) { return Mat3(Mat3::Identity()); };
  auto cf_at = [](const Vec&) { return Mat(Mat::Identity(4, 4)); };
  ModelInstance m = type1_family(0.5, base, A_at, cf_at);
  check_model_basics(m, 20);
  DomainDerivs ops(base);
  InvariantForm phi = sample_invariant(base, 3, m.phi_at);
  InvariantForm sphi = sample_invariant(base, 4, m.starphi_at);
  CHECK(ext_d(phi, ops).sup_norm() < 1e-12);
  CHECK(ext_d(sphi, ops).sup_norm() < 1e-12);

  // a -> 0 limit reproduces the isotropic-case display
  ModelInstance m0 = type1_family(1e-14, base, A_at, cf_at);
  KForm phi0 = m0.phi_at(Vec::Zero(7));
  KForm want(7, 3);
  // -alpha_123 + A beta alpha_i theta^i + 1/2 eps alpha theta theta, A = I
  want -= wedge(wedge(KForm::basis(7, {0}), KForm::basis(7, {1})), KForm::basis(7, {2}));
  for (int i = 0; i < 3; ++i)
    want += wedge(wedge(KForm::basis(7, {3}), KForm::basis(7, {i})), KForm::basis(7, {4 + i}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int s = eps3(i, j, k);
        if (s)
          want += 0.5 * s * wedge(wedge(KForm::basis(7, {i}), KForm::basis(7, {4 + j})),
                                  KForm::basis(7, {4 + k}));
      }
  CHECK((phi0 - want).max_abs() < 1e-12);
}

TEST_CASE("t4_diagonal: closed with non-flat data") {
  std::array<std::function<double(double, double)>, 3> f{
      [](double s, double y) { return std::exp(0.1 * std::sin(s + y)); },
      [](double s, double y) { return std::exp(0.1 * std::sin(s + y)); },
      [](double s, double y) { return std::exp(0.1 * std::sin(s + y)); }};
  ModelInstance m = t4_diagonal(0.5, f, 16);
  check_model_basics(m, 15);
  DomainDerivs ops(m.invariant->base);
  InvariantForm phi = sample_invariant(m.invariant->base, 3, m.phi_at);
  CHECK(ext_d(phi, ops).sup_norm() < 1e-8);
  // the dual form is not closed for non-constant data
  InvariantForm sphi = sample_invariant(m.invariant->base, 4, m.starphi_at);
  CHECK(ext_d(sphi, ops).sup_norm() > 1e-4);
  // det A must be enforced
  auto bad = [](const Vec&) { return Mat3(2.0 * Mat3::Identity()); };
  auto cf = [](const Vec&) { return Mat(Mat::Identity(4, 4)); };
  CHECK_THROWS_AS(type1_family(0.5, m.invariant->base, bad, cf), IndefiniteTriple);
}

TEST_CASE("isotropic flat models: metric, isotropy, stabilizer pattern") {
  for (ModelInstance m : {flat_s1_c3(), flat_t2_r_c2()}) {
    const G2Point gp = metric_from_3form(m.phi_at(Vec::Zero(7)));
    CHECK((gp.g.g - Mat::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
    check_model_basics(m, 60);
    // positivity and isotropy at a thousand sampled points
    auto pts = m.samples(1000, 3u);
    double worst = 0.0;
    for (const Vec& p : pts) {
      CHECK_NOTHROW(metric_from_3form(m.phi_at(p)));
      const double v = evaluate(m.phi_at(p), {m.generator_at(0, p), m.generator_at(1, p),
                                              m.generator_at(2, p)});
      worst = std::max(worst, std::abs(v));
    }
    CHECK(worst < 1e-12);
  }

  // stabilizer ranks of S^1 x C^3
  ModelInstance s = flat_s1_c3();
  Vec p(7);
  p << 0.3, 0.8, 0.1, 0, 0, 0, 0;  // z1 != 0, z2 = z3 = 0
  Mat u(7, 3);
  for (int k = 0; k < 3; ++k) u.col(k) = s.generator_at(k, p);
  Eigen::JacobiSVD<Mat> svd(u);
  CHECK((svd.singularValues().array() > 1e-9).count() == 2);
  p.setZero();
  p[0] = 1.0;
  for (int k = 0; k < 3; ++k) u.col(k) = s.generator_at(k, p);
  Eigen::JacobiSVD<Mat> svd2(u);
  CHECK((svd2.singularValues().array() > 1e-9).count() == 1);
}

TEST_CASE("z2 quotient: gluing invariance and stabilizers") {
  ModelInstance m = z2_quotient_example();
  const Mat d = z2_gluing_differential();
  std::mt19937_64 rng(601);
  for (int t = 0; t < 10; ++t) {
    Vec p = g2test::randn_vec(rng, 7);
    // the form has constant coefficients; well-definedness across the gluing
    // is the statement pullback(phi, d_psi) = phi
    CHECK((pullback(m.phi_at(p), d) - m.phi_at(p)).max_abs() < 1e-12);
    CHECK((pullback(m.starphi_at(p), d) - m.starphi_at(p)).max_abs() < 1e-12);
  }
  Vec origin = Vec::Zero(7);
  CHECK(m.finite_stabilizer(origin) == 2);
  Vec off = Vec::Zero(7);
  off[0] = 0.7;
  CHECK(m.finite_stabilizer(off) == 1);
}
