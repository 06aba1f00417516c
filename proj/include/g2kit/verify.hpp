#pragma once

// The acceptance suites behind `verify`: each check pins its tolerance and
// reports the measured residual with the identity it verifies.

#include <chrono>

#include "g2kit/curvature.hpp"
#include "g2kit/io.hpp"
#include "g2kit/moments.hpp"
#include "g2kit/reduction.hpp"

namespace g2kit::verify {

struct Options {
  std::uint64_t seed = 1;
  int big_grid = 48;    // grid for the large field checks
  int small_grid = 16;  // grid for flags and auxiliary field checks
};

using Checks = std::vector<CheckRecord>;

namespace detail {

inline void add(Checks& out, const std::string& name, const std::string& anchor,
                double residual, double tol, bool flip = false) {
  // flip: the check demands residual ABOVE the threshold
  out.push_back({name, anchor, residual, tol, flip ? residual > tol : residual < tol});
}

inline KForm phi_model7() {
  KForm f = KForm::basis(7, {0, 1, 2});
  f += KForm::basis(7, {0, 3, 4}, -1.0);
  f += KForm::basis(7, {0, 5, 6}, -1.0);
  f += KForm::basis(7, {1, 3, 5}, -1.0);
  f += KForm::basis(7, {1, 6, 4}, -1.0);
  f += KForm::basis(7, {2, 3, 6}, -1.0);
  f += KForm::basis(7, {2, 4, 5}, -1.0);
  return f;
}

inline Mat random_gl7(std::mt19937_64& rng) {
  auto randn = [&rng](int r, int c) {
    std::normal_distribution<double> N(0.0, 1.0);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = N(rng);
    return m;
  };
  Eigen::HouseholderQR<Mat> qr1(randn(7, 7)), qr2(randn(7, 7));
  Mat q1 = qr1.householderQ(), q2 = qr2.householderQ();
  std::uniform_real_distribution<double> U(0.6, 1.7);
  Vec d(7);
  for (int i = 0; i < 7; ++i) d[i] = U(rng);
  return q1 * d.asDiagonal() * q2;
}

inline std::array<std::array<long long, 7>, 3> plane(std::array<long long, 7> a,
                                                     std::array<long long, 7> b,
                                                     std::array<long long, 7> c) {
  return {a, b, c};
}

}  // namespace detail

// criterion 1: the model form induces the Euclidean metric
inline Checks check_metric_recovery(const Options&) {
  Checks out;
  const G2Point gp = metric_from_3form(detail::phi_model7());
  const double res = (gp.g.g - Mat::Identity(7, 7)).cwiseAbs().maxCoeff();
  detail::add(out, "metric_recovery", "g(phi_model) = identity", res, 1e-12);
  return out;
}

// criterion 2: the six closed-form star identities of the reduced metric
inline Checks check_star_identities(const Options& opt) {
  Checks out;
  std::mt19937_64 rng(opt.seed * 1009 + 2);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> Ua(-0.9, 0.9);
  double worst[6] = {0, 0, 0, 0, 0, 0};
  for (int trial = 0; trial < 200; ++trial) {
    // random SPD B with det 1, a in (-1, 1), random coframe rows
    Mat3 m0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m0(i, j) = N(rng);
    Mat3 B = spd_invsqrt(SPD3(Mat3(m0 * m0.transpose() + 3.0 * Mat3::Identity()))).m;
    B /= std::cbrt(B.determinant());
    const Mat3 A = (B * B).inverse();
    const Mat3 B2 = B * B, B2i = A;
    const double a = Ua(rng);
    const double b2 = 1.0 - a * a;
    Mat P = detail::random_gl7(rng);
    KForm al[3], th[3], be(7, 1);
    for (int i = 0; i < 3; ++i) {
      al[i] = KForm(7, 1);
      th[i] = KForm(7, 1);
      for (int c = 0; c < 7; ++c) {
        al[i][c] = P(i, c);
        th[i][c] = P(4 + i, c);
      }
    }
    for (int c = 0; c < 7; ++c) be[c] = P(3, c);

    Mat g = Mat::Zero(7, 7);
    auto add_sym = [&g](const KForm& u, const KForm& v, double c) {
      for (int x = 0; x < 7; ++x)
        for (int y = 0; y < 7; ++y) g(x, y) += 0.5 * c * (u[x] * v[y] + v[x] * u[y]);
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        add_sym(th[i], th[j], A(i, j));
        add_sym(al[i], al[j], A(i, j) / b2);
      }
    add_sym(be, be, 1.0 / b2);
    Metric gm(7, g);
    KForm al123 = wedge(wedge(al[0], al[1]), al[2]);
    KForm th123 = wedge(wedge(th[0], th[1]), th[2]);
    KForm orient = wedge(wedge(al123, be), th123);
    KForm vol(7, 7);
    vol[0] = orient[0] > 0 ? 1.0 : -1.0;
    auto star = [&](const KForm& f) { return hodge(gm, vol, f); };
    auto rel = [](const KForm& got, const KForm& want) {
      return (got - want).max_abs() / std::max(1e-300, want.max_abs());
    };

    // (1) dvol = b^-4 alhat_123 beta theta^123
    KForm one(7, 0);
    one[0] = 1.0;
    worst[0] = std::max(worst[0], rel(star(one), (1.0 / (b2 * b2)) * orient));
    // (2) *alhat_123 = b^2 beta theta^123
    worst[1] = std::max(worst[1], rel(star(al123), b2 * wedge(be, th123)));
    // (3) *(alhat_ij theta^p)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        for (int p = 0; p < 3; ++p) {
          KForm lhs = star(wedge(wedge(al[i], al[j]), th[p]));
          KForm rhs(7, 4);
          for (int k = 0; k < 3; ++k) {
            if (!eps3(i, j, k)) continue;
            for (int l = 0; l < 3; ++l)
              for (int r = 0; r < 3; ++r)
                for (int s = 0; s < 3; ++s)
                  for (int t = 0; t < 3; ++t) {
                    const double c = eps3(i, j, k) * B2i(k, l) * B2(p, r) * eps3(r, s, t);
                    if (c != 0.0)
                      rhs += (-0.5 * c) * wedge(wedge(be, al[l]), wedge(th[s], th[t]));
                  }
          }
          worst[2] = std::max(worst[2], rel(lhs, rhs));
        }
      }
    // (4) *(beta alhat_i theta^p)
    for (int i = 0; i < 3; ++i)
      for (int p = 0; p < 3; ++p) {
        KForm lhs = star(wedge(wedge(be, al[i]), th[p]));
        KForm rhs(7, 4);
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
              for (int r = 0; r < 3; ++r)
                for (int s = 0; s < 3; ++s)
                  for (int t = 0; t < 3; ++t) {
                    const double c = B2(i, j) * B2(p, r) * eps3(j, k, l) * eps3(r, s, t);
                    if (c != 0.0)
                      rhs += (-0.25 * c) * wedge(wedge(al[k], al[l]), wedge(th[s], th[t]));
                  }
        worst[3] = std::max(worst[3], rel(lhs, rhs));
      }
    // (5) *(alhat_i theta^pq)
    for (int i = 0; i < 3; ++i)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          if (p == q) continue;
          KForm lhs = star(wedge(wedge(al[i], th[p]), th[q]));
          KForm rhs(7, 4);
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              for (int l = 0; l < 3; ++l)
                for (int r = 0; r < 3; ++r)
                  for (int s = 0; s < 3; ++s) {
                    const double c = B2(i, j) * B2i(r, s) * eps3(j, k, l) * eps3(p, q, r);
                    if (c != 0.0)
                      rhs += (0.5 * c / b2) * wedge(wedge(be, al[k]), wedge(al[l], th[s]));
                  }
          worst[4] = std::max(worst[4], rel(lhs, rhs));
        }
    // (6) *theta^123 = b^-4 alhat_123 beta
    worst[5] = std::max(worst[5], rel(star(th123), (1.0 / (b2 * b2)) * wedge(al123, be)));
  }
  static const char* names[6] = {"star_volume",       "star_alpha123", "star_alpha2_theta",
                                 "star_beta_alpha_theta", "star_alpha_theta2",
                                 "star_theta123"};
  static const char* anchors[6] = {
      "dvol = b^-4 alhat_123 beta theta^123",
      "*alhat_123 = b^2 beta theta^123",
      "*(alhat_ij theta^p) = -1/2 eps_ij^k B^-2_kl B^2_pr eps^r_st beta alhat_l theta^st",
      "*(beta alhat_i theta^p) = -1/4 B^2_ij B^2_pr eps^jkl eps^r_st alhat_kl theta^st",
      "*(alhat_i theta^pq) = 1/(2 b^2) B^2_ij B^-2_rs eps^jkl eps^pq_r beta alhat_kl theta^s",
      "*theta^123 = b^-4 alhat_123 beta"};
  for (int i = 0; i < 6; ++i) detail::add(out, names[i], anchors[i], worst[i], 1e-9);
  return out;
}

// criterion 3: reconstruction round trip on 500 random configurations
inline Checks check_reconstruction(const Options& opt) {
  Checks out;
  std::mt19937_64 rng(opt.seed * 1013 + 3);
  std::normal_distribution<double> N(0.0, 1.0);
  double worst = 0.0;
  int done = 0;
  while (done < 500) {
    KForm phi = pullback(detail::phi_model7(), detail::random_gl7(rng));
    G2Point gp = metric_from_3form(phi);
    Vec U1(7), U2(7), U3(7);
    for (int i = 0; i < 7; ++i) {
      U1[i] = N(rng);
      U2[i] = N(rng);
      U3[i] = N(rng);
    }
    PointReduction pr;
    try {
      pr = point_reduce(gp, U1, U2, U3);
    } catch (const DependentGenerators&) {
      continue;
    }
    if (std::abs(pr.a) >= 1.0 - 1e-6) continue;
    const Reconstruction rec = reconstruct(pr);
    const double scale = std::max(1.0, phi.max_abs());
    worst = std::max(worst, (rec.phi - phi).max_abs() / scale);
    ++done;
  }
  detail::add(out, "reconstruction_round_trip",
              "phi = -detB^2/b^2 alpha_123 + adjB^2/b^2 beta alpha theta + ... (500 samples)",
              worst, 1e-9);
  return out;
}

// criterion 4: the diagonal closed family on the big grid
inline Checks check_t4_diagonal(const Options& opt) {
  Checks out;
  std::array<std::function<double(double, double)>, 3> f{
      [](double s, double y) { return std::exp(0.1 * std::sin(s + y)); },
      [](double s, double y) { return std::exp(0.1 * std::sin(s + y)); },
      [](double s, double y) { return std::exp(0.1 * std::sin(s + y)); }};

  // d phi on the big grid, streamed sector by sector
  {
    ModelInstance m = t4_diagonal(0.5, f, opt.big_grid);
    const Domain& base = m.invariant->base;
    DomainDerivs ops(base);
    double dphi = 0.0;
    InvariantForm phi = sample_invariant(base, 3, m.phi_at);
    for (int s = 0; s < 8; ++s) {
      if (!phi.sectors[s]) continue;
      if (phi.sectors[s]->degree < base.dim())
        dphi = std::max(dphi, ext_d(*phi.sectors[s], ops).sup_norm());
      phi.sectors[s].reset();
    }
    detail::add(out, "t4_diagonal_closed_" + std::to_string(opt.big_grid),
                "d phi = 0 for the diagonal family", dphi, 1e-8);
  }

  // quotient flags at the auxiliary grid
  {
    ModelInstance m = t4_diagonal(0.5, f, opt.small_grid);
    ReductionReport r = classify_action(m, 32, opt.seed);
    QuotientTriple q = quotient_triple(r);
    TripleFlags flags = classify_triple(q.triple);
    detail::add(out, "t4_diagonal_hypersymplectic", "Q positive definite and d omega_i = 0",
                flags.hypersymplectic ? 0.0 : 1.0, 0.5);
    detail::add(out, "t4_diagonal_not_hyperkahler", "normalized Q is non-constant",
                flags.hyperkahler ? 1.0 : 0.0, 0.5);
  }
  return out;
}

// criterion 5: flatness of the constant-A torsion-free configuration
inline Checks check_flatness(const Options& opt) {
  Checks out;
  auto A_at = [](const Vec&) { return Mat3(Mat3::Identity()); };
  auto cf_at = [](const Vec&) { return Mat(Mat::Identity(4, 4)); };
  ModelInstance m = type1_family(0.5, torus(4, opt.big_grid), A_at, cf_at);
  const double cn = curvature_norm(m.invariant->base, 7, m.invariant->metric);
  detail::add(out, "flat_family_curvature_" + std::to_string(opt.big_grid),
              "Riemann tensor of the constant-A metric vanishes", cn, 1e-6);
  return out;
}

// criterion 6: the product with the standard triple
inline Checks check_product(const Options& opt) {
  Checks out;
  Domain base = torus(4, std::max(12, opt.small_grid));
  ModelInstance m = product_t3_standard(base);
  DomainDerivs ops(base);
  InvariantForm phi = sample_invariant(base, 3, m.phi_at);
  InvariantForm sphi = sample_invariant(base, 4, m.starphi_at);
  detail::add(out, "product_closed", "d phi = 0 for T^3 x X products",
              ext_d(phi, ops).sup_norm(), 1e-12);
  detail::add(out, "product_coclosed", "d *phi = 0 for the standard triple",
              ext_d(sphi, ops).sup_norm(), 1e-12);

  ReductionReport r = classify_action(m, 24, opt.seed);
  QuotientTriple q = quotient_triple(r);
  detail::add(out, "product_wedge_relation", "omega~_i ^ omega~_j = 2 A_ij mu",
              q.wedge_residual, 1e-12);
  TripleFlags flags = classify_triple(q.triple);
  detail::add(out, "product_torsion_free", "d(A^ij omega~_j) = 0",
              flags.torsion_free ? 0.0 : 1.0, 0.5);
  return out;
}

// criterion 7: the classification table of flat quotients
inline Checks check_classification(const Options& opt) {
  Checks out;
  struct Row {
    std::array<std::array<long long, 7>, 3> pi;
    int type;
    double a;
    const char* name;
  };
  const Row rows[3] = {
      {detail::plane({1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0}), 2,
       1.0, "plane_e123"},
      {detail::plane({1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}), 3,
       0.0, "plane_e124"},
      {detail::plane({1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0, 0}), 1,
       1.0 / std::sqrt(2.0), "plane_e12_34"}};
  for (const Row& row : rows) {
    ModelInstance m = flat_quotient(row.pi);
    ReductionReport r = classify_action(m, 24, opt.seed);
    const double type_err = (r.orbit_type == row.type) ? 0.0 : 1.0;
    detail::add(out, std::string("classify_") + row.name + "_type",
                "orbit trichotomy by phi(U_1,U_2,U_3) det B", type_err, 0.5);
    detail::add(out, std::string("classify_") + row.name + "_a",
                "a = phi(U_1,U_2,U_3) det B", std::abs(std::abs(r.a) - row.a), 1e-10);
  }
  return out;
}

// criterion 8: moment charts on both isotropic flat models
inline Checks check_moments(const Options& opt) {
  Checks out;
  int model_id = 0;
  for (ModelInstance m : {flat_s1_c3(), flat_t2_r_c2()}) {
    Vec p0 = Vec::Zero(7);
    p0[0] = 0.5;
    MomentChart c = build_moment_chart(m, p0, 16, opt.seed + model_id);
    detail::add(out, m.name + "_loop", "closed alpha_i: zero circulation",
                c.loop_residual, 1e-10);

    std::mt19937_64 rng(opt.seed * 1021 + model_id);
    std::normal_distribution<double> N(0.0, 0.45);
    double fd_err = 0.0, inv_err = 0.0;
    const int npts = 1000;
    for (int t = 0; t < npts; ++t) {
      Vec q = p0;
      for (int i = 0; i < 7; ++i) q[i] += N(rng);
      const Mat a = alpha_matrix(m, q);
      const double h = 1e-5;
      const int dir = t % 7;
      Vec qp = q, qm = q;
      qp[dir] += h;
      qm[dir] -= h;
      const Vec3 fd = (c.nu(qp) - c.nu(qm)) / (2.0 * h);
      for (int i = 0; i < 3; ++i) fd_err = std::max(fd_err, std::abs(fd[i] - a(i, dir)));
      const int j = t % 3;
      const Vec moved = flow(m.generators[j], 0.31 + 0.1 * j, q);
      inv_err = std::max(inv_err, (c.nu(moved) - c.nu(q)).cwiseAbs().maxCoeff());
    }
    detail::add(out, m.name + "_dnu", "d nu_i = alpha_i (finite differences, 1000 points)",
                fd_err, 1e-6);
    detail::add(out, m.name + "_invariance", "nu_i constant along the torus flows",
                inv_err, 1e-8);
    ++model_id;
  }
  return out;
}

// criterion 9: vanishing orders at the two stabilizer strata
inline Checks check_orders(const Options& opt) {
  Checks out;
  std::mt19937_64 rng(opt.seed * 1031 + 9);
  std::normal_distribution<double> N(0.0, 1.0);
  auto dirs = [&rng, &N](int n) {
    std::vector<Vec> d;
    for (int t = 0; t < n; ++t) {
      Vec v(7);
      for (int i = 0; i < 7; ++i) v[i] = N(rng);
      d.push_back(v);
    }
    return d;
  };
  {
    ModelInstance m = flat_s1_c3();
    Vec p = Vec::Zero(7);
    p[0] = 0.8;
    MomentChart c = build_moment_chart(m, p, 10, opt.seed);
    OrderEstimate est = vanishing_orders(c, p, dirs(5));
    const std::array<int, 4> want{3, 2, 2, 2};
    double slope_err = 0.0, order_err = 0.0;
    for (int f = 0; f < 4; ++f) {
      slope_err = std::max(slope_err, std::abs(est.slope[f] - want[f]));
      order_err = std::max(order_err, double(std::abs(est.order[f] - want[f])));
    }
    detail::add(out, "orders_T2_stabilizer", "orders (3,2,2,2) at the z = 0 stratum",
                order_err, 0.5);
    detail::add(out, "orders_T2_slopes", "regression slopes within 0.15 of integers",
                slope_err, 0.15);
  }
  {
    ModelInstance m = flat_t2_r_c2();
    Vec p = Vec::Zero(7);
    p[0] = 0.4;
    p[1] = 0.9;
    p[2] = 0.3;
    MomentChart c = build_moment_chart(m, p, 10, opt.seed);
    OrderEstimate est = vanishing_orders(c, p, dirs(5));
    const std::array<int, 4> want{2, 2, 1, 1};
    double slope_err = 0.0, order_err = 0.0;
    for (int f = 0; f < 4; ++f) {
      slope_err = std::max(slope_err, std::abs(est.slope[f] - want[f]));
      order_err = std::max(order_err, double(std::abs(est.order[f] - want[f])));
    }
    detail::add(out, "orders_S1_stabilizer", "orders (2,2,1,1) at the z = w = 0 stratum",
                order_err, 0.5);
    detail::add(out, "orders_S1_slopes", "regression slopes within 0.15 of integers",
                slope_err, 0.15);
  }
  return out;
}

// criterion 10: the singular image of S^1 x C^3
inline Checks check_singular_image(const Options& opt) {
  Checks out;
  ModelInstance m = flat_s1_c3();
  MomentChart c = build_moment_chart(m, Vec::Zero(7), 10, opt.seed);
  SingularImage img = singular_image(c, m, 24, opt.seed + 4);
  detail::add(out, "singular_image_incidence",
              "rays {(0,nu,0): nu>0}, {(0,0,nu): nu<0}, {(0,-nu,nu): nu>0} and the origin",
              img.incidence_residual, 1e-8);
  detail::add(out, "singular_image_trivalent", "primitive ray slopes sum to zero",
              img.trivalent ? 0.0 : 1.0, 0.5);
  return out;
}

// criterion 11: the leaf foliation of an isotropic flat model
inline Checks check_leaves(const Options& opt) {
  Checks out;
  ModelInstance m = flat_t2_r_c2();
  ReductionReport r = classify_action(m, 16, opt.seed);
  Vec p0(7);
  p0 << 0.4, 0.8, 0.25, 0.95, 0.35, 0.85, -0.4;
  LeafData leaf = leaf_triples(r, p0);
  detail::add(out, "leaf_phi_restriction", "phi restricted to a leaf vanishes",
              leaf.phi_restriction, 1e-12);
  detail::add(out, "leaf_calibration", "*phi restricted to a leaf is its volume form",
              leaf.calibration_residual, 1e-10);
  detail::add(out, "leaf_triple_closed", "d omega-hat_i = 0 on the leaf",
              leaf.d_omega_residual, 1e-8);
  detail::add(out, "leaf_intersection",
              "omega-hat_i ^ omega-hat_j = 2 adj(B^2)_ij theta-hat^123 beta-hat",
              leaf.intersection_residual, 1e-9);
  return out;
}

// criterion 12: the Monge-Ampere residual detects curved potentials
inline Checks check_monge_ampere(const Options& opt) {
  Checks out;
  Domain box(std::vector<Axis>{box_axis(opt.big_grid, -1.0, 1.0),
                               box_axis(opt.big_grid, -1.0, 1.0),
                               box_axis(opt.big_grid, -1.0, 1.0)});
  FormField u1 = sample_scalar(box, [](const Vec& x) {
    return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  });
  detail::add(out, "monge_ampere_quadratic", "det(Hess u) = 1 for unit quadratics",
              monge_ampere_residual(u1), 1e-10);
  FormField u2 = sample_scalar(box, [](const Vec& x) {
    return 0.5 * (4.0 * x[0] * x[0] + 0.5 * x[1] * x[1] + 0.5 * x[2] * x[2]);
  });
  detail::add(out, "monge_ampere_anisotropic", "det(Hess u) = 1 for det-1 quadratics",
              monge_ampere_residual(u2), 1e-10);
  FormField u3 = sample_scalar(box, [](const Vec& x) {
    return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) + 0.1 * std::sin(x[0]);
  });
  detail::add(out, "monge_ampere_perturbed", "perturbed potential breaks det(Hess u) = 1",
              monge_ampere_residual(u3), 0.05, /*flip=*/true);
  return out;
}

inline Checks suite_pointwise(const Options& o) {
  Checks out = check_metric_recovery(o);
  for (auto& c : check_reconstruction(o)) out.push_back(c);
  return out;
}

inline Checks suite_stars(const Options& o) { return check_star_identities(o); }

inline Checks suite_models(const Options& o) {
  Checks out = check_t4_diagonal(o);
  for (auto& c : check_flatness(o)) out.push_back(c);
  for (auto& c : check_product(o)) out.push_back(c);
  for (auto& c : check_monge_ampere(o)) out.push_back(c);
  return out;
}

inline Checks suite_reduction(const Options& o) {
  Checks out = check_classification(o);
  for (auto& c : check_leaves(o)) out.push_back(c);
  return out;
}

inline Checks suite_moments(const Options& o) {
  Checks out = check_moments(o);
  for (auto& c : check_orders(o)) out.push_back(c);
  for (auto& c : check_singular_image(o)) out.push_back(c);
  return out;
}

inline Checks suite_all(const Options& o) {
  Checks out = suite_pointwise(o);
  for (auto& c : suite_stars(o)) out.push_back(c);
  for (auto& c : suite_models(o)) out.push_back(c);
  for (auto& c : suite_reduction(o)) out.push_back(c);
  for (auto& c : suite_moments(o)) out.push_back(c);
  return out;
}

inline Checks run_suite(const std::string& name, const Options& o) {
  if (name == "pointwise") return suite_pointwise(o);
  if (name == "stars") return suite_stars(o);
  if (name == "models") return suite_models(o);
  if (name == "reduction") return suite_reduction(o);
  if (name == "moments") return suite_moments(o);
  if (name == "all") return suite_all(o);
  throw Error("unknown suite: " + name);
}

}  // namespace g2kit::verify
