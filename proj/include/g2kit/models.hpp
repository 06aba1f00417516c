#pragma once

// Constructors for the explicit flat examples: the torus quotient with a
// rational 3-plane of translations, products of T^3 with a hypersymplectic
// 4-manifold, the closed non-flat family over T^4, the two isotropic flat
// models, and the Z_2 quotient with an exceptional orbit. Each model carries
// exact pointwise evaluators and enough structure for the field pipeline.

#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "g2kit/g2point.hpp"
#include "g2kit/hstriple.hpp"
#include "g2kit/invariantform.hpp"

namespace g2kit {

struct LeafChart {
  Domain params;                            // 4-dimensional leaf parameters
  std::function<Vec(const Vec&)> embed;     // params -> ambient point
  std::function<Mat(const Vec&)> tangent;   // params -> 7x4 frame of the leaf
};

struct ModelInstance {
  std::string name;
  std::function<KForm(const Vec&)> phi_at;       // 3-form at an ambient point
  std::function<KForm(const Vec&)> starphi_at;   // exact dual 4-form
  std::array<AffineField, 3> generators;
  int expected_type = 0;

  // deterministic points on the principal stratum
  std::function<std::vector<Vec>(int, std::uint64_t)> samples;
  // order of the finite part of the stabilizer (1 = trivial); the continuous
  // part is detected from the rank of the generators
  std::function<int(const Vec&)> finite_stabilizer = [](const Vec&) { return 1; };

  // invariant representation: ambient coordinates are (x^1..x^d, theta^1..3)
  // and the action is translation in the theta block
  struct InvariantRep {
    Domain base;
    std::function<Mat(const Vec&)> metric;  // 7x7 in the (dx, theta) coframe
  };
  std::optional<InvariantRep> invariant;

  // leaf of the alpha-kernel foliation through a point (Type-3 flat models)
  std::function<LeafChart(const Vec&)> leaf_chart_at;

  // singular strata of the action, for the moment-map image analysis
  struct Stratum {
    int stabilizer_dim;  // 1 or 2
    std::function<std::vector<Vec>(int, std::uint64_t)> samples;
  };
  std::vector<Stratum> strata;

  // metadata
  double a_const = 0.0;
  std::function<Mat3(const Vec&)> A_field;  // base-point A for the closed family

  Vec generator_at(int i, const Vec& x) const { return generators[i](x); }
};

namespace detail {

inline KForm phi_flat_model() {
  KForm f = KForm::basis(7, {0, 1, 2});
  f += KForm::basis(7, {0, 3, 4}, -1.0);
  f += KForm::basis(7, {0, 5, 6}, -1.0);
  f += KForm::basis(7, {1, 3, 5}, -1.0);
  f += KForm::basis(7, {1, 6, 4}, -1.0);
  f += KForm::basis(7, {2, 3, 6}, -1.0);
  f += KForm::basis(7, {2, 4, 5}, -1.0);
  return f;
}

// Lift a form on the 4-dim base into ambient coordinates (base block first).
inline KForm lift_base(const KForm& f4) {
  KForm r(7, f4.degree());
  const auto& t4 = f4.table();
  const auto& t7 = r.table();
  for (int c = 0; c < f4.size(); ++c)
    if (f4[c] != 0.0) r[t7.rank_of_mask[t4.masks[c]]] = f4[c];
  return r;
}

inline std::vector<Vec> box_samples(const std::vector<std::pair<double, double>>& ranges, int n,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int s = 0; s < n; ++s) {
    Vec x(static_cast<int>(ranges.size()));
    for (std::size_t a = 0; a < ranges.size(); ++a) {
      std::uniform_real_distribution<double> U(ranges[a].first, ranges[a].second);
      x[a] = U(rng);
    }
    pts.push_back(x);
  }
  return pts;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(std::abs(a), std::abs(b)); }

}  // namespace detail

// --- flat torus quotient -------------------------------------------------

// Constant model form on T^7 = R^7 / (2 pi Z)^7 with the translation action
// along the integer 3-plane spanned by the given primitive basis.
inline ModelInstance flat_quotient(const std::array<std::array<long long, 7>, 3>& pi_basis) {
  // primitivity: the gcd of all 3x3 minors must be 1
  long long g = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k) {
        const auto& b = pi_basis;
        const long long det = b[0][i] * (b[1][j] * b[2][k] - b[1][k] * b[2][j]) -
                              b[0][j] * (b[1][i] * b[2][k] - b[1][k] * b[2][i]) +
                              b[0][k] * (b[1][i] * b[2][j] - b[1][j] * b[2][i]);
        g = detail::gcd_ll(g, det);
      }
  if (g == 0) throw DependentGenerators("flat_quotient: basis is linearly dependent");
  if (g != 1) throw DependentGenerators("flat_quotient: basis is not primitive");

  ModelInstance m;
  m.name = "flat_quotient";
  const KForm phi = detail::phi_flat_model();
  const G2Point gp = metric_from_3form(phi);
  m.phi_at = [phi](const Vec&) { return phi; };
  m.starphi_at = [sp = gp.starphi](const Vec&) { return sp; };
  for (int i = 0; i < 3; ++i) {
    Vec u(7);
    for (int c = 0; c < 7; ++c) u[c] = double(pi_basis[i][c]);
    m.generators[i] = AffineField::constant(u);
  }
  m.samples = [](int n, std::uint64_t seed) {
    return detail::box_samples(std::vector<std::pair<double, double>>(7, {0.0, 2.0 * M_PI}), n,
                               seed);
  };
  PointReduction pr = point_reduce(gp, m.generators[0].c, m.generators[1].c, m.generators[2].c);
  m.a_const = pr.a;
  if (std::abs(pr.phi_U) < 1e-12)
    m.expected_type = 3;
  else if (std::abs(std::abs(pr.a) - 1.0) < kNearAssociativeTol)
    m.expected_type = 2;
  else
    m.expected_type = 1;

  // leaves of the alpha-kernel distribution (constant): span completed to a
  // chart through the base point
  m.leaf_chart_at = [pr, phi](const Vec& p0) {
    Mat alpha(3, 7);
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 7; ++c) alpha(i, c) = pr.alpha[i][c];
    Eigen::JacobiSVD<Mat> svd(alpha, Eigen::ComputeFullV);
    Mat w = svd.matrixV().rightCols(4);  // kernel basis, orthonormal
    LeafChart chart;
    chart.params = torus(4, 12);
    chart.embed = [p0, w](const Vec& q) { return Vec(p0 + w * q); };
    chart.tangent = [w](const Vec&) { return w; };
    return chart;
  };
  return m;
}

// --- T^3 x X products ----------------------------------------------------

// phi = theta^123 - sum_i omega_i ^ theta^i over a hypersymplectic base.
// The triple is given by a pointwise evaluator on the 4-dim base.
inline ModelInstance product_t3(const Domain& base,
                                const std::function<std::array<KForm, 3>(const Vec&)>& omega_at,
                                const std::string& name = "product_t3") {
  if (base.dim() != 4) throw DimensionMismatch("product_t3: base must be 4-dimensional");
  ModelInstance m;
  m.name = name;
  auto phi_eval = [omega_at](const Vec& x) {
    const Vec xb = x.head(4);
    auto om = omega_at(xb);
    KForm th[3] = {KForm::basis(7, {4}), KForm::basis(7, {5}), KForm::basis(7, {6})};
    KForm f = wedge(wedge(th[0], th[1]), th[2]);
    for (int i = 0; i < 3; ++i) f -= wedge(detail::lift_base(om[i]), th[i]);
    return f;
  };
  m.phi_at = phi_eval;
  {
    Vec probe = Vec::Zero(7);
    for (int a = 0; a < 4; ++a) probe[a] = base.axes[a].lo + 0.37 * base.axes[a].length();
    try {
      metric_from_3form(phi_eval(probe));
    } catch (const IndefiniteForm&) {
      throw IndefiniteTriple(
          "product_t3: triple is not hypersymplectic for the product orientation");
    }
  }

  // exact dual: mu - omega_1 theta^23 + omega_2 theta^13 - omega_3 theta^12
  // for triples normalized to Q = I; otherwise through the generic star.
  m.starphi_at = [omega_at, phi_eval](const Vec& x) {
    const Vec xb = x.head(4);
    auto om = omega_at(xb);
    HSTriplePoint t{om, KForm::basis(4, {0, 1, 2, 3})};
    TripleMetric tm = triple_metric(t);
    Mat3 q = intersection_matrix(HSTriplePoint{om, tm.dvol});
    if ((q - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12) {
      KForm th[3] = {KForm::basis(7, {4}), KForm::basis(7, {5}), KForm::basis(7, {6})};
      KForm sp = detail::lift_base(tm.dvol);
      sp -= wedge(detail::lift_base(om[0]), wedge(th[1], th[2]));
      sp -= wedge(detail::lift_base(om[1]), wedge(th[2], th[0]));
      sp -= wedge(detail::lift_base(om[2]), wedge(th[0], th[1]));
      return sp;
    }
    return metric_from_3form(phi_eval(x)).starphi;
  };
  for (int i = 0; i < 3; ++i) m.generators[i] = AffineField::constant(Vec::Unit(7, 4 + i));
  m.expected_type = 2;
  m.samples = [base](int n, std::uint64_t seed) {
    std::vector<std::pair<double, double>> r;
    for (const auto& ax : base.axes) r.push_back({ax.lo, ax.hi});
    for (int i = 0; i < 3; ++i) r.push_back({0.0, 2.0 * M_PI});
    return detail::box_samples(r, n, seed);
  };
  ModelInstance::InvariantRep rep;
  rep.base = base;
  rep.metric = [phi_eval](const Vec& xb) {
    Vec x7 = Vec::Zero(7);
    x7.head(4) = xb;
    return metric_from_3form(phi_eval(x7)).g.g;
  };
  m.invariant = rep;
  return m;
}

inline ModelInstance product_t3_standard(const Domain& base) {
  HSTriplePoint s = standard_triple();
  return product_t3(base, [s](const Vec&) { return s.omega; }, "product_t3_standard");
}

// --- closed Type-1 family over T^4 ---------------------------------------

// phi = -(1/b^2) alhat_123 + (1/b^2) A^i_j beta alhat_i theta^j
//       + 1/2 eps^i_jk alhat_i theta^jk - a/(2 b^2) eps^ij_k alhat_ij theta^k
//       + a theta^123,
// with alhat_i, beta a closed base coframe and det A = 1.
inline ModelInstance type1_family(double a, const Domain& base,
                                  const std::function<Mat3(const Vec&)>& A_at,
                                  const std::function<Mat(const Vec&)>& coframe_at,
                                  const std::string& name = "type1_family") {
  if (base.dim() != 4) throw DimensionMismatch("type1_family: base must be 4-dimensional");
  if (!(std::abs(a) < 1.0)) throw AssociativeLimit("type1_family: need |a| < 1");
  const double b2 = 1.0 - a * a;

  // spot-check det A = 1
  {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 32; ++t) {
      Vec x(4);
      for (int c = 0; c < 4; ++c)
        x[c] = base.axes[c].lo + base.axes[c].length() * double(rng() % 997) / 997.0;
      if (std::abs(A_at(x).determinant() - 1.0) > 1e-10)
        throw IndefiniteTriple("type1_family: det A must be identically 1");
    }
  }

  ModelInstance m;
  m.name = name;
  m.a_const = a;
  m.A_field = A_at;
  m.expected_type = 1;

  auto phi_eval = [a, b2, A_at, coframe_at](const Vec& x) {
    const Vec xb = x.head(4);
    const Mat3 A = A_at(xb);
    const Mat cf = coframe_at(xb);  // 4x4: rows alhat_1..3, beta
    KForm al[3], be(7, 1), th[3];
    for (int i = 0; i < 3; ++i) {
      al[i] = KForm(7, 1);
      for (int c = 0; c < 4; ++c) al[i][c] = cf(i, c);
      th[i] = KForm::basis(7, {4 + i});
    }
    for (int c = 0; c < 4; ++c) be[c] = cf(3, c);

    KForm f = (-1.0 / b2) * wedge(wedge(al[0], al[1]), al[2]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f += (A(i, j) / b2) * wedge(wedge(be, al[i]), th[j]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const int s = eps3(i, j, k);
          if (!s) continue;
          f += 0.5 * s * wedge(wedge(al[i], th[j]), th[k]);
          f += (-a * s / (2.0 * b2)) * wedge(wedge(al[i], al[j]), th[k]);
        }
    f += a * wedge(wedge(th[0], th[1]), th[2]);
    return f;
  };
  m.phi_at = phi_eval;

  auto metric_eval = [a, b2, A_at, coframe_at](const Vec& xb4) {
    const Vec xb = xb4.head(4);
    const Mat3 A = A_at(xb);
    const Mat cf = coframe_at(xb);
    Mat C = Mat::Zero(7, 7);  // rows: alhat_1..3, beta, theta^1..3
    C.block(0, 0, 4, 4) = cf;
    C.block(4, 4, 3, 3) = Mat::Identity(3, 3);
    Mat D = Mat::Zero(7, 7);
    D.block(0, 0, 3, 3) = A / b2;
    D(3, 3) = 1.0 / b2;
    D.block(4, 4, 3, 3) = A;
    return Mat(C.transpose() * D * C);
  };

  // dual 4-form via the closed-form star of the reduced metric
  m.starphi_at = [a, b2, A_at, coframe_at](const Vec& x) {
    const Vec xb = x.head(4);
    const Mat3 A = A_at(xb);
    const Mat3 B2 = A.inverse();  // B^2 = A^{-1}, det A = 1
    const Mat cf = coframe_at(xb);
    KForm al[3], be(7, 1), th[3];
    for (int i = 0; i < 3; ++i) {
      al[i] = KForm(7, 1);
      for (int c = 0; c < 4; ++c) al[i][c] = cf(i, c);
      th[i] = KForm::basis(7, {4 + i});
    }
    for (int c = 0; c < 4; ++c) be[c] = cf(3, c);

    KForm sp = -1.0 * wedge(wedge(be, th[0]), wedge(th[1], th[2]));
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            for (int s = 0; s < 3; ++s)
              for (int t = 0; t < 3; ++t) {
                const int e = eps3(p, k, l) * eps3(q, s, t);
                if (e)
                  sp += (-B2(p, q) * e / (4.0 * b2)) * wedge(wedge(al[k], al[l]), wedge(th[s], th[t]));
              }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const int s = eps3(i, j, k);
          if (!s) continue;
          sp += (s / (2.0 * b2)) * wedge(wedge(be, th[i]), wedge(al[j], al[k]));
          sp += (a * s / (2.0 * b2)) * wedge(wedge(be, al[i]), wedge(th[j], th[k]));
        }
    sp += (a / (b2 * b2)) * wedge(wedge(al[0], al[1]), wedge(al[2], be));
    return sp;
  };

  for (int i = 0; i < 3; ++i) m.generators[i] = AffineField::constant(Vec::Unit(7, 4 + i));
  m.samples = [base](int n, std::uint64_t seed) {
    std::vector<std::pair<double, double>> r;
    for (const auto& ax : base.axes) r.push_back({ax.lo, ax.hi});
    for (int i = 0; i < 3; ++i) r.push_back({0.0, 2.0 * M_PI});
    return detail::box_samples(r, n, seed);
  };
  ModelInstance::InvariantRep rep;
  rep.base = base;
  rep.metric = metric_eval;
  m.invariant = rep;
  return m;
}

// Diagonal variant over T^4: A = diag(f1^-2 f2 f3, f1 f2^-2 f3, f1 f2 f3^-2),
// alhat_i = dx^i, beta = (f1 f2 f3)^-1 dy, with f_i = f_i(x^i, y) positive.
inline ModelInstance t4_diagonal(double a,
                                 const std::array<std::function<double(double, double)>, 3>& f,
                                 int grid = 48) {
  Domain base = torus(4, grid);
  auto A_at = [f](const Vec& x) {
    const double f1 = f[0](x[0], x[3]), f2 = f[1](x[1], x[3]), f3 = f[2](x[2], x[3]);
    Mat3 A = Mat3::Zero();
    A(0, 0) = f2 * f3 / (f1 * f1);
    A(1, 1) = f1 * f3 / (f2 * f2);
    A(2, 2) = f1 * f2 / (f3 * f3);
    return A;
  };
  auto coframe_at = [f](const Vec& x) {
    const double f1 = f[0](x[0], x[3]), f2 = f[1](x[1], x[3]), f3 = f[2](x[2], x[3]);
    Mat cf = Mat::Identity(4, 4);
    cf(3, 3) = 1.0 / (f1 * f2 * f3);
    return cf;
  };
  return type1_family(a, base, A_at, coframe_at, "t4_diagonal");
}

// --- isotropic flat models ------------------------------------------------

// S^1 x C^3, coordinates (x, u1, v1, u2, v2, u3, v3), z_k = u_k + i v_k.
// Action: x-translation and rotations with weights (1,0,-1), (0,1,-1).
inline ModelInstance flat_s1_c3() {
  ModelInstance m;
  m.name = "flat_s1_c3";
  KForm phi(7, 3);
  for (int k = 0; k < 3; ++k)
    phi += wedge(KForm::basis(7, {0}), KForm::basis(7, {1 + 2 * k, 2 + 2 * k}));
  phi += KForm::basis(7, {1, 3, 5});
  phi += KForm::basis(7, {1, 4, 6}, -1.0);
  phi += KForm::basis(7, {2, 3, 6}, -1.0);
  phi += KForm::basis(7, {2, 4, 5}, -1.0);
  const G2Point gp = metric_from_3form(phi);
  m.phi_at = [phi](const Vec&) { return phi; };
  m.starphi_at = [sp = gp.starphi](const Vec&) { return sp; };

  auto rot = [](int uc, int vc, double sign) {
    Mat M = Mat::Zero(7, 7);
    M(uc, vc) = -sign;
    M(vc, uc) = sign;
    return M;
  };
  m.generators[0] = AffineField::constant(Vec::Unit(7, 0));
  m.generators[1] = AffineField::linear(rot(1, 2, 1.0) + rot(5, 6, -1.0));
  m.generators[2] = AffineField::linear(rot(3, 4, 1.0) + rot(5, 6, -1.0));
  m.expected_type = 3;
  m.samples = [](int n, std::uint64_t seed) {
    std::vector<std::pair<double, double>> r(7, {0.35, 1.25});
    r[0] = {0.0, 2.0 * M_PI};
    return detail::box_samples(r, n, seed);
  };
  // S^1 stabilizers on the three "one z alive" strata, T^2 at z = 0
  for (int alive = 0; alive < 3; ++alive) {
    ModelInstance::Stratum st;
    st.stabilizer_dim = 1;
    st.samples = [alive](int n, std::uint64_t seed) {
      auto pts = detail::box_samples({{0.0, 2.0 * M_PI}, {0.25, 1.2}, {0.25, 1.2}}, n, seed);
      std::vector<Vec> out;
      for (const Vec& q : pts) {
        Vec x = Vec::Zero(7);
        x[0] = q[0];
        x[1 + 2 * alive] = q[1];
        x[2 + 2 * alive] = q[2];
        out.push_back(x);
      }
      return out;
    };
    m.strata.push_back(st);
  }
  {
    ModelInstance::Stratum st;
    st.stabilizer_dim = 2;
    st.samples = [](int n, std::uint64_t seed) {
      auto pts = detail::box_samples({{0.0, 2.0 * M_PI}}, n, seed);
      std::vector<Vec> out;
      for (const Vec& q : pts) {
        Vec x = Vec::Zero(7);
        x[0] = q[0];
        out.push_back(x);
      }
      return out;
    };
    m.strata.push_back(st);
  }
  return m;
}

// T^2 x R x C^2, coordinates (x, y, u, z1, z2, w1, w2). Action: (x, y)
// translations and the rotation (z, w) -> (e^{it} z, e^{-it} w).
inline ModelInstance flat_t2_r_c2() {
  ModelInstance m;
  m.name = "flat_t2_r_c2";
  KForm phi(7, 3);
  phi += wedge(KForm::basis(7, {2}), KForm::basis(7, {0, 1}));
  phi -= wedge(KForm::basis(7, {2}), KForm::basis(7, {3, 4}) + KForm::basis(7, {5, 6}));
  phi -= wedge(KForm::basis(7, {0}), KForm::basis(7, {3, 5}) - KForm::basis(7, {4, 6}));
  phi -= wedge(KForm::basis(7, {1}), KForm::basis(7, {3, 6}) + KForm::basis(7, {4, 5}));
  const G2Point gp = metric_from_3form(phi);
  m.phi_at = [phi](const Vec&) { return phi; };
  m.starphi_at = [sp = gp.starphi](const Vec&) { return sp; };

  Mat rot = Mat::Zero(7, 7);
  rot(3, 4) = -1.0;
  rot(4, 3) = 1.0;   // z rotation
  rot(5, 6) = 1.0;
  rot(6, 5) = -1.0;  // w anti-rotation
  m.generators[0] = AffineField::constant(Vec::Unit(7, 0));
  m.generators[1] = AffineField::constant(Vec::Unit(7, 1));
  m.generators[2] = AffineField::linear(rot);
  m.expected_type = 3;
  m.samples = [](int n, std::uint64_t seed) {
    std::vector<std::pair<double, double>> r(7, {0.35, 1.25});
    r[0] = {0.0, 2.0 * M_PI};
    r[1] = {0.0, 2.0 * M_PI};
    r[2] = {-1.0, 1.0};
    return detail::box_samples(r, n, seed);
  };

  {
    ModelInstance::Stratum st;
    st.stabilizer_dim = 1;
    st.samples = [](int n, std::uint64_t seed) {
      auto pts = detail::box_samples(
          {{0.0, 2.0 * M_PI}, {0.0, 2.0 * M_PI}, {-1.2, 1.2}}, n, seed);
      std::vector<Vec> out;
      for (const Vec& q : pts) {
        Vec x = Vec::Zero(7);
        x[0] = q[0];
        x[1] = q[1];
        x[2] = q[2];
        out.push_back(x);
      }
      return out;
    };
    m.strata.push_back(st);
  }

  // leaf through p0: u fixed and z w = const. Log-polar parameters
  // (x, y, sigma, s) with z = exp(s + i sigma) keep the angular dependence
  // spectral and the radial one mild for the finite differences.
  m.leaf_chart_at = [](const Vec& p0) {
    const double u0 = p0[2];
    const std::complex<double> z0(p0[3], p0[4]), w0(p0[5], p0[6]);
    if (std::abs(z0) < 1e-8 || std::abs(w0) < 1e-8)
      throw NonFlatLeaf("flat_t2_r_c2: leaf chart needs z, w away from the singular stratum");
    const std::complex<double> c = z0 * w0;
    const double s0 = std::log(std::abs(z0));
    LeafChart chart;
    chart.params = Domain(std::vector<Axis>{periodic_axis(8), periodic_axis(8),
                                            periodic_axis(32),
                                            box_axis(48, s0 - 0.15, s0 + 0.15)});
    chart.embed = [u0, c](const Vec& q) {
      const std::complex<double> z = std::exp(std::complex<double>(q[3], q[2]));
      const std::complex<double> w = c / z;
      Vec x(7);
      x << q[0], q[1], u0, z.real(), z.imag(), w.real(), w.imag();
      return x;
    };
    chart.tangent = [c](const Vec& q) {
      const std::complex<double> z = std::exp(std::complex<double>(q[3], q[2]));
      const std::complex<double> w = c / z;
      const std::complex<double> iz = std::complex<double>(0, 1) * z;
      const std::complex<double> iw = std::complex<double>(0, 1) * w;
      Mat t = Mat::Zero(7, 4);
      t(0, 0) = 1.0;
      t(1, 1) = 1.0;
      // d/d sigma: dz = i z, dw = -i w
      t(3, 2) = iz.real();
      t(4, 2) = iz.imag();
      t(5, 2) = -iw.real();
      t(6, 2) = -iw.imag();
      // d/d s: dz = z, dw = -w
      t(3, 3) = z.real();
      t(4, 3) = z.imag();
      t(5, 3) = -w.real();
      t(6, 3) = -w.imag();
      return t;
    };
    return chart;
  };
  return m;
}

// --- Z_2 quotient with an exceptional orbit -------------------------------

// R^4 x ([0, 2 pi] x T^2) / ~ with (x, (0, t2, t3)) ~ (-x, (2 pi, t2, t3)),
// phi = theta^123 - sum theta^i ^ omega_i for the standard triple. In the
// fundamental-domain coordinates (x^1..x^4, t^1..t^3) the form is constant
// and the identification map preserves it.
inline ModelInstance z2_quotient_example() {
  Domain base(std::vector<Axis>{box_axis(12, -1.5, 1.5), box_axis(12, -1.5, 1.5),
                                box_axis(12, -1.5, 1.5), box_axis(12, -1.5, 1.5)});
  ModelInstance m = product_t3_standard(base);
  m.name = "z2_quotient";
  m.finite_stabilizer = [](const Vec& x) {
    return (x.head(4).cwiseAbs().maxCoeff() < 1e-9) ? 2 : 1;
  };
  m.samples = [](int n, std::uint64_t seed) {
    std::vector<std::pair<double, double>> r(7, {0.2, 1.3});
    for (int i = 4; i < 7; ++i) r[i] = {0.0, 2.0 * M_PI};
    return detail::box_samples(r, n, seed);
  };
  return m;
}

// Differential of the gluing map (x, t1, ...) -> (-x, t1 + 2 pi, ...).
inline Mat z2_gluing_differential() {
  Mat d = Mat::Identity(7, 7);
  d.block(0, 0, 4, 4) = -Mat::Identity(4, 4);
  return d;
}

}  // namespace g2kit
