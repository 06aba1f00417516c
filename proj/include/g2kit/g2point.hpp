#pragma once

// Pointwise G2 toolkit: positivity and the induced metric, cross products,
// adapted frames, and the point-level torus reduction / reconstruction
// identities.

#include <optional>

#include "g2kit/kform.hpp"

namespace g2kit {

inline constexpr double kNearAssociativeTol = 1e-8;

// A 3-form certified positive, with its induced metric, volume and dual.
// `orientation_sign` is +1 when the form is positive for the standard
// orientation e^{1..7} and -1 when it is positive for the reversed one.
struct G2Point {
  KForm phi;
  Metric g;
  KForm vol;       // induced volume form (top degree)
  KForm starphi;
  int orientation_sign;
};

// g(u,v) vol = (1/6) (u . phi) ^ (v . phi) ^ phi, normalized with the
// det^{-1/9} scaling so metric and volume are mutually consistent.
inline G2Point metric_from_3form(const KForm& phi) {
  if (phi.dim() != 7 || phi.degree() != 3)
    throw DimensionMismatch("metric_from_3form: need a 3-form in dimension 7");
  Mat h(7, 7);
  std::array<KForm, 7> iphi;
  for (int u = 0; u < 7; ++u) iphi[u] = interior(Vec::Unit(7, u), phi);
  for (int u = 0; u < 7; ++u)
    for (int v = u; v < 7; ++v) {
      const double c = wedge(wedge(iphi[u], iphi[v]), phi)[0] / 6.0;
      h(u, v) = h(v, u) = c;
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  int sign;
  if (lo > 0)
    sign = 1;
  else if (hi < 0) {
    sign = -1;
    h = -h;
  } else
    throw IndefiniteForm("metric_from_3form: form is not definite");
  const double det = h.determinant();
  Metric g(7, std::pow(det, -1.0 / 9.0) * h);
  KForm vol = KForm::basis(7, {0, 1, 2, 3, 4, 5, 6}, sign * std::pow(det, 1.0 / 9.0));
  KForm sp = hodge(g, vol, phi);
  return G2Point{phi, g, vol, sp, sign};
}

// u x v = (phi(u, v, .))^sharp
inline Vec cross(const G2Point& gp, const Vec& u, const Vec& v) {
  return gp.g.sharp(interior(v, interior(u, gp.phi)));
}

// [u, v, w] = ((*phi)(u, v, w, .))^sharp
inline Vec triple_cross(const G2Point& gp, const Vec& u, const Vec& v, const Vec& w) {
  return gp.g.sharp(interior(w, interior(v, interior(u, gp.starphi))));
}

// Adapted frame built from three orthonormal vectors with |phi(f1,f2,f3)| < 1:
// e3~ is the normalized residue of f3 against f1 x f2, and the frame is
//   (-e2~ x e3~, -e3~ x e1~, -e1~ x e2~, -[e1~,e2~,e3~], e1~, e2~, e3~).
// Pulled back to it, phi has the model-form component pattern.
inline std::array<Vec, 7> adapted_frame(const G2Point& gp, const Vec& f1, const Vec& f2,
                                        const Vec& f3) {
  const double a = evaluate(gp.phi, {f1, f2, f3});
  if (std::abs(std::abs(a) - 1.0) < kNearAssociativeTol)
    throw NearAssociative("adapted_frame: |phi(f1,f2,f3)| too close to 1");
  const Vec c = cross(gp, f1, f2);
  Vec r = f3 - (f3.dot(gp.g.g * c)) * c;
  const double b = std::sqrt(r.dot(gp.g.g * r));
  r /= b;
  const Vec e1 = f1, e2 = f2, e3 = r;
  return {-cross(gp, e2, e3), -cross(gp, e3, e1), -cross(gp, e1, e2),
          -triple_cross(gp, e1, e2, e3), e1, e2, e3};
}

// Point-level reduction data for three independent generators.
//   A_ij = g(U_i, U_j),  B = A^{-1/2},  a = phi(U_1,U_2,U_3) det B,
//   alpha_i = 1/2 eps_i^{jk} phi(U_j, U_k, .),  beta = (*phi)(U_1,U_2,U_3, .),
//   theta^i = A^{ij} (U_j)^flat  (dual to U on span{U}, zero on the
//   g-orthogonal complement).
// omega_i = 1/2 eps_ijk e^j ^ e^k - e_i . phi (with e_i = B_i^j U_j) carries
// the associative-case quotient data.
struct PointReduction {
  Mat3 A;
  Mat3 B;
  double a = 0.0;
  double b = 0.0;  // sqrt(1 - a^2)
  std::array<KForm, 3> alpha;
  KForm beta;
  std::array<KForm, 3> theta;
  std::array<KForm, 3> omega;
  double phi_U = 0.0;  // phi(U_1, U_2, U_3)
};

inline PointReduction point_reduce(const G2Point& gp, const Vec& U1, const Vec& U2,
                                   const Vec& U3) {
  const std::array<Vec, 3> U{U1, U2, U3};
  Mat3 A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = U[i].dot(gp.g.g * U[j]);
  SPD3 Aspd(A, "point_reduce");
  const Mat3 B = spd_invsqrt(Aspd).m;

  PointReduction pr;
  pr.A = Aspd.m;
  pr.B = B;
  pr.phi_U = evaluate(gp.phi, {U1, U2, U3});
  pr.a = pr.phi_U * B.determinant();
  pr.b = std::sqrt(std::max(0.0, 1.0 - pr.a * pr.a));

  for (int i = 0; i < 3; ++i) {
    KForm f(7, 1);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int s = eps3(i, j, k);
        if (s) f += 0.5 * s * interior(U[k], interior(U[j], gp.phi));
      }
    pr.alpha[i] = f;
  }
  pr.beta = interior(U3, interior(U2, interior(U1, gp.starphi)));

  const Mat3 Ainv = pr.A.inverse();
  for (int i = 0; i < 3; ++i) {
    KForm t(7, 1);
    for (int j = 0; j < 3; ++j) t += Ainv(i, j) * gp.g.flat(U[j]);
    pr.theta[i] = t;
  }

  // associative-case two-forms
  std::array<Vec, 3> e;
  std::array<KForm, 3> eup;
  const Mat3 Binv = B.inverse();
  for (int i = 0; i < 3; ++i) {
    e[i] = B(i, 0) * U[0] + B(i, 1) * U[1] + B(i, 2) * U[2];
    KForm f(7, 1);
    for (int j = 0; j < 3; ++j) f += Binv(i, j) * pr.theta[j];
    eup[i] = f;
  }
  for (int i = 0; i < 3; ++i) {
    KForm w(7, 2);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int s = eps3(i, j, k);
        if (s) w += 0.5 * s * wedge(eup[j], eup[k]);
      }
    w -= interior(e[i], gp.phi);
    pr.omega[i] = w;
  }
  return pr;
}

struct Reconstruction {
  KForm phi;
  KForm starphi;
  Mat g;  // 7x7
};

// Assembles phi, *phi and the metric from (a, B, alpha, beta, theta) in the
// general (non-associative) case, valid for |a| < 1 and arbitrary det B.
inline Reconstruction reconstruct(const PointReduction& pr) {
  if (1.0 - std::abs(pr.a) < kNearAssociativeTol)
    throw AssociativeLimit("reconstruct: |a| = 1, use reconstruct_associative");
  const double b2 = pr.b * pr.b;
  const Mat3 B2 = pr.B * pr.B;
  const Mat3 adjB2 = adjugate3(B2);
  const double detB = pr.B.determinant();
  const auto& al = pr.alpha;
  const auto& th = pr.theta;
  const auto& be = pr.beta;

  KForm phi = -(detB * detB / b2) * wedge(wedge(al[0], al[1]), al[2]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (adjB2(i, j) != 0.0)
        phi += (adjB2(i, j) / b2) * wedge(wedge(be, al[i]), th[j]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int s = eps3(i, j, k);
        if (s) phi += (0.5 * s / b2) * wedge(wedge(al[i], th[j]), th[k]);
      }
  phi += (-2.0 * pr.a / (detB * b2)) * wedge(wedge(th[0], th[1]), th[2]);

  const double b4 = b2 * b2;
  KForm sphi = (-(b2 - pr.a * pr.a) / b4) * wedge(wedge(be, th[0]), wedge(th[1], th[2]));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int s = eps3(i, j, k);
        if (!s) continue;
        sphi += (s * detB * detB / (2.0 * b4)) * wedge(wedge(al[i], al[j]), wedge(be, th[k]));
        sphi += (s * pr.a * detB / (2.0 * b4)) * wedge(wedge(al[i], be), wedge(th[j], th[k]));
      }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int sijk = eps3(i, j, k);
        if (!sijk) continue;
        for (int l = 0; l < 3; ++l)
          for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) {
              const int s = sijk * eps3(l, m, n);
              if (s)
                sphi += (-s * B2(n, k) / (4.0 * b2)) * wedge(wedge(al[i], al[j]), wedge(th[l], th[m]));
            }
      }
  sphi += (pr.a * detB * detB * detB / b4) * wedge(wedge(al[0], al[1]), wedge(al[2], be));

  const Mat3 B2i = B2.inverse();
  Mat g = Mat::Zero(7, 7);
  auto add_sym = [&g](const KForm& u, const KForm& v, double c) {
    for (int p = 0; p < 7; ++p)
      for (int q = 0; q < 7; ++q) g(p, q) += 0.5 * c * (u[p] * v[q] + v[p] * u[q]);
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      add_sym(th[i], th[j], B2i(i, j) / b2);
      add_sym(al[i], al[j], detB * detB * B2i(i, j) / b2);
      add_sym(th[i], al[j], -2.0 * pr.a * detB * B2i(i, j) / b2);
    }
  add_sym(be, be, detB * detB / b2);

  return Reconstruction{phi, sphi, g};
}

// Associative-case assembly: phi = det B^{-1} theta^{123} - (B^{-1})^i_j theta^j ^ omega_i.
inline KForm reconstruct_associative(const PointReduction& pr) {
  const Mat3 Binv = pr.B.inverse();
  KForm phi = (1.0 / pr.B.determinant()) * wedge(wedge(pr.theta[0], pr.theta[1]), pr.theta[2]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      phi += -Binv(j, i) * wedge(pr.theta[j], pr.omega[i]);
  return phi;
}

}  // namespace g2kit
