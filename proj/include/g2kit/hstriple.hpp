#pragma once

// Hypersymplectic triples at a point of a 4-dimensional space: intersection
// matrix, definiteness, and the induced metric.

#include "g2kit/kform.hpp"

namespace g2kit {

// Triple of 2-forms with a reference volume form.
struct HSTriplePoint {
  std::array<KForm, 3> omega;
  KForm mu;  // nonzero top form
};

// The standard triple: omega_1 = e^{12}+e^{34}, omega_2 = e^{13}+e^{42},
// omega_3 = e^{14}+e^{23}, with mu = e^{1234}.
inline HSTriplePoint standard_triple() {
  HSTriplePoint t;
  t.omega[0] = KForm::basis(4, {0, 1}) + KForm::basis(4, {2, 3});
  t.omega[1] = KForm::basis(4, {0, 2}) + KForm::basis(4, {3, 1});
  t.omega[2] = KForm::basis(4, {0, 3}) + KForm::basis(4, {1, 2});
  t.mu = KForm::basis(4, {0, 1, 2, 3});
  return t;
}

// Q_ij = (omega_i ^ omega_j) / (2 mu)
inline Mat3 intersection_matrix(const HSTriplePoint& t) {
  if (t.mu[0] == 0.0) throw ZeroVolume("intersection_matrix: zero reference volume");
  Mat3 q;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const double v = wedge(t.omega[i], t.omega[j])[0] / (2.0 * t.mu[0]);
      q(i, j) = q(j, i) = v;
    }
  return q;
}

struct TripleMetric {
  Metric g;
  KForm dvol;  // volume form of g, oriented with the triple
  int sign;    // +1 if Q was positive definite, -1 if negative
};

// g(u,v) dvol_g = (1/6) eps^{ijk} (u . omega_i) ^ (v . omega_j) ^ omega_k,
// normalized with the det^{-1/6} scaling. A triple whose intersection matrix
// is everywhere negative is accepted with reversed orientation.
inline TripleMetric triple_metric(const HSTriplePoint& t) {
  Mat h = Mat::Zero(4, 4);
  std::array<std::array<KForm, 3>, 4> io;
  for (int u = 0; u < 4; ++u)
    for (int i = 0; i < 3; ++i) io[u][i] = interior(Vec::Unit(4, u), t.omega[i]);
  for (int u = 0; u < 4; ++u)
    for (int v = u; v < 4; ++v) {
      double acc = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          const int k = 3 - i - j;
          acc += eps3(i, j, k) * wedge(wedge(io[u][i], io[v][j]), t.omega[k])[0];
        }
      h(u, v) = h(v, u) = acc / 6.0;
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
    throw IndefiniteTriple("triple_metric: intersection form is indefinite");
  const double det = h.determinant();
  Metric g(4, std::pow(det, -1.0 / 6.0) * h);
  KForm dvol = KForm::basis(4, {0, 1, 2, 3}, sign * std::pow(det, 1.0 / 6.0));
  return TripleMetric{g, dvol, sign};
}

// Intersection matrix normalized against the metric volume; always has unit
// determinant and is the matrix whose constancy characterizes hyperkahler.
inline Mat3 normalized_intersection_matrix(const HSTriplePoint& t) {
  TripleMetric tm = triple_metric(t);
  HSTriplePoint s{t.omega, tm.dvol};
  return intersection_matrix(s);
}

}  // namespace g2kit
