#pragma once

// Hypersymplectic triples as fields on a 4-dimensional domain and the
// closed / hypersymplectic / hyperkahler / torsion-free classification.

#include <map>

#include "g2kit/fieldops.hpp"
#include "g2kit/hstriple.hpp"

namespace g2kit {

struct HSTripleField {
  Domain dom;
  std::array<FormField, 3> omega;

  HSTriplePoint at(std::size_t p) const {
    HSTriplePoint t;
    for (int i = 0; i < 3; ++i) t.omega[i] = omega[i].at(p);
    t.mu = KForm::basis(4, {0, 1, 2, 3});
    return t;
  }
};

inline HSTripleField sample_triple(const Domain& dom,
                                   const std::function<std::array<KForm, 3>(const Vec&)>& at) {
  HSTripleField t{dom, {FormField(dom, 2), FormField(dom, 2), FormField(dom, 2)}};
  const std::size_t np = dom.npoints();
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) {
      auto om = at(dom.point(p));
      for (int i = 0; i < 3; ++i) t.omega[i].set(p, om[i]);
    }
  });
  return t;
}

struct TripleFlags {
  bool closed = false;
  bool hypersymplectic = false;
  bool hyperkahler = false;
  bool torsion_free = false;
  int sign = 0;  // +1 positive definite, -1 negative definite
  std::map<std::string, double> residuals;
};

inline constexpr double kTripleResidualTol = 1e-8;

// closed:         max_i ||d omega_i||_inf < tol
// hypersymplectic: closed and Q definite at every sample
// hyperkahler:    hypersymplectic and sup-variation of Q normalized by the
//                 metric volume < tol
// torsion_free:   max_i ||d(Qhat^{-1}_{ij} omega_j)||_inf < tol
inline TripleFlags classify_triple(const HSTripleField& t, double tol = kTripleResidualTol) {
  TripleFlags out;
  DomainDerivs ops(t.dom);
  const std::size_t np = t.dom.npoints();

  double dmax = 0.0;
  for (int i = 0; i < 3; ++i) dmax = std::max(dmax, ext_d(t.omega[i], ops).sup_norm());
  out.residuals["d_omega"] = dmax;
  out.closed = dmax < tol;

  // pointwise definiteness and the normalized intersection matrix
  std::vector<double> qhat(9 * np);
  double min_eig = std::numeric_limits<double>::infinity();
  int sign = 0;
  std::size_t first_bad = np;
  std::mutex mu;
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    double local_min = std::numeric_limits<double>::infinity();
    int local_sign = 0;
    std::size_t local_bad = np;
    for (std::size_t p = b; p < e; ++p) {
      HSTriplePoint tp = t.at(p);
      Mat3 q = intersection_matrix(tp);
      Eigen::SelfAdjointEigenSolver<Mat3> es(q, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
      int s = 0;
      if (lo > 0)
        s = 1;
      else if (hi < 0)
        s = -1;
      if (s == 0 || (local_sign != 0 && s != local_sign)) {
        if (local_bad == np) local_bad = p;
        continue;
      }
      local_sign = s;
      local_min = std::min(local_min, std::min(std::abs(lo), std::abs(hi)));
      // normalize against the metric volume
      TripleMetric tm = triple_metric(tp);
      tp.mu = tm.dvol;
      Mat3 qh = intersection_matrix(tp);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) qhat[(3 * i + j) * np + p] = qh(i, j);
    }
    std::lock_guard<std::mutex> lock(mu);
    min_eig = std::min(min_eig, local_min);
    if (local_sign) sign = local_sign;
    first_bad = std::min(first_bad, local_bad);
  });
  if (first_bad != np)
    throw IndefiniteTriple("classify_triple: intersection form indefinite at sample " +
                           std::to_string(first_bad));
  out.sign = sign;
  out.residuals["q_min_eigenvalue"] = min_eig;
  out.hypersymplectic = out.closed;

  double qvar = 0.0;
  for (int c = 0; c < 9; ++c) {
    double lo = qhat[std::size_t(c) * np], hi = lo;
    for (std::size_t p = 0; p < np; ++p) {
      const double v = qhat[std::size_t(c) * np + p];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    qvar = std::max(qvar, hi - lo);
  }
  out.residuals["qhat_variation"] = qvar;
  out.hyperkahler = out.hypersymplectic && qvar < tol;

  // torsion: d(Qhat^{-1}_{ij} omega_j)
  double tors = 0.0;
  for (int i = 0; i < 3; ++i) {
    FormField sigma(t.dom, 2);
    parallel_for(np, [&](std::size_t b, std::size_t e) {
      for (std::size_t p = b; p < e; ++p) {
        Mat3 qh;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) qh(r, c) = qhat[(3 * r + c) * np + p];
        const Mat3 qinv = qh.inverse();
        for (int c = 0; c < sigma.ncomps(); ++c) {
          double acc = 0.0;
          for (int j = 0; j < 3; ++j) acc += qinv(i, j) * t.omega[j].comp(c)[p];
          sigma.comp(c)[p] = acc;
        }
      }
    });
    tors = std::max(tors, ext_d(sigma, ops).sup_norm());
  }
  out.residuals["torsion"] = tors;
  out.torsion_free = out.hypersymplectic && tors < tol;
  return out;
}

}  // namespace g2kit
