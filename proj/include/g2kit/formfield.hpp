#pragma once

// Differential-form fields sampled over a flat product domain. Values are
// stored component-major: component c of point p lives at c*npoints + p,
// points in row-major grid order.

#include <functional>

#include "g2kit/domain.hpp"
#include "g2kit/kform.hpp"
#include "g2kit/parallel.hpp"

namespace g2kit {

struct FormField {
  Domain dom;
  int degree = 0;
  std::vector<double> values;

  FormField() = default;
  FormField(Domain d, int k) : dom(std::move(d)), degree(k) {
    if (k < 0 || k > dom.dim()) throw DimensionMismatch("FormField: bad degree");
    values.assign(std::size_t(ncomps()) * dom.npoints(), 0.0);
  }

  int ncomps() const { return binomial(dom.dim(), degree); }
  std::size_t npoints() const { return dom.npoints(); }
  double* comp(int c) { return values.data() + std::size_t(c) * npoints(); }
  const double* comp(int c) const { return values.data() + std::size_t(c) * npoints(); }
  const IndexTable& table() const { return index_table(dom.dim(), degree); }

  KForm at(std::size_t p) const {
    KForm f(dom.dim(), degree);
    for (int c = 0; c < ncomps(); ++c) f[c] = comp(c)[p];
    return f;
  }
  void set(std::size_t p, const KForm& f) {
    for (int c = 0; c < ncomps(); ++c) comp(c)[p] = f[c];
  }

  double sup_norm() const {
    const std::size_t n = values.size();
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(values[i]));
    return m;
  }

  FormField& operator+=(const FormField& o) {
    if (degree != o.degree || values.size() != o.values.size())
      throw DimensionMismatch("FormField: mismatched operands");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  FormField& operator-=(const FormField& o) {
    if (degree != o.degree || values.size() != o.values.size())
      throw DimensionMismatch("FormField: mismatched operands");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  FormField& operator*=(double s) {
    for (auto& v : values) v *= s;
    return *this;
  }
  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(double s, FormField a) { return a *= s; }
};

// Sample a pointwise evaluator over the grid.
inline FormField sample(const Domain& dom, int degree,
                        const std::function<KForm(const Vec&)>& f) {
  FormField out(dom, degree);
  const std::size_t np = dom.npoints();
  const int nc = out.ncomps();
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) {
      KForm v = f(dom.point(p));
      for (int c = 0; c < nc; ++c) out.comp(c)[p] = v[c];
    }
  });
  return out;
}

inline FormField sample_scalar(const Domain& dom, const std::function<double(const Vec&)>& f) {
  FormField out(dom, 0);
  const std::size_t np = dom.npoints();
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) out.comp(0)[p] = f(dom.point(p));
  });
  return out;
}

// Symmetric matrix field over a domain; the matrix size m may exceed the
// domain dimension, the extra coordinates being invariant directions.
struct MetricField {
  Domain dom;
  int m = 0;
  std::vector<double> values;  // comp-major over pairs (i <= j)

  MetricField() = default;
  MetricField(Domain d, int msize) : dom(std::move(d)), m(msize) {
    if (m < dom.dim()) throw DimensionMismatch("MetricField: matrix smaller than domain");
    values.assign(std::size_t(ncomps()) * dom.npoints(), 0.0);
  }
  int ncomps() const { return m * (m + 1) / 2; }
  static int pair_index(int i, int j, int m) {
    if (i > j) std::swap(i, j);
    return i * m - i * (i - 1) / 2 + (j - i);
  }
  double* comp(int i, int j) { return values.data() + std::size_t(pair_index(i, j, m)) * dom.npoints(); }
  const double* comp(int i, int j) const {
    return values.data() + std::size_t(pair_index(i, j, m)) * dom.npoints();
  }
  Mat at(std::size_t p) const {
    Mat g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) g(i, j) = g(j, i) = comp(i, j)[p];
    return g;
  }
  void set(std::size_t p, const Mat& g) {
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) comp(i, j)[p] = g(i, j);
  }
};

inline MetricField sample_metric(const Domain& dom, int m,
                                 const std::function<Mat(const Vec&)>& f) {
  MetricField out(dom, m);
  const std::size_t np = dom.npoints();
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) out.set(p, f(dom.point(p)));
  });
  return out;
}

}  // namespace g2kit
