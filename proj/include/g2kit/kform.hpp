#pragma once

// Alternating k-forms at a point in dimension n <= 7, with components over
// strictly increasing multi-indices in lexicographic order.

#include <array>
#include <cmath>
#include <cstdint>

#include "g2kit/linalg.hpp"
#include "g2kit/multiindex.hpp"

namespace g2kit {

class KForm {
 public:
  KForm() = default;
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim || degree < 0 || degree > dim)
      throw DimensionMismatch("KForm: bad (dim, degree)");
    comps_.fill(0.0);
  }

  // Basis form e^{I} for an index tuple that need not be sorted; the sign of
  // the sorting permutation is absorbed into the coefficient.
  template <typename It>
  static KForm basis(int dim, It first, It last, double coeff = 1.0) {
    KForm f(dim, static_cast<int>(last - first));
    std::array<int, kMaxDim> idx{};
    int k = 0;
    for (It it = first; it != last; ++it) idx[k++] = *it;
    int sign = 1;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b + 1 < k - a; ++b)
        if (idx[b] > idx[b + 1]) {
          std::swap(idx[b], idx[b + 1]);
          sign = -sign;
        }
    std::uint8_t m = 0;
    for (int a = 0; a < k; ++a) {
      if (idx[a] < 0 || idx[a] >= dim) throw DimensionMismatch("KForm::basis: index out of range");
      if (a > 0 && idx[a] == idx[a - 1]) return f;  // repeated index -> zero form
      m |= std::uint8_t(1u << idx[a]);
    }
    f[f.table().rank_of_mask[m]] = sign * coeff;
    return f;
  }
  static KForm basis(int dim, std::initializer_list<int> idx, double coeff = 1.0) {
    return basis(dim, idx.begin(), idx.end(), coeff);
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return binomial(dim_, degree_); }
  const IndexTable& table() const { return index_table(dim_, degree_); }

  double& operator[](int r) { return comps_[r]; }
  double operator[](int r) const { return comps_[r]; }

  double max_abs() const {
    double m = 0.0;
    for (int r = 0; r < size(); ++r) m = std::max(m, std::abs(comps_[r]));
    return m;
  }

  KForm& operator+=(const KForm& o) {
    check_same(o);
    for (int r = 0; r < size(); ++r) comps_[r] += o.comps_[r];
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_same(o);
    for (int r = 0; r < size(); ++r) comps_[r] -= o.comps_[r];
    return *this;
  }
  KForm& operator*=(double s) {
    for (int r = 0; r < size(); ++r) comps_[r] *= s;
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(double s, KForm a) { return a *= s; }
  friend KForm operator-(KForm a) { return a *= -1.0; }

 private:
  void check_same(const KForm& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_)
      throw DimensionMismatch("KForm: mismatched operands");
  }

  int dim_ = 0;
  int degree_ = 0;
  std::array<double, kMaxComps> comps_{};
};

inline KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge: dimension mismatch");
  if (a.degree() + b.degree() > a.dim()) throw DegreeOverflow("wedge: degree overflow");
  KForm r(a.dim(), a.degree() + b.degree());
  const auto& ta = a.table();
  const auto& tb = b.table();
  const auto& tr = r.table();
  for (int i = 0; i < a.size(); ++i) {
    const double ca = a[i];
    if (ca == 0.0) continue;
    const std::uint8_t mi = ta.masks[i];
    for (int j = 0; j < b.size(); ++j) {
      const double cb = b[j];
      if (cb == 0.0) continue;
      const std::uint8_t mj = tb.masks[j];
      const int s = merge_sign(mi, mj);
      if (s) r[tr.rank_of_mask[mi | mj]] += s * ca * cb;
    }
  }
  return r;
}

// iota_v a = a(v, . , ..., .)
inline KForm interior(const Vec& v, const KForm& a) {
  if (v.size() != a.dim()) throw DimensionMismatch("interior: dimension mismatch");
  if (a.degree() < 1) throw DegreeOverflow("interior: degree-0 input");
  KForm r(a.dim(), a.degree() - 1);
  const auto& ta = a.table();
  const auto& tr = r.table();
  for (int i = 0; i < a.size(); ++i) {
    const double c = a[i];
    if (c == 0.0) continue;
    std::uint8_t m = ta.masks[i];
    std::uint8_t rest = m;
    while (rest) {
      const int b = __builtin_ctz(rest);
      rest &= std::uint8_t(rest - 1);
      const double vb = v[b];
      if (vb != 0.0)
        r[tr.rank_of_mask[m & ~std::uint8_t(1u << b)]] += removal_sign(m, b) * vb * c;
    }
  }
  return r;
}

// Full evaluation a(v_1, ..., v_k).
inline double evaluate(const KForm& a, const std::vector<Vec>& vs) {
  KForm f = a;
  for (const auto& v : vs) f = interior(v, f);
  return f[0];
}

// Pullback along a linear map: P is n x m, columns are the images of the new
// basis vectors; (pullback(a, P))(u_1,...,u_k) = a(P u_1, ..., P u_k).
inline KForm pullback(const KForm& a, const Mat& P) {
  if (P.rows() != a.dim()) throw DimensionMismatch("pullback: bad map");
  const int m = static_cast<int>(P.cols());
  const int k = a.degree();
  if (k > m) throw DegreeOverflow("pullback: degree exceeds target dimension");
  KForm r(m, k);
  const auto& tr = r.table();
  std::array<int, kMaxDim> I{};
  for (int ri = 0; ri < r.size(); ++ri) {
    std::uint8_t mask = tr.masks[ri];
    for (int p = 0, mm = mask; mm; ++p) {
      I[p] = __builtin_ctz(mm);
      mm &= mm - 1;
    }
    KForm f = a;
    for (int p = 0; p < k; ++p) f = interior(P.col(I[p]), f);
    r[ri] = f[0];
  }
  return r;
}

// Riemannian metric at a point, with the data hodge and sharp/flat need.
struct Metric {
  int dim;
  Mat g;       // symmetric positive definite
  Mat ginv;
  double sqrt_det;

  Metric(int n, const Mat& m) : dim(n), g(0.5 * (m + m.transpose())) {
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("Metric: bad size");
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <=
        kSpdEigenFloor * std::max(1.0, std::abs(es.eigenvalues().maxCoeff())))
      throw DegenerateMetric("Metric: not positive definite");
    ginv = g.inverse();
    sqrt_det = std::sqrt(g.determinant());
  }

  Vec sharp(const KForm& one_form) const {
    Vec c(dim);
    for (int i = 0; i < dim; ++i) c[i] = one_form[i];
    return ginv * c;
  }
  KForm flat(const Vec& v) const {
    KForm f(dim, 1);
    Vec c = g * v;
    for (int i = 0; i < dim; ++i) f[i] = c[i];
    return f;
  }
};

// Inner product of k-forms induced by g: <e^I, e^J> = det(ginv[I,J]).
inline double inner(const Metric& g, const KForm& a, const KForm& b) {
  if (a.dim() != g.dim || b.dim() != g.dim || a.degree() != b.degree())
    throw DimensionMismatch("inner: mismatched arguments");
  const auto& t = a.table();
  const int k = a.degree();
  double acc = 0.0;
  std::array<int, kMaxDim> I{}, J{};
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    std::uint8_t mi = t.masks[i];
    for (int p = 0, m = mi; m; ++p) {
      I[p] = __builtin_ctz(m);
      m &= m - 1;
    }
    for (int j = 0; j < b.size(); ++j) {
      if (b[j] == 0.0) continue;
      std::uint8_t mj = t.masks[j];
      for (int p = 0, m = mj; m; ++p) {
        J[p] = __builtin_ctz(m);
        m &= m - 1;
      }
      Mat sub(k, k);
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) sub(p, q) = g.ginv(I[p], J[q]);
      acc += a[i] * b[j] * (k == 0 ? 1.0 : sub.determinant());
    }
  }
  return acc;
}

// Hodge star: b ^ *a = <b, a> dvol_g for all b. `orient` is any nonzero top
// form declaring the positive orientation.
inline KForm hodge(const Metric& g, const KForm& orient, const KForm& a) {
  if (orient.degree() != g.dim || orient.dim() != g.dim)
    throw DimensionMismatch("hodge: orientation must be a top form");
  if (orient[0] == 0.0) throw ZeroVolume("hodge: zero orientation form");
  const double osign = orient[0] > 0 ? 1.0 : -1.0;
  const int n = g.dim;
  const int k = a.degree();
  const double rho = g.sqrt_det * osign;
  KForm r(n, n - k);
  const auto& t = a.table();
  const auto& tr = r.table();
  const std::uint8_t full = std::uint8_t((1u << n) - 1u);
  std::array<int, kMaxDim> I{}, J{};
  for (int i = 0; i < a.size(); ++i) {
    // <e^I, a>
    const std::uint8_t mi = t.masks[i];
    for (int p = 0, m = mi; m; ++p) {
      I[p] = __builtin_ctz(m);
      m &= m - 1;
    }
    double val = 0.0;
    for (int j = 0; j < a.size(); ++j) {
      if (a[j] == 0.0) continue;
      const std::uint8_t mj = t.masks[j];
      for (int p = 0, m = mj; m; ++p) {
        J[p] = __builtin_ctz(m);
        m &= m - 1;
      }
      if (k == 0) {
        val += a[j];
        continue;
      }
      Mat sub(k, k);
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) sub(p, q) = g.ginv(I[p], J[q]);
      val += a[j] * sub.determinant();
    }
    if (val == 0.0) continue;
    const std::uint8_t mc = std::uint8_t(full & ~mi);
    r[tr.rank_of_mask[mc]] += rho * merge_sign(mi, mc) * val;
  }
  return r;
}

}  // namespace g2kit
