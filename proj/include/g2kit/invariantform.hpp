#pragma once

// Torus-invariant forms on a T^3-bundle over a flat base, represented as
//   sum_S (base form)_S ^ theta^S,  S subset of {1,2,3},
// with the theta coframe symbolic (d theta^i = 0 in this representation).
// The 7-dimensional total space is never gridded; ambient components use the
// coordinate order (base axes..., theta^1, theta^2, theta^3).

#include <optional>

#include "g2kit/fieldops.hpp"

namespace g2kit {

struct InvariantForm {
  Domain base;
  int total_degree = 0;
  std::array<std::optional<FormField>, 8> sectors;  // index = theta bitmask

  InvariantForm() = default;
  InvariantForm(Domain b, int degree) : base(std::move(b)), total_degree(degree) {
    if (base.dim() + 3 > kMaxDim) throw DimensionMismatch("InvariantForm: base too large");
    if (degree < 0 || degree > base.dim() + 3)
      throw DimensionMismatch("InvariantForm: bad total degree");
  }

  int ambient_dim() const { return base.dim() + 3; }

  int base_degree(std::uint8_t s) const { return total_degree - popcount8(s); }

  bool has(std::uint8_t s) const { return sectors[s].has_value(); }

  FormField& sector(std::uint8_t s) {
    const int k = base_degree(s);
    if (k < 0 || k > base.dim()) throw DimensionMismatch("InvariantForm: sector out of range");
    if (!sectors[s]) sectors[s].emplace(base, k);
    return *sectors[s];
  }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& s : sectors)
      if (s) m = std::max(m, s->sup_norm());
    return m;
  }

  InvariantForm& operator+=(const InvariantForm& o) {
    for (int s = 0; s < 8; ++s)
      if (o.sectors[s]) sector(std::uint8_t(s)) += *o.sectors[s];
    return *this;
  }
  InvariantForm& operator-=(const InvariantForm& o) {
    for (int s = 0; s < 8; ++s)
      if (o.sectors[s]) {
        FormField f = *o.sectors[s];
        f *= -1.0;
        sector(std::uint8_t(s)) += f;
      }
    return *this;
  }
  friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }

  // Full ambient form at one grid point.
  KForm at(std::size_t p) const {
    KForm f(ambient_dim(), total_degree);
    const auto& t = f.table();
    const int bd = base.dim();
    for (int s = 0; s < 8; ++s) {
      if (!sectors[s]) continue;
      const FormField& ff = *sectors[s];
      const auto& tb = ff.table();
      for (int c = 0; c < ff.ncomps(); ++c) {
        const std::uint8_t mask = std::uint8_t(tb.masks[c] | (std::uint8_t(s) << bd));
        f[t.rank_of_mask[mask]] = ff.comp(c)[p];
      }
    }
    return f;
  }

  void set(std::size_t p, const KForm& f) {
    const int bd = base.dim();
    const auto& t = index_table(ambient_dim(), total_degree);
    for (int r = 0; r < binomial(ambient_dim(), total_degree); ++r) {
      const std::uint8_t m = t.masks[r];
      const std::uint8_t s = std::uint8_t(m >> bd);
      const std::uint8_t jb = std::uint8_t(m & ((1u << bd) - 1u));
      if (f[r] == 0.0 && !sectors[s]) continue;
      FormField& ff = sector(s);
      ff.comp(ff.table().rank_of_mask[jb])[p] = f[r];
    }
  }
};

// Sample a pointwise ambient evaluator (invariant: evaluated at theta = 0).
inline InvariantForm sample_invariant(const Domain& base, int degree,
                                      const std::function<KForm(const Vec&)>& phi_at) {
  InvariantForm out(base, degree);
  const std::size_t np = base.npoints();
  // materialize every admissible sector so parallel writes are in-place
  for (int s = 0; s < 8; ++s) {
    const int k = degree - popcount8(std::uint8_t(s));
    if (k >= 0 && k <= base.dim()) out.sector(std::uint8_t(s));
  }
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) out.set(p, phi_at(base.point(p)));
  });
  return out;
}

// d acts on base coefficients only (the theta coframe is flat here).
inline InvariantForm ext_d(const InvariantForm& f, const DomainDerivs& ops) {
  InvariantForm out(f.base, f.total_degree + 1);
  for (int s = 0; s < 8; ++s) {
    if (!f.sectors[s]) continue;
    if (f.sectors[s]->degree >= f.base.dim()) {
      // top-degree base coefficient: derivative vanishes
      continue;
    }
    out.sector(std::uint8_t(s)) += ext_d(*f.sectors[s], ops);
  }
  return out;
}

inline InvariantForm ext_d(const InvariantForm& f) { return ext_d(f, DomainDerivs(f.base)); }

// (b_S theta^S) ^ (c_T theta^T) =
//   (-1)^{|S| deg(c_T)} merge_sign(S,T) (b_S ^ c_T) theta^{S u T}
inline InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
  InvariantForm out(a.base, a.total_degree + b.total_degree);
  for (int s = 0; s < 8; ++s) {
    if (!a.sectors[s]) continue;
    for (int t = 0; t < 8; ++t) {
      if (!b.sectors[t]) continue;
      const int ms = merge_sign(std::uint8_t(s), std::uint8_t(t));
      if (!ms) continue;
      if (a.sectors[s]->degree + b.sectors[t]->degree > a.base.dim()) continue;  // vanishes
      const int degc = b.sectors[t]->degree;
      const int swap = (popcount8(std::uint8_t(s)) * degc) % 2 ? -1 : 1;
      FormField w = wedge(*a.sectors[s], *b.sectors[t]);
      w *= double(ms * swap);
      out.sector(std::uint8_t(s | t)) += w;
    }
  }
  return out;
}

// Interior product with the generator U_j = d/d theta^j:
//   U_j . (b theta^S) = (-1)^{deg b} removal_sign(S, j) b theta^{S \ j}
inline InvariantForm contract_theta(const InvariantForm& f, int j) {
  InvariantForm out(f.base, f.total_degree - 1);
  const std::uint8_t bit = std::uint8_t(1u << j);
  for (int s = 0; s < 8; ++s) {
    if (!f.sectors[s] || !(s & bit)) continue;
    const int sign =
        ((f.sectors[s]->degree % 2) ? -1 : 1) * removal_sign(std::uint8_t(s), j);
    FormField g = *f.sectors[s];
    g *= double(sign);
    out.sector(std::uint8_t(s & ~bit)) += g;
  }
  return out;
}

// Interior product with a horizontal (base) vector field.
inline InvariantForm contract_base(const InvariantForm& f, const AffineField& v) {
  InvariantForm out(f.base, f.total_degree - 1);
  for (int s = 0; s < 8; ++s) {
    if (!f.sectors[s]) continue;
    if (f.sectors[s]->degree == 0) continue;
    out.sector(std::uint8_t(s)) += contract_field(*f.sectors[s], v);
  }
  return out;
}

// Forgetful expansion to a full product-grid field with gridded theta axes.
inline FormField expand_product(const InvariantForm& f, int theta_samples = 8) {
  std::vector<Axis> axes = f.base.axes;
  for (int i = 0; i < 3; ++i) axes.push_back(periodic_axis(theta_samples));
  Domain prod(axes);
  FormField out(prod, f.total_degree);
  const int bd = f.base.dim();
  const std::size_t base_np = f.base.npoints();
  const std::size_t theta_np = prod.npoints() / base_np;
  const auto& t = out.table();
  for (int c = 0; c < out.ncomps(); ++c) {
    const std::uint8_t m = t.masks[c];
    const std::uint8_t s = std::uint8_t(m >> bd);
    const std::uint8_t jb = std::uint8_t(m & ((1u << bd) - 1u));
    if (!f.sectors[s]) continue;
    const FormField& ff = *f.sectors[s];
    const double* src = ff.comp(ff.table().rank_of_mask[jb]);
    double* dst = out.comp(c);
    // base point index p -> product indices p*theta_np .. p*theta_np+theta_np-1
    for (std::size_t p = 0; p < base_np; ++p)
      for (std::size_t q = 0; q < theta_np; ++q) dst[p * theta_np + q] = src[p];
  }
  return out;
}

// Pointwise Hodge star with an invariant ambient metric given in the
// (dx, theta) coframe; orient_sign fixes the sign of the coframe volume.
inline InvariantForm hodge_invariant(const InvariantForm& f,
                                     const std::function<Mat(const Vec&)>& metric,
                                     double orient_sign = 1.0) {
  const int n = f.ambient_dim();
  InvariantForm out(f.base, n - f.total_degree);
  for (int s = 0; s < 8; ++s) {
    const int k = out.total_degree - popcount8(std::uint8_t(s));
    if (k >= 0 && k <= f.base.dim()) out.sector(std::uint8_t(s));
  }
  const std::size_t np = f.base.npoints();
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    KForm orient(n, n);
    for (std::size_t p = b; p < e; ++p) {
      const Vec x = f.base.point(p);
      Metric g(n, metric(x));
      orient[0] = orient_sign;
      out.set(p, hodge(g, orient, f.at(p)));
    }
  });
  return out;
}

}  // namespace g2kit
