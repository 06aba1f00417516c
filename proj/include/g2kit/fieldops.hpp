#pragma once

// Exterior derivative, contraction and Lie derivative for form fields.

#include "g2kit/deriv.hpp"
#include "g2kit/formfield.hpp"

namespace g2kit {

// Affine vector field V(x) = M x + c; covers constant, linear and rotation
// generators, with an exact constant Jacobian.
struct AffineField {
  Mat M;
  Vec c;

  static AffineField constant(const Vec& v) {
    return AffineField{Mat::Zero(v.size(), v.size()), v};
  }
  static AffineField linear(const Mat& m) { return AffineField{m, Vec::Zero(m.rows())}; }

  int dim() const { return static_cast<int>(c.size()); }
  Vec operator()(const Vec& x) const { return M * x + c; }
  const Mat& jacobian() const { return M; }
};

// (df)_J = sum_{b in J} (-1)^{pos(b)} D_b f_{J \ b}
inline FormField ext_d(const FormField& f, const DomainDerivs& ops) {
  const int dim = f.dom.dim();
  if (f.degree >= dim) throw DegreeOverflow("ext_d: top-degree input");
  FormField out(f.dom, f.degree + 1);
  const auto& ti = f.table();
  const auto& to = out.table();
  const std::size_t np = f.npoints();
  std::vector<double> buf(np);
  for (int oc = 0; oc < out.ncomps(); ++oc) {
    const std::uint8_t mj = to.masks[oc];
    double* dst = out.comp(oc);
    for (std::uint8_t rest = mj; rest;) {
      const int b = __builtin_ctz(rest);
      rest &= std::uint8_t(rest - 1);
      const int ic = ti.rank_of_mask[mj & ~std::uint8_t(1u << b)];
      const double s = removal_sign(mj, b);
      derivative_axis(f.dom, ops.ops[b], b, f.comp(ic), buf.data());
      for (std::size_t p = 0; p < np; ++p) dst[p] += s * buf[p];
    }
  }
  return out;
}

inline FormField ext_d(const FormField& f) { return ext_d(f, DomainDerivs(f.dom)); }

// Sup norm of d(f) without keeping the result.
inline double ext_d_residual(const FormField& f, const DomainDerivs& ops) {
  FormField d = ext_d(f, ops);
  return d.sup_norm();
}

// Pointwise interior product with a sampled vector field.
inline FormField contract_field(const FormField& f, const AffineField& v) {
  if (f.degree < 1) throw DegreeOverflow("contract_field: degree-0 input");
  const int dim = f.dom.dim();
  if (v.dim() != dim) throw DimensionMismatch("contract_field: dimension mismatch");
  FormField out(f.dom, f.degree - 1);
  const auto& ti = f.table();
  const auto& to = out.table();
  const std::size_t np = f.npoints();
  // sample the needed components of V once per axis
  std::vector<std::vector<double>> vcomp(dim);
  for (int b = 0; b < dim; ++b) {
    vcomp[b].resize(np);
    parallel_for(np, [&](std::size_t pb, std::size_t pe) {
      for (std::size_t p = pb; p < pe; ++p) vcomp[b][p] = v(f.dom.point(p))[b];
    });
  }
  for (int ic = 0; ic < f.ncomps(); ++ic) {
    const std::uint8_t mi = ti.masks[ic];
    const double* src = f.comp(ic);
    for (std::uint8_t rest = mi; rest;) {
      const int b = __builtin_ctz(rest);
      rest &= std::uint8_t(rest - 1);
      const double s = removal_sign(mi, b);
      double* dst = out.comp(to.rank_of_mask[mi & ~std::uint8_t(1u << b)]);
      const double* vb = vcomp[b].data();
      for (std::size_t p = 0; p < np; ++p) dst[p] += s * vb[p] * src[p];
    }
  }
  return out;
}

// L_V f = V^a D_a f + (dV^b spliced into each slot), using the exact
// Jacobian of the affine field.
inline FormField lie_derivative(const FormField& f, const AffineField& v,
                                const DomainDerivs& ops) {
  const int dim = f.dom.dim();
  if (v.dim() != dim) throw DimensionMismatch("lie_derivative: dimension mismatch");
  FormField out(f.dom, f.degree);
  const auto& t = f.table();
  const std::size_t np = f.npoints();
  std::vector<double> buf(np);
  std::vector<std::vector<double>> vcomp(dim);
  for (int a = 0; a < dim; ++a) {
    vcomp[a].resize(np);
    parallel_for(np, [&](std::size_t pb, std::size_t pe) {
      for (std::size_t p = pb; p < pe; ++p) vcomp[a][p] = v(f.dom.point(p))[a];
    });
  }
  const Mat& jac = v.jacobian();
  for (int c = 0; c < f.ncomps(); ++c) {
    const std::uint8_t mi = t.masks[c];
    double* dst = out.comp(c);
    // transport term
    for (int a = 0; a < dim; ++a) {
      derivative_axis(f.dom, ops.ops[a], a, f.comp(c), buf.data());
      const double* va = vcomp[a].data();
      for (std::size_t p = 0; p < np; ++p) dst[p] += va[p] * buf[p];
    }
    // slot terms: this component receives f_I with one index i_m of I renamed
    // to an index of mi; equivalently, distribute from each input component.
  }
  for (int ic = 0; ic < f.ncomps(); ++ic) {
    const std::uint8_t mi = t.masks[ic];
    const double* src = f.comp(ic);
    for (std::uint8_t rest = mi; rest;) {
      const int im = __builtin_ctz(rest);
      rest &= std::uint8_t(rest - 1);
      const std::uint8_t base = mi & ~std::uint8_t(1u << im);
      for (int b = 0; b < dim; ++b) {
        if (jac(im, b) == 0.0) continue;
        if (base & (1u << b)) continue;  // repeated index, term vanishes
        const std::uint8_t mo = base | std::uint8_t(1u << b);
        // sign: remove im from position pos(im in mi), insert b into base
        const double s = removal_sign(mi, im) * removal_sign(mo, b);
        double* dst = out.comp(t.rank_of_mask[mo]);
        const double w = s * jac(im, b);
        for (std::size_t p = 0; p < np; ++p) dst[p] += w * src[p];
      }
    }
  }
  return out;
}

inline FormField lie_derivative(const FormField& f, const AffineField& v) {
  return lie_derivative(f, v, DomainDerivs(f.dom));
}

// Pointwise wedge of two fields.
inline FormField wedge(const FormField& a, const FormField& b) {
  if (a.dom.dim() != b.dom.dim() || a.npoints() != b.npoints())
    throw DimensionMismatch("wedge(field): mismatched domains");
  FormField out(a.dom, a.degree + b.degree);
  const auto& ta = a.table();
  const auto& tb = b.table();
  const auto& to = out.table();
  const std::size_t np = a.npoints();
  for (int i = 0; i < a.ncomps(); ++i) {
    const std::uint8_t mi = ta.masks[i];
    const double* pa = a.comp(i);
    for (int j = 0; j < b.ncomps(); ++j) {
      const std::uint8_t mj = tb.masks[j];
      const int s = merge_sign(mi, mj);
      if (!s) continue;
      double* dst = out.comp(to.rank_of_mask[mi | mj]);
      const double* pb = b.comp(j);
      for (std::size_t p = 0; p < np; ++p) dst[p] += s * pa[p] * pb[p];
    }
  }
  return out;
}

// Pointwise product with a scalar field.
inline FormField scale_field(const FormField& s, const FormField& f) {
  if (s.degree != 0) throw DimensionMismatch("scale_field: scalar required");
  FormField out(f.dom, f.degree);
  const std::size_t np = f.npoints();
  const double* w = s.comp(0);
  for (int c = 0; c < f.ncomps(); ++c) {
    const double* src = f.comp(c);
    double* dst = out.comp(c);
    for (std::size_t p = 0; p < np; ++p) dst[p] = w[p] * src[p];
  }
  return out;
}

}  // namespace g2kit
