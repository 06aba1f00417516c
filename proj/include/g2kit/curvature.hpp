#pragma once

// Riemann curvature of a sampled metric field and the Monge-Ampere residual.
//
// The metric may be m x m with m >= dim(domain); coordinates beyond the
// domain axes are invariant directions with vanishing derivatives. The
// curvature norm is the invariant sqrt(R_abcd R^abcd), evaluated pointwise
// from 4th-order finite-difference Christoffel symbols. Christoffel data is
// streamed in slices along axis 0, and both the metric and the slices are
// held point-major so the per-point gathers stay in cache.

#include <mutex>

#include "g2kit/fieldops.hpp"

namespace g2kit {

// Interior margin (in cells) excluded from sup norms on box axes.
inline constexpr int kBoxMargin = 2;

namespace detail {

// 5-point stencil offsets/weights for the first derivative at row i of an
// axis, as index offsets relative to i (periodic wrap handled by caller).
struct StencilRow {
  std::array<int, 5> off;
  std::array<double, 5> w;
};

inline StencilRow stencil_row(const AxisDeriv& op, const Axis& ax, int i) {
  StencilRow s;
  if (ax.periodic) {
    const double h = ax.step();
    s.off = {-2, -1, 0, 1, 2};
    s.w = {1.0 / (12 * h), -8.0 / (12 * h), 0.0, 8.0 / (12 * h), -1.0 / (12 * h)};
  } else {
    for (int k = 0; k < 5; ++k) {
      s.off[k] = op.start[i] + k - i;
      s.w[k] = op.wts[i][k];
    }
  }
  return s;
}

template <int M>
double curvature_norm_impl(const MetricField& gf) {
  using MatM = Eigen::Matrix<double, M, M>;
  static constexpr int NP = M * (M + 1) / 2;   // symmetric pairs
  static constexpr int MP = M * (M - 1) / 2;   // antisymmetric pairs
  using MatP = Eigen::Matrix<double, MP, MP>;

  const Domain& dom = gf.dom;
  const int dim = dom.dim();
  const int n0 = dom.axes[0].n;
  const std::size_t np = dom.npoints();
  const std::size_t slicevol = np / n0;
  const int gcomps = M * NP;

  DomainDerivs ops(dom);
  std::vector<std::vector<StencilRow>> sten(dim);
  for (int a = 0; a < dim; ++a) {
    sten[a].resize(dom.axes[a].n);
    for (int i = 0; i < dom.axes[a].n; ++i) sten[a][i] = stencil_row(ops.ops[a], dom.axes[a], i);
  }

  auto wrap = [&](int i, int axis) {
    const int n = dom.axes[axis].n;
    if (dom.axes[axis].periodic) return ((i % n) + n) % n;
    return i;  // box stencils never leave the axis by construction
  };

  static const auto pair_of = [] {
    std::array<std::array<int, M>, M> t{};
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) t[i][j] = MetricField::pair_index(i, j, M);
    return t;
  }();

  // point-major copy of the metric: gT[p * NP + pr]
  std::vector<double> gT(np * NP);
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    for (int pr = 0; pr < NP; ++pr) {
      const double* src = gf.values.data() + std::size_t(pr) * np;
      for (std::size_t p = b; p < e; ++p) gT[p * NP + pr] = src[p];
    }
  });

  struct GammaSlice {
    int i0 = -1;
    std::vector<double> v;  // [r * gcomps + (a * NP + pair)]
  };

  auto compute_gamma = [&](int i0, GammaSlice& out) {
    out.i0 = i0;
    out.v.assign(std::size_t(gcomps) * slicevol, 0.0);
    parallel_for(slicevol, [&](std::size_t rb, std::size_t re) {
      int idx[kMaxDim];
      std::array<MatM, kMaxDim> dg;
      MatM g, ginv;
      for (std::size_t r = rb; r < re; ++r) {
        const std::size_t p = std::size_t(i0) * slicevol + r;
        dom.unflatten(p, idx);
        for (int a = 0; a < dim; ++a) {
          dg[a].setZero();
          const auto& s = sten[a][idx[a]];
          const std::size_t stride = dom.stride(a);
          for (int k = 0; k < 5; ++k) {
            if (s.w[k] == 0.0) continue;
            const int ii = wrap(idx[a] + s.off[k], a);
            const double* gq = gT.data() + (p + (std::size_t(ii) - idx[a]) * stride) * NP;
            const double w = s.w[k];
            for (int i = 0; i < M; ++i)
              for (int j = i; j < M; ++j) {
                const double val = w * gq[pair_of[i][j]];
                dg[a](i, j) += val;
                if (i != j) dg[a](j, i) += val;
              }
          }
        }
        const double* gp = gT.data() + p * NP;
        for (int i = 0; i < M; ++i)
          for (int j = i; j < M; ++j) g(i, j) = g(j, i) = gp[pair_of[i][j]];
        Eigen::LLT<MatM> llt(g);
        if (llt.info() != Eigen::Success)
          throw DegenerateMetric("curvature_norm: metric not positive definite at sample " +
                                 std::to_string(p));
        ginv = g.inverse();
        double* dst = out.v.data() + r * gcomps;
        for (int b2 = 0; b2 < M; ++b2)
          for (int c = b2; c < M; ++c) {
            const int pr = pair_of[b2][c];
            for (int a = 0; a < M; ++a) {
              double acc = 0.0;
              for (int d = 0; d < M; ++d) {
                const double t1 = (b2 < dim) ? dg[b2](d, c) : 0.0;
                const double t2 = (c < dim) ? dg[c](d, b2) : 0.0;
                const double t3 = (d < dim) ? dg[d](b2, c) : 0.0;
                acc += ginv(a, d) * (t1 + t2 - t3);
              }
              dst[a * NP + pr] = 0.5 * acc;
            }
          }
      }
    });
  };

  std::array<GammaSlice, 5> ring;
  auto slice_for = [&](int i0) -> GammaSlice& {
    const int iw = wrap(i0, 0);
    auto& s = ring[((iw % 5) + 5) % 5];
    if (s.i0 != iw) compute_gamma(iw, s);
    return s;
  };

  const bool per0 = dom.axes[0].periodic;
  const int lo0 = per0 ? 0 : kBoxMargin;
  const int hi0 = per0 ? n0 : n0 - kBoxMargin;

  double global_max = 0.0;
  std::mutex maxmu;
  for (int i0 = lo0; i0 < hi0; ++i0) {
    std::array<const GammaSlice*, 5> win;
    for (int k = -2; k <= 2; ++k) win[k + 2] = &slice_for(i0 + k);
    const GammaSlice& center = *win[2];

    parallel_for(slicevol, [&](std::size_t rb, std::size_t re) {
      int idx[kMaxDim];
      double mx = 0.0;
      MatM g, ginv;
      std::array<MatM, M> G;
      std::array<std::array<double, std::size_t(M) * NP>, 4> dGam{};
      std::array<MatM, MP> W;
      MatP Wp, Gu;
      for (std::size_t r = rb; r < re; ++r) {
        const std::size_t p = std::size_t(i0) * slicevol + r;
        dom.unflatten(p, idx);
        bool interior = true;
        for (int a = 1; a < dim; ++a)
          if (!dom.axes[a].periodic &&
              (idx[a] < kBoxMargin || idx[a] >= dom.axes[a].n - kBoxMargin))
            interior = false;
        if (!interior) continue;
        const double* gp = gT.data() + p * NP;
        for (int i = 0; i < M; ++i)
          for (int j = i; j < M; ++j) g(i, j) = g(j, i) = gp[pair_of[i][j]];
        ginv = g.inverse();

        const double* gamc = center.v.data() + r * gcomps;
        for (int x = 0; x < M; ++x)
          for (int a = 0; a < M; ++a)
            for (int e = 0; e < M; ++e) G[x](a, e) = gamc[a * NP + pair_of[x][e]];

        for (int cax = 0; cax < dim; ++cax) {
          auto& dst = dGam[cax];
          dst.fill(0.0);
          const auto& s = sten[cax][idx[cax]];
          if (cax == 0) {
            for (int k = 0; k < 5; ++k) {
              if (s.w[k] == 0.0) continue;
              const double* src = win[s.off[k] + 2]->v.data() + r * gcomps;
              const double w = s.w[k];
              for (int t = 0; t < gcomps; ++t) dst[t] += w * src[t];
            }
          } else {
            const std::size_t stride = dom.stride(cax);
            for (int k = 0; k < 5; ++k) {
              if (s.w[k] == 0.0) continue;
              const int ii = wrap(idx[cax] + s.off[k], cax);
              const double* src =
                  center.v.data() + (r + (std::size_t(ii) - idx[cax]) * stride) * gcomps;
              const double w = s.w[k];
              for (int t = 0; t < gcomps; ++t) dst[t] += w * src[t];
            }
          }
        }

        // R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + [Gamma_c, Gamma_d]^a_b
        {
          int pidx = 0;
          MatM Rcd;
          for (int c = 0; c < M; ++c)
            for (int d = c + 1; d < M; ++d, ++pidx) {
              Rcd.noalias() = G[c] * G[d];
              Rcd.noalias() -= G[d] * G[c];
              if (c < dim)
                for (int a = 0; a < M; ++a)
                  for (int b2 = 0; b2 < M; ++b2)
                    Rcd(a, b2) += dGam[c][std::size_t(a) * NP + pair_of[d][b2]];
              if (d < dim)
                for (int a = 0; a < M; ++a)
                  for (int b2 = 0; b2 < M; ++b2)
                    Rcd(a, b2) -= dGam[d][std::size_t(a) * NP + pair_of[c][b2]];
              W[pidx].noalias() = g * Rcd;
            }
        }

        // K = R_abcd R^abcd through the induced metric on 2-forms
        {
          int qidx = 0;
          for (int a = 0; a < M; ++a)
            for (int b2 = a + 1; b2 < M; ++b2, ++qidx)
              for (int pcd = 0; pcd < MP; ++pcd) Wp(qidx, pcd) = W[pcd](a, b2);
          int pi = 0;
          for (int a = 0; a < M; ++a)
            for (int b2 = a + 1; b2 < M; ++b2, ++pi) {
              int pj = 0;
              for (int c = 0; c < M; ++c)
                for (int d = c + 1; d < M; ++d, ++pj)
                  Gu(pi, pj) = ginv(a, c) * ginv(b2, d) - ginv(a, d) * ginv(b2, c);
            }
          const double kret = 4.0 * (Gu * Wp * Gu).cwiseProduct(Wp).sum();
          mx = std::max(mx, std::sqrt(std::max(0.0, kret)));
        }
      }
      std::lock_guard<std::mutex> lock(maxmu);
      global_max = std::max(global_max, mx);
    });
  }
  return global_max;
}

}  // namespace detail

inline double curvature_norm(const MetricField& gf) {
  switch (gf.m) {
    case 2: return detail::curvature_norm_impl<2>(gf);
    case 3: return detail::curvature_norm_impl<3>(gf);
    case 4: return detail::curvature_norm_impl<4>(gf);
    case 5: return detail::curvature_norm_impl<5>(gf);
    case 6: return detail::curvature_norm_impl<6>(gf);
    case 7: return detail::curvature_norm_impl<7>(gf);
    default: throw DimensionMismatch("curvature_norm: unsupported matrix size");
  }
}

// Evaluator-backed variant: samples the metric, then streams.
inline double curvature_norm(const Domain& dom, int m, const std::function<Mat(const Vec&)>& g) {
  return curvature_norm(sample_metric(dom, m, g));
}

// sup |det(Hess u) - 1| over the interior of a 3-dimensional box.
inline double monge_ampere_residual(const FormField& u) {
  if (u.degree != 0 || u.dom.dim() != 3)
    throw DimensionMismatch("monge_ampere_residual: need a scalar field on a 3-dim domain");
  const Domain& dom = u.dom;
  DomainDerivs ops(dom);
  const std::size_t np = dom.npoints();
  std::array<std::vector<double>, 3> du;
  for (int a = 0; a < 3; ++a) {
    du[a].resize(np);
    derivative_axis(dom, ops.ops[a], a, u.comp(0), du[a].data());
  }
  std::array<std::array<std::vector<double>, 3>, 3> h;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      h[a][b].resize(np);
      derivative_axis(dom, ops.ops[b], b, du[a].data(), h[a][b].data());
    }
  double mx = 0.0;
  int idx[kMaxDim];
  for (std::size_t p = 0; p < np; ++p) {
    dom.unflatten(p, idx);
    bool interior = true;
    for (int a = 0; a < 3; ++a)
      if (!dom.axes[a].periodic && (idx[a] < kBoxMargin || idx[a] >= dom.axes[a].n - kBoxMargin))
        interior = false;
    if (!interior) continue;
    Mat3 hess;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) hess(a, b) = hess(b, a) = h[a][b][p];
    mx = std::max(mx, std::abs(hess.determinant() - 1.0));
  }
  return mx;
}

}  // namespace g2kit
