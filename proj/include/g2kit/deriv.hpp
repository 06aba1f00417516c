#pragma once

// One-dimensional differentiation kernels: the exact derivative of the
// discrete Fourier interpolant on periodic axes, and 4th-order finite
// differences (one-sided at the ends) on box axes.

#include <cmath>
#include <map>
#include <mutex>

#include "g2kit/domain.hpp"
#include "g2kit/parallel.hpp"

namespace g2kit {

// Dense spectral differentiation matrix for n uniform samples of a periodic
// function with the given period. Exact on trigonometric polynomials below
// the Nyquist mode; the Nyquist sine mode of even n is dropped to keep the
// result real and skew-symmetric.
inline Mat spectral_diff_matrix(int n, double period) {
  Mat d = Mat::Zero(n, n);
  const double scale = 2.0 * M_PI / period;
  const int mmax = (n - 1) / 2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * M_PI * (i - j) / n;
      double acc = 0.0;
      for (int m = 1; m <= mmax; ++m) acc -= 2.0 * m * std::sin(m * t);
      if (n % 2 == 0) acc -= 0.5 * n * std::sin(0.5 * n * t);
      d(i, j) = scale * acc / n;
    }
  // exact zero row sums: constants must differentiate to exactly zero
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) s += d(i, j);
    d(i, i) = -s;
  }
  return d;
}

// Fornberg weights for the m-th derivative at z from arbitrary nodes x.
inline std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
  const int nd = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<std::vector<double>>> c(
      nd + 1, std::vector<std::vector<double>>(nd + 1, std::vector<double>(m + 1, 0.0)));
  c[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i <= nd; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      for (int k = 0; k <= std::min(i, m); ++k) {
        c[i][j][k] = ((x[i] - z) * c[i - 1][j][k] - (k ? k * c[i - 1][j][k - 1] : 0.0)) / c3;
      }
    }
    for (int k = 0; k <= std::min(i, m); ++k) {
      c[i][i][k] = c1 / c2 *
                   ((k ? k * c[i - 1][i - 1][k - 1] : 0.0) - (x[i - 1] - z) * c[i - 1][i - 1][k]);
    }
    c1 = c2;
  }
  std::vector<double> w(nd + 1);
  for (int j = 0; j <= nd; ++j) w[j] = c[nd][j][m];
  return w;
}

// Per-axis derivative operator: dense matrix for periodic axes, banded
// 5-point stencils (shifted near box ends) otherwise.
struct AxisDeriv {
  bool periodic;
  int n;
  Mat dense_t;                              // periodic case, transposed for row access
  std::vector<std::array<double, 5>> wts;   // box case, per row
  std::vector<int> start;                   // stencil start per row

  explicit AxisDeriv(const Axis& ax) : periodic(ax.periodic), n(ax.n) {
    if (periodic) {
      dense_t = spectral_diff_matrix(n, ax.length()).transpose();
    } else {
      wts.resize(n);
      start.resize(n);
      const double h = ax.step();
      for (int i = 0; i < n; ++i) {
        int s = std::clamp(i - 2, 0, n - 5);
        start[i] = s;
        std::vector<double> nodes(5);
        for (int k = 0; k < 5; ++k) nodes[k] = (s + k) * h;
        auto w = fd_weights(i * h, nodes, 1);
        // pin the self-weight so constants differentiate to exactly zero
        double sum = 0.0;
        for (int k = 0; k < 5; ++k)
          if (s + k != i) sum += w[k];
        w[i - s] = -sum;
        for (int k = 0; k < 5; ++k) wts[i][k] = w[k];
      }
    }
  }

  // y = D x along one line (x, y strided views of length n). Differentiating
  // x - x_i instead of x costs one subtraction per term and makes constant
  // inputs land on exact zeros.
  void apply(const double* x, std::ptrdiff_t sx, double* y, std::ptrdiff_t sy) const {
    if (periodic) {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double xi = x[i * sx];
        const double* row = dense_t.data() + std::size_t(i) * n;  // row i of D, contiguous
        for (int j = 0; j < n; ++j) acc += row[j] * (x[j * sx] - xi);
        y[i * sy] = acc;
      }
    } else {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double xi = x[i * sx];
        for (int k = 0; k < 5; ++k) acc += wts[i][k] * (x[(start[i] + k) * sx] - xi);
        y[i * sy] = acc;
      }
    }
  }
};

// Derivative of one scalar grid component along `axis`, all lines.
// in/out are npoints-sized arrays in row-major grid order.
inline void derivative_axis(const Domain& dom, const AxisDeriv& op, int axis, const double* in,
                            double* out) {
  const int n = dom.axes[axis].n;
  const std::size_t stride = dom.stride(axis);
  const std::size_t nlines = dom.npoints() / n;
  // line l: base index = (l / stride) * stride * n + (l % stride)
  parallel_for(nlines, [&](std::size_t lb, std::size_t le) {
    for (std::size_t l = lb; l < le; ++l) {
      const std::size_t base = (l / stride) * stride * n + (l % stride);
      op.apply(in + base, static_cast<std::ptrdiff_t>(stride), out + base,
               static_cast<std::ptrdiff_t>(stride));
    }
  });
}

// Cached per-domain derivative operators.
struct DomainDerivs {
  std::vector<AxisDeriv> ops;
  explicit DomainDerivs(const Domain& dom) {
    ops.reserve(dom.dim());
    for (const auto& ax : dom.axes) ops.emplace_back(ax);
  }
};

}  // namespace g2kit
