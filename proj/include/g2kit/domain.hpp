#pragma once

// Flat product domains: each axis is either a circle of given period
// (sampled uniformly, duplicate endpoint excluded) or a closed interval
// (endpoints included).

#include <cstddef>
#include <vector>

#include "g2kit/errors.hpp"
#include "g2kit/linalg.hpp"
#include "g2kit/multiindex.hpp"

namespace g2kit {

struct Axis {
  bool periodic = true;
  double lo = 0.0;
  double hi = 2.0 * M_PI;
  int n = 64;

  double length() const { return hi - lo; }
  double step() const { return periodic ? length() / n : length() / (n - 1); }
  double coord(int i) const { return lo + i * step(); }
};

inline Axis periodic_axis(int n, double period = 2.0 * M_PI, double lo = 0.0) {
  return Axis{true, lo, lo + period, n};
}
inline Axis box_axis(int n, double lo, double hi) { return Axis{false, lo, hi, n}; }

struct Domain {
  std::vector<Axis> axes;

  Domain() = default;
  explicit Domain(std::vector<Axis> a) : axes(std::move(a)) {
    for (const auto& ax : axes) {
      if (ax.n < 8) throw DimensionMismatch("Domain: need at least 8 samples per axis");
      if (!(ax.hi > ax.lo)) throw DimensionMismatch("Domain: empty axis interval");
    }
    if (static_cast<int>(axes.size()) > kMaxDim)
      throw DimensionMismatch("Domain: too many axes");
  }

  int dim() const { return static_cast<int>(axes.size()); }

  std::size_t npoints() const {
    std::size_t p = 1;
    for (const auto& ax : axes) p *= ax.n;
    return p;
  }

  // row-major: axis 0 slowest, last axis fastest
  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = dim() - 1; a > axis; --a) s *= axes[a].n;
    return s;
  }

  void unflatten(std::size_t p, int* idx) const {
    for (int a = dim() - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(p % axes[a].n);
      p /= axes[a].n;
    }
  }

  std::size_t flatten(const int* idx) const {
    std::size_t p = 0;
    for (int a = 0; a < dim(); ++a) p = p * axes[a].n + idx[a];
    return p;
  }

  Vec point(std::size_t p) const {
    int idx[kMaxDim];
    unflatten(p, idx);
    Vec x(dim());
    for (int a = 0; a < dim(); ++a) x[a] = axes[a].coord(idx[a]);
    return x;
  }
};

inline Domain torus(int dim, int n, double period = 2.0 * M_PI) {
  std::vector<Axis> axes(dim, periodic_axis(n, period));
  return Domain(std::move(axes));
}

}  // namespace g2kit
