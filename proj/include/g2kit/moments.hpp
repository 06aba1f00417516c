#pragma once

// Local multi-moment maps by line integration of the contraction 1-forms,
// vanishing-order estimation at singular orbits, and the singular-image
// sampling behind the trivalent-graph picture.

#include <ostream>

#include <unsupported/Eigen/MatrixFunctions>

#include "g2kit/reduction.hpp"

namespace g2kit {

inline constexpr double kQuadTol = 1e-12;
inline constexpr double kLoopTol = 1e-10;

namespace detail {

// adaptive Simpson for a vector integrand over [0, 1]
template <typename F>
Vec adaptive_simpson(const F& f, double a, double b, const Vec& fa, const Vec& fb,
                     const Vec& fm, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const Vec fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
  const Vec s0 = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const Vec sl = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
  const Vec sr = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
  const Vec err = sl + sr - s0;
  if (depth <= 0 || err.cwiseAbs().maxCoeff() < 15.0 * tol) return sl + sr + err / 15.0;
  return adaptive_simpson(f, a, m, fa, fm, fl, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, fr, 0.5 * tol, depth - 1);
}

}  // namespace detail

// alpha_i(x) = 1/2 eps_i^{jk} phi_x(U_j, U_k, .) as rows of a 3x7 matrix
inline Mat alpha_matrix(const ModelInstance& m, const Vec& x) {
  const KForm phi = m.phi_at(x);
  Mat a = Mat::Zero(3, 7);
  std::array<Vec, 3> U;
  for (int i = 0; i < 3; ++i) U[i] = m.generator_at(i, x);
  for (int i = 0; i < 3; ++i) {
    KForm f(7, 1);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int s = eps3(i, j, k);
        if (s) f += 0.5 * s * interior(U[k], interior(U[j], phi));
      }
    for (int c = 0; c < 7; ++c) a(i, c) = f[c];
  }
  return a;
}

inline KForm beta_form(const ModelInstance& m, const Vec& x) {
  const KForm sp = m.starphi_at(x);
  return interior(m.generator_at(2, x),
                  interior(m.generator_at(1, x), interior(m.generator_at(0, x), sp)));
}

struct MomentChart {
  std::shared_ptr<const ModelInstance> model;
  Vec p0;
  double quad_tol = kQuadTol;
  double loop_residual = 0.0;  // certified bound from the build

  // nu(q) = integral of alpha along the straight segment p0 -> q
  Vec3 nu(const Vec& q) const {
    const Vec d = q - p0;
    auto integrand = [&](double t) {
      return Vec(alpha_matrix(*model, p0 + t * d) * d);
    };
    const Vec fa = integrand(0.0), fb = integrand(1.0), fm = integrand(0.5);
    return detail::adaptive_simpson(integrand, 0.0, 1.0, fa, fb, fm, quad_tol, 24);
  }

  // circulation around the rectangle q -> q+u -> q+u+v -> q+v -> q
  Vec3 loop(const Vec& q, const Vec& u, const Vec& v) const {
    auto seg = [&](const Vec& a, const Vec& b) {
      const Vec d = b - a;
      auto integrand = [&](double t) { return Vec(alpha_matrix(*model, a + t * d) * d); };
      return Vec3(detail::adaptive_simpson(integrand, 0.0, 1.0, integrand(0.0), integrand(1.0),
                                           integrand(0.5), quad_tol, 24));
    };
    return seg(q, q + u) + seg(q + u, q + u + v) + seg(q + u + v, q + v) + seg(q + v, q);
  }
};

// Builds the chart and certifies path-independence with random rectangle
// loops at chart scale; throws NonClosedAlpha when the circulation exceeds
// tolerance (a non-closed alpha signals a bug or an invalid model).
inline MomentChart build_moment_chart(const ModelInstance& m, const Vec& p0,
                                      int nloops = 12, std::uint64_t seed = 2,
                                      double loop_tol = kLoopTol) {
  MomentChart c{std::make_shared<ModelInstance>(m), p0};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 0.35);
  double worst = 0.0;
  for (int t = 0; t < nloops; ++t) {
    Vec q = p0, u(7), v(7);
    for (int i = 0; i < 7; ++i) {
      q[i] += N(rng);
      u[i] = N(rng);
      v[i] = N(rng);
    }
    worst = std::max(worst, c.loop(q, u, v).cwiseAbs().maxCoeff());
  }
  c.loop_residual = worst;
  if (worst > loop_tol)
    throw NonClosedAlpha("build_moment_chart: loop residual " + std::to_string(worst));
  return c;
}

// Flow of an affine generator field by time t (exact).
inline Vec flow(const AffineField& v, double t, const Vec& x) {
  if (v.M.cwiseAbs().maxCoeff() == 0.0) return x + t * v.c;
  Mat e = (t * v.M).exp();
  if (v.c.cwiseAbs().maxCoeff() == 0.0) return e * x;
  // general affine case by midpoint-split quadrature of the inhomogeneity
  Vec acc = e * x;
  const int steps = 64;
  for (int s = 0; s < steps; ++s) {
    const double ts = t * (s + 0.5) / steps;
    acc += (t / steps) * ((t - ts) * v.M).exp() * v.c;
  }
  return acc;
}

struct OrderEstimate {
  std::array<double, 4> slope;   // nu_1, nu_2, nu_3, |beta|
  std::array<int, 4> order;
};

inline constexpr double kOrderSlopeTol = 0.15;

// log-log regression of the decay of nu and |beta| along the supplied
// directions over lambda in [1e-3, 1e-1]; the median slope per function is
// rounded to the nearest integer. A value that does not decay (nonzero at p)
// reports order 0.
inline OrderEstimate vanishing_orders(const MomentChart& c, const Vec& p,
                                      const std::vector<Vec>& directions, int nradii = 12) {
  if (directions.empty()) throw AmbiguousOrder("vanishing_orders: no directions supplied");
  const Vec3 nu_p = c.nu(p);
  std::array<std::vector<double>, 4> slopes;
  for (const Vec& dir : directions) {
    const Vec d = dir / dir.norm();
    std::array<std::vector<double>, 4> lx, ly;
    for (int r = 0; r < nradii; ++r) {
      const double lam = std::pow(10.0, -3.0 + 2.0 * double(r) / (nradii - 1));
      const Vec q = p + lam * d;
      const Vec3 nu_q = c.nu(q) - nu_p;
      KForm be = beta_form(*c.model, q);
      double bnorm = 0.0;
      for (int i = 0; i < 7; ++i) bnorm += be[i] * be[i];
      const double vals[4] = {std::abs(nu_q[0]), std::abs(nu_q[1]), std::abs(nu_q[2]),
                              std::sqrt(bnorm)};
      for (int f = 0; f < 4; ++f) {
        if (vals[f] > 1e-300) {
          lx[f].push_back(std::log(lam));
          ly[f].push_back(std::log(vals[f]));
        }
      }
    }
    for (int f = 0; f < 4; ++f) {
      if (lx[f].size() < std::size_t(nradii) / 2) continue;
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      const double n = double(lx[f].size());
      for (std::size_t i = 0; i < lx[f].size(); ++i) {
        sx += lx[f][i];
        sy += ly[f][i];
        sxx += lx[f][i] * lx[f][i];
        sxy += lx[f][i] * ly[f][i];
      }
      slopes[f].push_back((n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
  }
  OrderEstimate out{};
  for (int f = 0; f < 4; ++f) {
    if (slopes[f].empty()) {
      // no decay data: the function is order 0 at p (nonzero value)
      out.slope[f] = 0.0;
      out.order[f] = 0;
      continue;
    }
    std::sort(slopes[f].begin(), slopes[f].end());
    const double med = slopes[f][slopes[f].size() / 2];
    out.slope[f] = med;
    const int rounded = int(std::lround(med));
    if (std::abs(med - rounded) > kOrderSlopeTol)
      throw AmbiguousOrder("vanishing_orders: slope " + std::to_string(med) +
                           " is not close to an integer");
    out.order[f] = rounded;
  }
  return out;
}

struct SingularImage {
  struct Sample {
    Vec3 nu;
    int stabilizer_dim;
    int stratum_id;
  };
  std::vector<Sample> samples;
  double incidence_residual = 0.0;
  bool trivalent = false;  // primitive stratum directions sum to zero
};

// Maps the model's singular strata through nu and verifies the stated
// incidence pattern: 1-dim stabilizers land on {nu_1 = nu_2 = 0} lines or on
// the three signed rays, 2-dim stabilizers at the origin.
inline SingularImage singular_image(const MomentChart& c, const ModelInstance& m,
                                    int per_stratum = 24, std::uint64_t seed = 5) {
  SingularImage out;
  std::map<int, Vec3> ray_dir;  // stratum id -> mean image direction
  for (std::size_t sid = 0; sid < m.strata.size(); ++sid) {
    const auto& st = m.strata[sid];
    Vec3 dir = Vec3::Zero();
    for (const Vec& p : st.samples(per_stratum, seed + sid)) {
      StabilizerSample stab = stabilizer_at(m, p);
      const int sdim = 3 - stab.rank;
      if (sdim != st.stabilizer_dim) continue;  // sampler drifted off stratum
      const Vec3 nu = c.nu(p);
      out.samples.push_back({nu, sdim, int(sid)});
      if (sdim == 1) dir += nu;
      if (sdim == 2)
        out.incidence_residual = std::max(out.incidence_residual, nu.cwiseAbs().maxCoeff());
    }
    if (st.stabilizer_dim == 1 && dir.norm() > 0) ray_dir[int(sid)] = dir;
  }

  // incidence: each 1-dim-stabilizer sample lies on the half-line of its
  // stratum's image direction
  for (const auto& s : out.samples) {
    if (s.stabilizer_dim != 1) continue;
    auto it = ray_dir.find(s.stratum_id);
    if (it == ray_dir.end()) continue;
    const Vec3 dn = it->second.normalized();
    const double along = s.nu.dot(dn);
    const Vec3 off = s.nu - along * dn;
    out.incidence_residual = std::max(out.incidence_residual, off.norm());
    if (along < 0) out.incidence_residual = std::max(out.incidence_residual, -along);
  }

  // trivalent: primitive integer directions of the rays sum to zero
  if (ray_dir.size() == 3) {
    Vec3 total = Vec3::Zero();
    bool integral = true;
    for (const auto& [sid, d] : ray_dir) {
      Vec3 p = d / d.cwiseAbs().maxCoeff();
      Vec3 r;
      for (int i = 0; i < 3; ++i) r[i] = std::round(p[i]);
      if ((p - r).cwiseAbs().maxCoeff() > 1e-6) integral = false;
      total += r;
    }
    out.trivalent = integral && total.cwiseAbs().maxCoeff() < 1e-12;
  }
  return out;
}

inline void write_csv(std::ostream& os, const SingularImage& img) {
  os << "x,y,z,stratum\n";
  for (const auto& s : img.samples)
    os << s.nu[0] << ',' << s.nu[1] << ',' << s.nu[2] << ',' << s.stabilizer_dim << '\n';
}

}  // namespace g2kit
