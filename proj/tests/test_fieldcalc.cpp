#include <catch2/catch_amalgamated.hpp>

#include "g2kit/curvature.hpp"
#include "g2kit/fieldops.hpp"
#include "test_helpers.hpp"

using namespace g2kit;

namespace {

// random trigonometric polynomial in `dim` periodic variables with
// frequencies below the Nyquist limit, plus its exact gradient
struct TrigPoly {
  struct Term {
    std::vector<int> k;
    double amp, phase;
  };
  std::vector<Term> terms;

  static TrigPoly random(std::mt19937_64& rng, int dim, int kmax, int nterms = 5) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    TrigPoly f;
    for (int t = 0; t < nterms; ++t) {
      Term tm;
      tm.k.resize(dim);
      for (int a = 0; a < dim; ++a) tm.k[a] = int(rng() % (2 * kmax + 1)) - kmax;
      tm.amp = U(rng);
      tm.phase = M_PI * U(rng);
      f.terms.push_back(tm);
    }
    return f;
  }
  double value(const Vec& x) const {
    double s = 0.0;
    for (const auto& t : terms) {
      double arg = t.phase;
      for (std::size_t a = 0; a < t.k.size(); ++a) arg += t.k[a] * x[a];
      s += t.amp * std::sin(arg);
    }
    return s;
  }
  double deriv(const Vec& x, int axis) const {
    double s = 0.0;
    for (const auto& t : terms) {
      double arg = t.phase;
      for (std::size_t a = 0; a < t.k.size(); ++a) arg += t.k[a] * x[a];
      s += t.amp * t.k[axis] * std::cos(arg);
    }
    return s;
  }
};

}  // namespace

TEST_CASE("spectral derivative is exact below Nyquist") {
  std::mt19937_64 rng(401);
  Domain dom = torus(2, 16);
  DomainDerivs ops(dom);
  for (int trial = 0; trial < 5; ++trial) {
    TrigPoly f = TrigPoly::random(rng, 2, 7);
    FormField u = sample_scalar(dom, [&](const Vec& x) { return f.value(x); });
    FormField du = ext_d(u, ops);
    double err = 0.0;
    for (std::size_t p = 0; p < dom.npoints(); ++p) {
      const Vec x = dom.point(p);
      err = std::max(err, std::abs(du.comp(0)[p] - f.deriv(x, 0)));
      err = std::max(err, std::abs(du.comp(1)[p] - f.deriv(x, 1)));
    }
    CHECK(err < 1e-11);
  }
}

TEST_CASE("d(sin(x) dy) = cos(x) dx dy on the 2-torus") {
  Domain dom = torus(2, 32);
  FormField f(dom, 1);
  for (std::size_t p = 0; p < dom.npoints(); ++p) f.comp(1)[p] = std::sin(dom.point(p)[0]);
  FormField df = ext_d(f);
  double err = 0.0;
  for (std::size_t p = 0; p < dom.npoints(); ++p)
    err = std::max(err, std::abs(df.comp(0)[p] - std::cos(dom.point(p)[0])));
  CHECK(err < 1e-12);
}

TEST_CASE("d of constant fields vanishes exactly") {
  Domain dom(std::vector<Axis>{periodic_axis(12), box_axis(12, 0.0, 1.0), periodic_axis(8)});
  FormField f(dom, 1);
  for (int c = 0; c < f.ncomps(); ++c)
    for (std::size_t p = 0; p < dom.npoints(); ++p) f.comp(c)[p] = 1.5 - 0.25 * c;
  CHECK(ext_d(f).sup_norm() == 0.0);
  CHECK_THROWS_AS(ext_d(FormField(dom, 3)), DegreeOverflow);
}

TEST_CASE("d of d vanishes to roundoff, including box boundaries") {
  std::mt19937_64 rng(402);
  Domain dom(std::vector<Axis>{periodic_axis(16), box_axis(16, -1.0, 1.0), periodic_axis(12)});
  DomainDerivs ops(dom);
  TrigPoly f = TrigPoly::random(rng, 3, 5);
  FormField u = sample_scalar(dom, [&](const Vec& x) {
    Vec y(3);
    y << x[0], 2.1 * x[1], x[2];
    return f.value(y);
  });
  FormField ddu = ext_d(ext_d(u, ops), ops);
  CHECK(ddu.sup_norm() < 1e-8);

  FormField w(dom, 1);
  std::normal_distribution<double> N(0.0, 1.0);
  for (auto& v : w.values) v = N(rng);
  CHECK(ext_d(ext_d(w, ops), ops).sup_norm() < 1e-9 * (1 + w.sup_norm()));
}

TEST_CASE("contraction basis case") {
  Domain dom = torus(2, 8);
  FormField dxdy(dom, 2);
  for (std::size_t p = 0; p < dom.npoints(); ++p) dxdy.comp(0)[p] = 1.0;
  AffineField ex = AffineField::constant(Vec::Unit(2, 0));
  FormField r = contract_field(dxdy, ex);
  for (std::size_t p = 0; p < dom.npoints(); ++p) {
    CHECK(r.comp(0)[p] == 0.0);
    CHECK(r.comp(1)[p] == 1.0);
  }
}

TEST_CASE("Cartan identity holds to roundoff for exactly-represented fields") {
  std::mt19937_64 rng(403);
  // T^1 x box: trig dependence on the circle, cubic polynomial on the box,
  // so every derivative in sight is exact for both kernels.
  Domain dom(std::vector<Axis>{periodic_axis(16), box_axis(16, -1.0, 1.0)});
  DomainDerivs ops(dom);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const double a0 = U(rng), a1 = U(rng), a2 = U(rng), a3 = U(rng);
    const int k = 1 + int(rng() % 5);
    auto f1 = [&](const Vec& x) {
      return std::sin(k * x[0] + a0) * (a1 + a2 * x[1] + a3 * x[1] * x[1] * x[1]);
    };
    FormField w(dom, 1);
    for (std::size_t p = 0; p < dom.npoints(); ++p) {
      const Vec x = dom.point(p);
      w.comp(0)[p] = f1(x);
      w.comp(1)[p] = std::cos(k * x[0]) * (1.0 + 0.5 * x[1] * x[1]);
    }
    // V: constant along the circle, affine in the box coordinate
    Mat M = Mat::Zero(2, 2);
    M(1, 1) = U(rng);
    Vec vc(2);
    vc << U(rng), U(rng);
    AffineField V{M, vc};

    FormField lhs = lie_derivative(w, V, ops);
    FormField rhs = ext_d(contract_field(w, V), ops) + contract_field(ext_d(w, ops), V);
    CHECK((lhs - rhs).sup_norm() < 1e-8 * (1.0 + w.sup_norm()));
  }
}

TEST_CASE("closed invariant forms contract to closed forms") {
  // alpha = df ^ dz + c dx^dy on T^3 with f = f(x,y), V = d/dz:
  // L_V alpha = 0, d alpha = 0, and d(V . alpha) = 0.
  std::mt19937_64 rng(404);
  Domain dom = torus(3, 16);
  DomainDerivs ops(dom);
  TrigPoly f = TrigPoly::random(rng, 2, 5);
  FormField scalar = sample_scalar(dom, [&](const Vec& x) {
    Vec xy(2);
    xy << x[0], x[1];
    return f.value(xy);
  });
  FormField df = ext_d(scalar, ops);
  FormField dz(dom, 1);
  for (std::size_t p = 0; p < dom.npoints(); ++p) dz.comp(2)[p] = 1.0;
  FormField alpha = wedge(df, dz);
  FormField dxdy(dom, 2);
  for (std::size_t p = 0; p < dom.npoints(); ++p)
    dxdy.comp(dxdy.table().rank_of_mask[0b011]) [p] = 0.75;
  alpha += dxdy;

  AffineField V = AffineField::constant(Vec::Unit(3, 2));
  CHECK(ext_d(alpha, ops).sup_norm() < 1e-10);
  CHECK(lie_derivative(alpha, V, ops).sup_norm() < 1e-10);
  CHECK(ext_d(contract_field(alpha, V), ops).sup_norm() < 1e-10);
}

TEST_CASE("curvature of flat metrics") {
  Domain dom = torus(2, 12);
  MetricField g(dom, 2);
  for (std::size_t p = 0; p < dom.npoints(); ++p) g.set(p, Mat::Identity(2, 2));
  CHECK(curvature_norm(g) < 1e-10);

  // constant 7x7 SPD metric over a small 4-torus
  std::mt19937_64 rng(405);
  Mat c = g2test::random_spd(rng, 7);
  Domain dom4 = torus(4, 8);
  MetricField g7(dom4, 7);
  for (std::size_t p = 0; p < dom4.npoints(); ++p) g7.set(p, c);
  CHECK(curvature_norm(g7) < 1e-10);
}

TEST_CASE("curvature of a round sphere chart") {
  // g = r^2 (dtheta^2 + sin^2(theta) dphi^2): sqrt(R_abcd R^abcd) = 2/r^2
  for (double r : {1.0, 2.0}) {
    Domain dom(std::vector<Axis>{box_axis(40, 0.5, M_PI - 0.5), box_axis(40, 0.0, 1.5)});
    double norm = curvature_norm(dom, 2, [&](const Vec& x) {
      Mat g = Mat::Zero(2, 2);
      g(0, 0) = r * r;
      g(1, 1) = r * r * std::sin(x[0]) * std::sin(x[0]);
      return g;
    });
    CHECK(std::abs(norm - 2.0 / (r * r)) < 0.02 * 2.0 / (r * r));
  }
}

TEST_CASE("curvature rejects non-SPD samples") {
  Domain dom = torus(2, 8);
  MetricField g(dom, 2);
  for (std::size_t p = 0; p < dom.npoints(); ++p) g.set(p, -Mat::Identity(2, 2));
  CHECK_THROWS_AS(curvature_norm(g), DegenerateMetric);
}

TEST_CASE("Monge-Ampere residual") {
  Domain box(std::vector<Axis>{box_axis(48, -1.0, 1.0), box_axis(48, -1.0, 1.0),
                               box_axis(48, -1.0, 1.0)});
  FormField u1 = sample_scalar(box, [](const Vec& x) {
    return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  });
  CHECK(monge_ampere_residual(u1) < 1e-10);

  FormField u2 = sample_scalar(box, [](const Vec& x) {
    return 0.5 * (4.0 * x[0] * x[0] + 0.5 * x[1] * x[1] + 0.5 * x[2] * x[2]);
  });
  CHECK(monge_ampere_residual(u2) < 1e-10);

  FormField u3 = sample_scalar(box, [](const Vec& x) {
    return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) + 0.1 * std::sin(x[0]);
  });
  CHECK(monge_ampere_residual(u3) > 0.05);
}
