#pragma once

// Field-level torus reduction: orbit-type classification over sampled
// points, quotient hypersymplectic triples for Types 1 and 2, leaf triples
// for Type 3, and the covariance under integer changes of generators.

#include <memory>

#include "g2kit/fieldtriple.hpp"
#include "g2kit/models.hpp"

namespace g2kit {

inline constexpr double kIsotropicTol = 1e-10;
inline constexpr double kConstancyTol = 1e-8;
inline constexpr double kRankTol = 1e-9;

struct StabilizerSample {
  Vec point;
  int rank = 3;         // rank of {U_1, U_2, U_3} at the point
  int finite_order = 1; // order of the finite stabilizer on the principal part
};

struct ReductionReport {
  std::shared_ptr<const ModelInstance> model;
  int orbit_type = 0;
  double a = 0.0;                 // constant for Types 1 and 2 (signed)
  double det_B = 0.0;             // constant for Type 2
  std::vector<Vec> sample_points;
  std::vector<double> a_samples;
  std::vector<Mat3> A_samples;
  std::map<std::string, double> residuals;
  std::vector<StabilizerSample> stabilizer_samples;
};

inline StabilizerSample stabilizer_at(const ModelInstance& m, const Vec& p) {
  Mat u(7, 3);
  for (int i = 0; i < 3; ++i) u.col(i) = m.generator_at(i, p);
  Eigen::JacobiSVD<Mat> svd(u);
  int rank = 0;
  for (int i = 0; i < 3; ++i)
    if (svd.singularValues()[i] > kRankTol) ++rank;
  return StabilizerSample{p, rank, m.finite_stabilizer(p)};
}

// Runs the point reduction over the model's sample set, decides the orbit
// type, and verifies the constancy constraints the closed case imposes.
inline ReductionReport classify_action(const ModelInstance& m, int nsamples = 160,
                                       std::uint64_t seed = 1,
                                       const std::vector<Vec>& probes = {}) {
  ReductionReport r;
  r.model = std::make_shared<ModelInstance>(m);
  r.sample_points = m.samples(nsamples, seed);

  double recon = 0.0;
  double max_phiU = 0.0;
  std::vector<int> types;
  std::vector<double> detBs;
  for (const Vec& p : r.sample_points) {
    const G2Point gp = metric_from_3form(m.phi_at(p));
    const PointReduction pr =
        point_reduce(gp, m.generator_at(0, p), m.generator_at(1, p), m.generator_at(2, p));
    r.a_samples.push_back(pr.a);
    r.A_samples.push_back(pr.A);
    detBs.push_back(pr.B.determinant());
    max_phiU = std::max(max_phiU, std::abs(pr.phi_U));
    int type;
    if (std::abs(pr.phi_U) < kIsotropicTol)
      type = 3;
    else if (std::abs(std::abs(pr.a) - 1.0) < kNearAssociativeTol)
      type = 2;
    else
      type = 1;
    types.push_back(type);
    if (type == 2)
      recon = std::max(recon, (reconstruct_associative(pr) - gp.phi).max_abs());
    else
      recon = std::max(recon, (reconstruct(pr).phi - gp.phi).max_abs());
  }
  for (std::size_t i = 1; i < types.size(); ++i)
    if (types[i] != types[0])
      throw MixedType("classify_action: mixed orbit types at samples 0 and " + std::to_string(i));
  r.orbit_type = types.empty() ? 0 : types[0];
  r.residuals["reconstruction"] = recon;

  double a_lo = r.a_samples[0], a_hi = a_lo;
  double b_lo = detBs[0], b_hi = b_lo;
  for (std::size_t i = 0; i < r.a_samples.size(); ++i) {
    a_lo = std::min(a_lo, r.a_samples[i]);
    a_hi = std::max(a_hi, r.a_samples[i]);
    b_lo = std::min(b_lo, detBs[i]);
    b_hi = std::max(b_hi, detBs[i]);
  }
  r.residuals["a_variation"] = a_hi - a_lo;
  r.residuals["detB_variation"] = b_hi - b_lo;
  if (r.orbit_type == 1 && (a_hi - a_lo) > kConstancyTol) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < r.a_samples.size(); ++i)
      if (std::abs(r.a_samples[i] - r.a_samples[0]) > kConstancyTol) w = i;
    throw MixedType("classify_action: a is not constant (witness samples 0 and " +
                    std::to_string(w) + ")");
  }
  if (r.orbit_type == 2 && (b_hi - b_lo) > kConstancyTol)
    throw MixedType("classify_action: det B is not constant for the associative type");
  r.a = r.a_samples[0];
  r.det_B = detBs[0];
  if (r.orbit_type == 3) r.residuals["phi_U_sup"] = max_phiU;

  for (const Vec& p : probes) r.stabilizer_samples.push_back(stabilizer_at(m, p));
  for (int i = 0; i < std::min<int>(8, int(r.sample_points.size())); ++i)
    r.stabilizer_samples.push_back(stabilizer_at(m, r.sample_points[i]));

  // invariant models: spectral closedness residuals of the connection data
  if (m.invariant) {
    const Domain& base = m.invariant->base;
    DomainDerivs ops(base);
    InvariantForm phi = sample_invariant(base, 3, m.phi_at);
    r.residuals["d_phi"] = ext_d(phi, ops).sup_norm();
    // theta^i from the metric: theta^i = A^{ij} (U_j)^flat, as invariant 1-forms
    InvariantForm theta[3] = {InvariantForm(base, 1), InvariantForm(base, 1),
                              InvariantForm(base, 1)};
    const std::size_t np = base.npoints();
    for (int i = 0; i < 3; ++i) {
      theta[i].sector(0);
      theta[i].sector(1);
      theta[i].sector(2);
      theta[i].sector(4);
    }
    parallel_for(np, [&](std::size_t b, std::size_t e) {
      for (std::size_t p = b; p < e; ++p) {
        const Vec x = base.point(p);
        const Mat g = m.invariant->metric(x);
        Mat3 A;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) A(i, j) = g(4 + i, 4 + j);
        const Mat3 Ainv = A.inverse();
        for (int i = 0; i < 3; ++i) {
          KForm th(7, 1);
          for (int j = 0; j < 3; ++j)
            for (int c = 0; c < 7; ++c) th[c] += Ainv(i, j) * g(4 + j, c);
          theta[i].set(p, th);
        }
      }
    });
    double dth = 0.0;
    for (int i = 0; i < 3; ++i) dth = std::max(dth, ext_d(theta[i], ops).sup_norm());
    r.residuals["d_theta"] = dth;
  }
  return r;
}

// Field residuals of the Type-1 closedness system over the invariant base:
// d theta^i, d alpha_i, d alpha-hat_i, the coefficient system
// d(sum_i A_ik beta ^ alhat_i) per k, and d phi itself.
inline std::map<std::string, double> type1_field_checks(const ModelInstance& m) {
  if (!m.invariant) throw WrongType("type1_field_checks: model has no invariant base");
  const Domain& base = m.invariant->base;
  DomainDerivs ops(base);
  std::map<std::string, double> out;

  InvariantForm phi = sample_invariant(base, 3, m.phi_at);
  out["d_phi"] = ext_d(phi, ops).sup_norm();
  InvariantForm sphi = sample_invariant(base, 4, m.starphi_at);
  out["d_star_phi"] = ext_d(sphi, ops).sup_norm();

  // alpha_i = 1/2 eps_i^{jk} U_jk . phi as invariant 1-forms
  std::array<InvariantForm, 3> alpha;
  for (int i = 0; i < 3; ++i) {
    InvariantForm acc(base, 1);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int s = eps3(i, j, k);
        if (!s) continue;
        InvariantForm c = contract_theta(contract_theta(phi, j), k);
        for (int sm = 0; sm < 8; ++sm)
          if (c.sectors[sm]) {
            FormField f = *c.sectors[sm];
            f *= 0.5 * s;
            acc.sector(std::uint8_t(sm)) += f;
          }
      }
    alpha[i] = acc;
  }
  double dal = 0.0;
  for (int i = 0; i < 3; ++i) dal = std::max(dal, ext_d(alpha[i], ops).sup_norm());
  out["d_alpha"] = dal;

  // alpha-hat_i = alpha_i - a theta^i: drop the theta sectors (they carry
  // exactly the a delta_ij coefficient), keep the base sector
  std::array<FormField, 3> alhat{FormField(base, 1), FormField(base, 1), FormField(base, 1)};
  for (int i = 0; i < 3; ++i)
    if (alpha[i].sectors[0]) alhat[i] = *alpha[i].sectors[0];
  double dalh = 0.0;
  for (int i = 0; i < 3; ++i) dalh = std::max(dalh, ext_d(alhat[i], ops).sup_norm());
  out["d_alpha_hat"] = dalh;

  // beta = U_123 . *phi (base sector of the triple contraction)
  InvariantForm beta_i = contract_theta(contract_theta(contract_theta(sphi, 0), 1), 2);
  FormField beta = beta_i.sectors[0] ? *beta_i.sectors[0] : FormField(base, 1);

  // coefficient system: d(sum_i A_ik beta ^ alhat_i) = 0 for each k
  const std::size_t np = base.npoints();
  double eq = 0.0;
  for (int k = 0; k < 3; ++k) {
    FormField xi(base, 2);
    parallel_for(np, [&](std::size_t b, std::size_t e) {
      for (std::size_t p = b; p < e; ++p) {
        const Mat g = m.invariant->metric(base.point(p));
        Mat3 A;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) A(r, c) = g(4 + r, 4 + c);
        KForm acc(base.dim(), 2);
        for (int i = 0; i < 3; ++i)
          acc += A(i, k) * wedge(beta.at(p), alhat[i].at(p));
        xi.set(p, acc);
      }
    });
    eq = std::max(eq, ext_d(xi, ops).sup_norm());
  }
  out["coefficient_system"] = eq;
  return out;
}

// Quotient triple on the invariant base for Types 1 and 2; verifies the
// wedge relation omega_i ^ omega_j = 2 A_ij mu as it is built.
struct QuotientTriple {
  HSTripleField triple;
  FormField mu;                 // reference volume used in the wedge relation
  std::function<Mat3(const Vec&)> A_at;
  double wedge_residual = 0.0;  // sup |omega_i ^ omega_j - 2 A_ij mu|
  std::array<FormField, 3> alpha_hat;  // Type 1 base coframe parts
  FormField beta;
};

inline QuotientTriple quotient_triple(const ReductionReport& r) {
  const ModelInstance& m = *r.model;
  if (r.orbit_type != 1 && r.orbit_type != 2)
    throw WrongType("quotient_triple: need an orbit of Type 1 or 2");
  if (!m.invariant)
    throw WrongType("quotient_triple: model carries no invariant base representation");
  const Domain& base = m.invariant->base;
  const std::size_t np = base.npoints();

  // det B = 1 normalization scale for the generators (classify_action has
  // already verified the constancy)
  const double s = std::pow(std::abs(r.det_B), 1.0 / 3.0);

  QuotientTriple out{HSTripleField{base, {FormField(base, 2), FormField(base, 2),
                                          FormField(base, 2)}},
                     FormField(base, 4),
                     {},
                     0.0,
                     {FormField(base, 1), FormField(base, 1), FormField(base, 1)},
                     FormField(base, 1)};

  std::vector<Mat3> Afield(np);
  std::mutex mu_guard;
  double wres = 0.0;
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    double local_wres = 0.0;
    for (std::size_t p = b; p < e; ++p) {
      Vec x = Vec::Zero(7);
      x.head(base.dim()) = base.point(p);
      const G2Point gp = metric_from_3form(m.phi_at(x));
      const PointReduction pr = point_reduce(gp, s * m.generator_at(0, x),
                                             s * m.generator_at(1, x), s * m.generator_at(2, x));
      Afield[p] = pr.A;
      std::array<KForm, 3> om;
      KForm mu_pt(7, 4);
      if (r.orbit_type == 1) {
        const double b2 = pr.b * pr.b;
        std::array<KForm, 3> alhat;
        for (int i = 0; i < 3; ++i) {
          alhat[i] = pr.alpha[i];
          alhat[i] -= pr.a * pr.theta[i];
        }
        for (int i = 0; i < 3; ++i) {
          KForm f(7, 2);
          for (int j = 0; j < 3; ++j) f += (pr.A(i, j) / b2) * wedge(alhat[j], pr.beta);
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
              const int e3 = eps3(i, k, l);
              if (e3) f += (0.5 * e3 / b2) * wedge(alhat[k], alhat[l]);
            }
          om[i] = f;
        }
        mu_pt = (1.0 / (b2 * b2)) * wedge(wedge(alhat[0], alhat[1]), wedge(alhat[2], pr.beta));
        for (int i = 0; i < 3; ++i) {
          KForm a4 = alhat[i];
          for (int c = 0; c < 4; ++c) out.alpha_hat[i].comp(c)[p] = a4[c];
        }
        for (int c = 0; c < 4; ++c) out.beta.comp(c)[p] = pr.beta[c];
      } else {
        const Mat3 Binv = pr.B.inverse();
        for (int i = 0; i < 3; ++i) {
          KForm f(7, 2);
          for (int j = 0; j < 3; ++j) f += Binv(i, j) * pr.omega[j];
          om[i] = f;
        }
        // mu = *phi + 1/2 eps_ij^k e^ij ^ omega_k
        mu_pt = gp.starphi;
        const Mat3 Binv2 = pr.B.inverse();
        std::array<KForm, 3> eup;
        for (int i = 0; i < 3; ++i) {
          KForm f(7, 1);
          for (int j = 0; j < 3; ++j) f += Binv2(i, j) * pr.theta[j];
          eup[i] = f;
        }
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
              const int e3 = eps3(i, j, k);
              if (e3) mu_pt += 0.5 * e3 * wedge(wedge(eup[i], eup[j]), pr.omega[k]);
            }
      }
      // store the base parts and check the wedge relation
      const auto& t2 = index_table(7, 2);
      const auto& t4b = index_table(base.dim(), 2);
      for (int i = 0; i < 3; ++i) {
        KForm check(7, 4);
        for (int c = 0; c < binomial(base.dim(), 2); ++c)
          out.triple.omega[i].comp(c)[p] = om[i][t2.rank_of_mask[t4b.masks[c]]];
        for (int j = 0; j < 3; ++j) {
          check = wedge(om[i], om[j]);
          check -= 2.0 * pr.A(i, j) * mu_pt;
          local_wres = std::max(local_wres, check.max_abs());
        }
      }
      out.mu.comp(0)[p] = mu_pt[index_table(7, 4).rank_of_mask[0b0001111]];
    }
    std::lock_guard<std::mutex> lock(mu_guard);
    wres = std::max(wres, local_wres);
  });
  out.wedge_residual = wres;
  out.A_at = [base, Afield = std::move(Afield)](const Vec& x) {
    // nearest-sample lookup; exact at grid points
    int idx[kMaxDim];
    Vec q = x;
    for (int a = 0; a < base.dim(); ++a) {
      const auto& ax = base.axes[a];
      double u = (q[a] - ax.lo) / ax.step();
      int i = int(std::lround(u));
      if (ax.periodic) i = ((i % ax.n) + ax.n) % ax.n;
      idx[a] = std::clamp(i, 0, ax.n - 1);
    }
    return Afield[base.flatten(idx)];
  };
  return out;
}

// Pulled-back leaf data for Type-3 flat models.
struct LeafData {
  LeafChart chart;
  std::array<FormField, 3> omega_hat;
  std::array<FormField, 3> theta_hat;
  FormField beta_hat;
  double d_omega_residual = 0.0;
  double intersection_residual = 0.0;  // vs 2 (adj B^2)_ij theta^123 ^ beta
  double phi_restriction = 0.0;
  double calibration_residual = 0.0;   // | |*phi(T)| - leaf volume |
};

inline LeafData leaf_triples(const ReductionReport& r, const Vec& through_point) {
  const ModelInstance& m = *r.model;
  if (r.orbit_type != 3) throw WrongType("leaf_triples: need an isotropic (Type 3) action");
  if (!m.leaf_chart_at) throw NonFlatLeaf("leaf_triples: model provides no flat leaf chart");
  LeafChart chart = m.leaf_chart_at(through_point);
  const Domain& q = chart.params;
  const std::size_t np = q.npoints();

  LeafData out{chart,
               {FormField(q, 2), FormField(q, 2), FormField(q, 2)},
               {FormField(q, 1), FormField(q, 1), FormField(q, 1)},
               FormField(q, 1)};

  std::mutex guard;
  double ires = 0.0, pres = 0.0, cres = 0.0;
  parallel_for(np, [&](std::size_t b, std::size_t e) {
    double li = 0.0, lp = 0.0, lc = 0.0;
    for (std::size_t pidx = b; pidx < e; ++pidx) {
      const Vec qq = q.point(pidx);
      const Vec x = chart.embed(qq);
      const Mat T = chart.tangent(qq);
      const G2Point gp = metric_from_3form(m.phi_at(x));
      const PointReduction pr =
          point_reduce(gp, m.generator_at(0, x), m.generator_at(1, x), m.generator_at(2, x));
      // dual basis of (alpha_1..3, beta, theta^1..3)
      Mat coframe(7, 7);
      for (int c = 0; c < 7; ++c) {
        for (int i = 0; i < 3; ++i) coframe(i, c) = pr.alpha[i][c];
        coframe(3, c) = pr.beta[c];
        for (int i = 0; i < 3; ++i) coframe(4 + i, c) = pr.theta[i][c];
      }
      const Mat dual = coframe.inverse();  // columns are the dual vectors
      for (int i = 0; i < 3; ++i) {
        const KForm om = interior(dual.col(i), gp.phi);
        out.omega_hat[i].set(pidx, pullback(om, T));
        out.theta_hat[i].set(pidx, pullback(pr.theta[i], T));
      }
      out.beta_hat.set(pidx, pullback(pr.beta, T));

      // intersection relation
      const Mat3 B2 = pr.B * pr.B;
      const Mat3 adjB2 = adjugate3(B2);
      KForm th123b = wedge(wedge(out.theta_hat[0].at(pidx), out.theta_hat[1].at(pidx)),
                           wedge(out.theta_hat[2].at(pidx), out.beta_hat.at(pidx)));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          KForm w = wedge(out.omega_hat[i].at(pidx), out.omega_hat[j].at(pidx));
          w -= 2.0 * adjB2(i, j) * th123b;
          li = std::max(li, w.max_abs());
        }
      // phi and *phi restricted to the leaf
      lp = std::max(lp, pullback(gp.phi, T).max_abs());
      const double spleaf = pullback(gp.starphi, T)[0];
      const Mat h = T.transpose() * gp.g.g * T;
      lc = std::max(lc, std::abs(std::abs(spleaf) - std::sqrt(h.determinant())));
    }
    std::lock_guard<std::mutex> lock(guard);
    ires = std::max(ires, li);
    pres = std::max(pres, lp);
    cres = std::max(cres, lc);
  });
  out.intersection_residual = ires;
  out.phi_restriction = pres;
  out.calibration_residual = cres;

  DomainDerivs ops(q);
  double dres = 0.0;
  for (int i = 0; i < 3; ++i)
    dres = std::max(dres, ext_d(out.omega_hat[i], ops).sup_norm());
  out.d_omega_residual = dres;
  return out;
}

// Change of generating basis U'_i = K_i^j U_j by an invertible integer
// matrix, applied through the displayed transformation laws.
inline PointReduction change_generators(const PointReduction& pr, const Mat3& K) {
  if (std::abs(K.determinant()) < 0.5) throw DependentGenerators("change_generators: singular K");
  const double detK = K.determinant();
  const Mat3 Kinv = K.inverse();
  PointReduction out = pr;
  out.A = K * pr.A * K.transpose();
  out.B = spd_invsqrt(SPD3(out.A)).m;
  out.phi_U = detK * pr.phi_U;
  out.a = out.phi_U * out.B.determinant();
  out.b = std::sqrt(std::max(0.0, 1.0 - out.a * out.a));
  for (int i = 0; i < 3; ++i) {
    KForm al(7, 1), th(7, 1);
    for (int p = 0; p < 3; ++p) {
      al += (detK * Kinv(p, i)) * pr.alpha[p];
      th += Kinv(p, i) * pr.theta[p];
    }
    out.alpha[i] = al;
    out.theta[i] = th;
  }
  out.beta = detK * pr.beta;
  // omega is frame data; callers needing it after a change of generators
  // recompute through point_reduce
  return out;
}

inline LeafData change_generators(const LeafData& d, const Mat3& K) {
  if (std::abs(K.determinant()) < 0.5) throw DependentGenerators("change_generators: singular K");
  const double detK = K.determinant();
  LeafData out = d;
  for (int i = 0; i < 3; ++i) {
    FormField f(d.chart.params, 2);
    for (int p = 0; p < 3; ++p) {
      FormField t = d.omega_hat[p];
      t *= K(i, p) / detK;
      f += t;
    }
    out.omega_hat[i] = f;
  }
  return out;
}

inline ReductionReport change_generators(const ReductionReport& r, const Mat3& K) {
  if (std::abs(K.determinant()) < 0.5) throw DependentGenerators("change_generators: singular K");
  ReductionReport out = r;
  const double sgn = K.determinant() > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < r.A_samples.size(); ++i) {
    out.A_samples[i] = K * r.A_samples[i] * K.transpose();
    out.a_samples[i] = sgn * r.a_samples[i];
  }
  out.a = sgn * r.a;
  out.det_B = r.det_B / std::abs(K.determinant());
  return out;
}

}  // namespace g2kit
