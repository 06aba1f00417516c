// Command-line front end: model construction, verification suites,
// classification runs, moment maps, and report handling.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "g2kit/verify.hpp"

using namespace g2kit;

namespace {

using Clock = std::chrono::steady_clock;

std::array<std::array<long long, 7>, 3> parse_pi(const std::string& s) {
  std::array<std::array<long long, 7>, 3> rows{};
  std::stringstream ss(s);
  std::string row;
  int r = 0;
  while (std::getline(ss, row, ';')) {
    if (r >= 3) throw Error("--pi: expected exactly three rows");
    std::stringstream rs(row);
    std::string cell;
    int c = 0;
    while (std::getline(rs, cell, ',')) {
      if (c >= 7) throw Error("--pi: expected seven entries per row");
      rows[r][c++] = std::stoll(cell);
    }
    if (c != 7) throw Error("--pi: expected seven entries per row");
    ++r;
  }
  if (r != 3) throw Error("--pi: expected exactly three rows");
  return rows;
}

Vec parse_coords(const std::string& s, int want = 7) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  if (static_cast<int>(vals.size()) != want)
    throw Error("expected " + std::to_string(want) + " coordinates");
  Vec v(want);
  for (int i = 0; i < want; ++i) v[i] = vals[i];
  return v;
}

std::array<std::function<double(double, double)>, 3> default_f(double eps) {
  auto f = [eps](double s, double y) { return std::exp(eps * std::sin(s + y)); };
  return {f, f, f};
}

ModelInstance make_model(const std::string& name, const std::string& pi, double a, int grid,
                         double eps) {
  if (name == "flat_quotient") {
    if (pi.empty()) throw Error("flat_quotient needs --pi \"r1;r2;r3\"");
    return flat_quotient(parse_pi(pi));
  }
  if (name == "product_t3_standard") return product_t3_standard(torus(4, grid));
  if (name == "t4_diagonal") return t4_diagonal(a, default_f(eps), grid);
  if (name == "type1_constant") {
    auto A_at = [](const Vec&) { return Mat3(Mat3::Identity()); };
    auto cf_at = [](const Vec&) { return Mat(Mat::Identity(4, 4)); };
    return type1_family(a, torus(4, grid), A_at, cf_at, "type1_constant");
  }
  if (name == "flat_s1_c3") return flat_s1_c3();
  if (name == "flat_t2_r_c2") return flat_t2_r_c2();
  if (name == "z2_quotient") return z2_quotient_example();
  throw Error("unknown model: " + name +
              " (known: flat_quotient, product_t3_standard, t4_diagonal, type1_constant, "
              "flat_s1_c3, flat_t2_r_c2, z2_quotient)");
}

// Model wrapper around an invariant-form field file: phi is looked up at the
// nearest grid point, generators are the theta translations.
ModelInstance file_model(const std::string& path) {
  FieldFile ff = read_field_file(path);
  if (!ff.invariant) throw IoError("classify --in: expected an invariant_form file");
  auto inv = std::make_shared<InvariantForm>(std::move(*ff.invariant));
  if (inv->total_degree != 3) throw IoError("classify --in: expected a 3-form");
  const Domain base = inv->base;
  ModelInstance m;
  m.name = "file:" + path;
  auto nearest = [base](const Vec& x) {
    int idx[kMaxDim];
    for (int a = 0; a < base.dim(); ++a) {
      const auto& ax = base.axes[a];
      int i = int(std::lround((x[a] - ax.lo) / ax.step()));
      if (ax.periodic) i = ((i % ax.n) + ax.n) % ax.n;
      idx[a] = std::clamp(i, 0, ax.n - 1);
    }
    return base.flatten(idx);
  };
  m.phi_at = [inv, nearest](const Vec& x) { return inv->at(nearest(x)); };
  m.starphi_at = [phi = m.phi_at](const Vec& x) { return metric_from_3form(phi(x)).starphi; };
  for (int i = 0; i < 3; ++i)
    m.generators[i] = AffineField::constant(Vec::Unit(7, base.dim() + i));
  m.samples = [base](int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec> out;
    for (int t = 0; t < n; ++t) {
      Vec x = Vec::Zero(7);
      const std::size_t p = rng() % base.npoints();
      x.head(base.dim()) = base.point(p);
      out.push_back(x);
    }
    return out;
  };
  ModelInstance::InvariantRep rep;
  rep.base = base;
  rep.metric = [phi = m.phi_at](const Vec& xb) {
    Vec x = Vec::Zero(7);
    x.head(xb.size()) = xb;
    return metric_from_3form(phi(x)).g.g;
  };
  m.invariant = rep;
  return m;
}

json report_from_reduction(const ReductionReport& r) {
  json res;
  for (const auto& [k, v] : r.residuals) res[k] = v;
  json stabs = json::array();
  for (const auto& s : r.stabilizer_samples) {
    json pt = json::array();
    for (int i = 0; i < s.point.size(); ++i) pt.push_back(s.point[i]);
    stabs.push_back({{"point", pt}, {"rank", s.rank}, {"finite_order", s.finite_order}});
  }
  return json{{"orbit_type", r.orbit_type},
              {"a", r.a},
              {"det_B", r.det_B},
              {"residuals", res},
              {"stabilizer_samples", stabs}};
}

int emit_report(Report& rep, const std::string& out_path) {
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    os << rep.to_json().dump(2) << '\n';
  }
  for (const auto& c : rep.checks)
    std::printf("[%s] %-36s residual %.3e  tol %.0e   (%s)\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.residual, c.tolerance, c.anchor.c_str());
  if (const CheckRecord* f = rep.first_failure()) {
    std::printf("FIRST FAILURE: %s  residual %.6e vs tol %.1e  [%s]\n", f->name.c_str(),
                f->residual, f->tolerance, f->anchor.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"g2kit: torus-symmetric G2 structures and hypersymplectic reduction"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  bool seeded = false;
  app.add_option_function<std::uint64_t>(
         "--seed",
         [&](std::uint64_t v) {
           seed = v;
           seeded = true;
         },
         "seed for all random sampling (makes reports reproducible)")
      ->expected(1);

  std::string model_name, pi_spec, in_path, out_path;
  double model_a = 0.5, model_eps = 0.1;
  int grid = 48;

  auto add_model_opts = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_name, "model name");
    cmd->add_option("--pi", pi_spec, "integer 3-plane rows \"r1;r2;r3\" (flat_quotient)");
    cmd->add_option("--a", model_a, "constant a in (0,1) for the closed family");
    cmd->add_option("--eps", model_eps, "amplitude of the diagonal-family functions");
    cmd->add_option("--grid", grid, "base grid per axis");
  };

  auto* construct = app.add_subcommand("construct", "sample a model's form to a field file");
  add_model_opts(construct);
  construct->add_option("--out", out_path, "output field file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite,
                         "pointwise | stars | models | reduction | moments | all");
  verify_cmd->add_option("--grid", grid, "grid for the large field checks");
  verify_cmd->add_option("--out", out_path, "write the report JSON here");

  auto* classify_cmd = app.add_subcommand("classify", "classify a torus action");
  add_model_opts(classify_cmd);
  classify_cmd->add_option("--in", in_path, "invariant-form field file");
  std::string generators = "theta";
  classify_cmd->add_option("--generators", generators,
                           "generator spec; \"theta\" = torus translations (default)");
  classify_cmd->add_option("--out", out_path, "write the report JSON here");
  int nsamples = 64;
  classify_cmd->add_option("--samples", nsamples, "number of principal-orbit samples");

  auto* reduce_cmd = app.add_subcommand("reduce", "full reduction report with quotient data");
  add_model_opts(reduce_cmd);
  reduce_cmd->add_option("--out", out_path, "write the report JSON here");

  auto* moment_cmd = app.add_subcommand("moment", "moment chart and singular image");
  add_model_opts(moment_cmd);
  std::string base_coords = "0,0,0,0,0,0,0";
  std::string csv_path;
  moment_cmd->add_option("--base", base_coords, "chart base point (7 coordinates)");
  moment_cmd->add_option("--csv", csv_path, "write the singular-image CSV here");
  moment_cmd->add_option("--out", out_path, "write the report JSON here");

  auto* report_cmd = app.add_subcommand("report", "re-validate a stored report");
  report_cmd->add_option("--in", in_path, "report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto t0 = Clock::now();
  try {
    if (construct->parsed()) {
      ModelInstance m = make_model(model_name, pi_spec, model_a, grid, model_eps);
      if (!m.invariant)
        throw Error("construct: model '" + m.name +
                    "' has no base-grid field representation; use classify or moment");
      InvariantForm phi = sample_invariant(m.invariant->base, 3, m.phi_at);
      write_invariant(out_path, phi);
      std::printf("wrote %s (%s over %d^%d)\n", out_path.c_str(), m.name.c_str(),
                  m.invariant->base.axes[0].n, m.invariant->base.dim());
      return 0;
    }

    if (verify_cmd->parsed()) {
      verify::Options opt;
      opt.seed = seeded ? seed : 1;
      opt.big_grid = grid;
      Report rep;
      rep.seed = seed;
      rep.seeded = seeded;
      rep.model = json{{"suite", suite}, {"grid", grid}};
      rep.checks = verify::run_suite(suite, opt);
      rep.timing_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
      const int rc = emit_report(rep, out_path);
      std::printf("suite %s: %zu checks, %s (%.1f s)\n", suite.c_str(), rep.checks.size(),
                  rc == 0 ? "all passed" : "FAILURES", 1e-3 * rep.timing_ms);
      return rc;
    }

    if (classify_cmd->parsed() || reduce_cmd->parsed()) {
      if (generators != "theta")
        throw Error("classify: only the \"theta\" generator spec is supported");
      ModelInstance m = in_path.empty() ? make_model(model_name, pi_spec, model_a,
                                                     std::min(grid, 16), model_eps)
                                        : file_model(in_path);
      ReductionReport r = classify_action(m, nsamples, seeded ? seed : 1);
      json j = report_from_reduction(r);
      j["model"] = m.name;
      if (reduce_cmd->parsed() && (r.orbit_type == 1 || r.orbit_type == 2) && m.invariant) {
        QuotientTriple q = quotient_triple(r);
        TripleFlags flags = classify_triple(q.triple);
        j["quotient"] = {{"wedge_residual", q.wedge_residual},
                         {"closed", flags.closed},
                         {"hypersymplectic", flags.hypersymplectic},
                         {"hyperkahler", flags.hyperkahler},
                         {"torsion_free", flags.torsion_free},
                         {"residuals", flags.residuals}};
        if (r.orbit_type == 1) {
          auto checks = type1_field_checks(m);
          json fc;
          for (const auto& [k, v] : checks) fc[k] = v;
          j["field_checks"] = fc;
        }
      }
      const std::string text = j.dump(2);
      if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << text << '\n';
      }
      std::cout << text << '\n';
      return 0;
    }

    if (moment_cmd->parsed()) {
      ModelInstance m = make_model(model_name, pi_spec, model_a, grid, model_eps);
      Vec p0 = parse_coords(base_coords);
      MomentChart c = build_moment_chart(m, p0, 12, seeded ? seed : 1);
      SingularImage img = singular_image(c, m, 24, (seeded ? seed : 1) + 4);
      json samples = json::array();
      for (const Vec& q : m.samples(32, seeded ? seed : 1)) {
        const Vec3 nu = c.nu(q);
        samples.push_back({{"nu", {nu[0], nu[1], nu[2]}}});
      }
      json j{{"model", m.name},
             {"loop_residual", c.loop_residual},
             {"nu_samples", samples},
             {"singular_points", img.samples.size()},
             {"incidence_residual", img.incidence_residual},
             {"trivalent", img.trivalent}};
      if (!csv_path.empty()) {
        std::ofstream os(csv_path);
        write_csv(os, img);
      }
      const std::string text = j.dump(2);
      if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << text << '\n';
      }
      std::cout << text << '\n';
      return 0;
    }

    if (report_cmd->parsed()) {
      std::ifstream is(in_path);
      if (!is) throw IoError("cannot open " + in_path);
      json j = json::parse(is);
      Report rep = Report::from_json(j);
      return emit_report(rep, "");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
