#pragma once

// Field files and check reports. A field file is a single-line JSON header
// followed by a little-endian 64-bit float payload, row-major over the grid
// and then over components (lexicographic increasing multi-indices).

#include <fstream>
#include <nlohmann/json.hpp>

#include "g2kit/invariantform.hpp"

namespace g2kit {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

namespace detail {

inline void require_little_endian() {
  const std::uint16_t probe = 0x0102;
  if (*reinterpret_cast<const std::uint8_t*>(&probe) != 0x02)
    throw IoError("field files require a little-endian host");
}

inline json axes_json(const Domain& dom) {
  json axes = json::array();
  for (const auto& ax : dom.axes)
    axes.push_back({{"periodic", ax.periodic}, {"lo", ax.lo}, {"hi", ax.hi}, {"n", ax.n}});
  return axes;
}

inline Domain axes_from_json(const json& j) {
  std::vector<Axis> axes;
  for (const auto& a : j)
    axes.push_back(Axis{a.at("periodic").get<bool>(), a.at("lo").get<double>(),
                        a.at("hi").get<double>(), a.at("n").get<int>()});
  return Domain(std::move(axes));
}

// payload layout: for each grid point (row-major), the ncomps components
inline void write_point_major(std::ostream& os, const FormField& f) {
  const std::size_t np = f.npoints();
  const int nc = f.ncomps();
  std::vector<double> row(nc);
  for (std::size_t p = 0; p < np; ++p) {
    for (int c = 0; c < nc; ++c) row[c] = f.comp(c)[p];
    os.write(reinterpret_cast<const char*>(row.data()), nc * sizeof(double));
  }
}

inline void read_point_major(std::istream& is, FormField& f) {
  const std::size_t np = f.npoints();
  const int nc = f.ncomps();
  std::vector<double> row(nc);
  for (std::size_t p = 0; p < np; ++p) {
    is.read(reinterpret_cast<char*>(row.data()), nc * sizeof(double));
    if (!is) throw IoError("field file: truncated payload");
    for (int c = 0; c < nc; ++c) f.comp(c)[p] = row[c];
  }
}

}  // namespace detail

inline void write_field(std::ostream& os, const FormField& f) {
  detail::require_little_endian();
  json h{{"format", "g2kit-field"},
         {"version", 1},
         {"kind", "form_field"},
         {"dim", f.dom.dim()},
         {"degree", f.degree},
         {"axes", detail::axes_json(f.dom)},
         {"grid", [&] {
            json g = json::array();
            for (const auto& ax : f.dom.axes) g.push_back(ax.n);
            return g;
          }()},
         {"component_order", "lex_increasing_multi_indices"}};
  os << h.dump() << '\n';
  detail::write_point_major(os, f);
}

inline void write_field(const std::string& path, const FormField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path);
  write_field(os, f);
}

inline void write_invariant(std::ostream& os, const InvariantForm& f) {
  detail::require_little_endian();
  json sectors = json::array();
  for (int s = 0; s < 8; ++s) {
    if (!f.sectors[s]) continue;
    json th = json::array();
    for (int i = 0; i < 3; ++i)
      if (s & (1 << i)) th.push_back(i + 1);
    sectors.push_back({{"theta", th}, {"base_degree", f.sectors[s]->degree}});
  }
  json h{{"format", "g2kit-field"},
         {"version", 1},
         {"kind", "invariant_form"},
         {"dim", f.base.dim()},
         {"degree", f.total_degree},
         {"axes", detail::axes_json(f.base)},
         {"grid", [&] {
            json g = json::array();
            for (const auto& ax : f.base.axes) g.push_back(ax.n);
            return g;
          }()},
         {"component_order", "lex_increasing_multi_indices"},
         {"sectors", sectors}};
  os << h.dump() << '\n';
  for (int s = 0; s < 8; ++s)
    if (f.sectors[s]) detail::write_point_major(os, *f.sectors[s]);
}

inline void write_invariant(const std::string& path, const InvariantForm& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path);
  write_invariant(os, f);
}

struct FieldFile {
  json header;
  std::optional<FormField> field;
  std::optional<InvariantForm> invariant;
};

inline FieldFile read_field_file(std::istream& is) {
  detail::require_little_endian();
  std::string line;
  if (!std::getline(is, line)) throw IoError("field file: missing header");
  FieldFile out;
  out.header = json::parse(line);
  const Domain dom = detail::axes_from_json(out.header.at("axes"));
  const std::string kind = out.header.at("kind").get<std::string>();
  if (kind == "form_field") {
    FormField f(dom, out.header.at("degree").get<int>());
    detail::read_point_major(is, f);
    out.field = std::move(f);
  } else if (kind == "invariant_form") {
    InvariantForm f(dom, out.header.at("degree").get<int>());
    for (const auto& sec : out.header.at("sectors")) {
      std::uint8_t mask = 0;
      for (const auto& t : sec.at("theta")) mask |= std::uint8_t(1u << (t.get<int>() - 1));
      detail::read_point_major(is, f.sector(mask));
    }
    out.invariant = std::move(f);
  } else {
    throw IoError("field file: unknown kind " + kind);
  }
  return out;
}

inline FieldFile read_field_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return read_field_file(is);
}

// --- check reports ---------------------------------------------------------

struct CheckRecord {
  std::string name;
  std::string anchor;  // the identity the check verifies
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string tool = "g2kit";
  std::string version = kToolVersion;
  json model;  // descriptor of what was run
  std::uint64_t seed = 0;
  bool seeded = false;
  std::vector<CheckRecord> checks;
  long long timing_ms = 0;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckRecord* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }

  json to_json() const {
    json checks_j = json::array();
    for (const auto& c : checks)
      checks_j.push_back({{"name", c.name},
                          {"anchor", c.anchor},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    return json{{"tool", tool},
                {"version", version},
                {"model", model},
                {"seed", seed},
                {"checks", checks_j},
                // seeded runs zero the timing so reports are reproducible
                {"timing_ms", seeded ? 0 : timing_ms},
                {"pass", all_pass()}};
  }

  static Report from_json(const json& j) {
    Report r;
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.model = j.value("model", json());
    r.seed = j.value("seed", 0ull);
    r.timing_ms = j.value("timing_ms", 0ll);
    for (const auto& c : j.at("checks"))
      r.checks.push_back(CheckRecord{c.at("name").get<std::string>(),
                                     c.at("anchor").get<std::string>(),
                                     c.at("residual").get<double>(),
                                     c.at("tolerance").get<double>(),
                                     c.at("pass").get<bool>()});
    return r;
  }
};

}  // namespace g2kit
