#include "sublorentz/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace sublorentz {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) v = 0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != header.size()) throw std::invalid_argument("table: row width does not match header");
  rows.push_back(std::move(row));
}

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

json Table::to_json() const { return json{{"columns", header}, {"rows", rows}}; }

Table path_table(const HeisPath& path) {
  Table t{{"t", "x", "y", "z", "xdot", "ydot", "speed"}, {}};
  for (const auto& s : path.samples)
    t.add_row({s.t, s.point.x(0), s.point.x(1), s.point.z(0), s.velocity(0), s.velocity(1),
               q_form(s.velocity, s.velocity)});
  return t;
}

Table path_table(const QuatPath& path) {
  Table t{{"t", "x1", "x2", "x3", "x4", "z1", "z2", "z3", "speed"}, {}};
  for (const auto& s : path.samples)
    t.add_row({s.t, s.point.x(0), s.point.x(1), s.point.x(2), s.point.x(3), s.point.z(0), s.point.z(1),
               s.point.z(2), q_form(s.velocity, s.velocity)});
  return t;
}

json to_json(const CausalClass& c) {
  return json{{"kind", to_string(c.kind)}, {"orientation", to_string(c.orientation)}};
}

json to_json(const TargetClass& c) {
  return json{{"kind", to_string(c.kind)}, {"orientation", to_string(c.orientation)}};
}

json to_json(const IdentityReport& r) {
  return json{{"name", r.name},         {"lhs", r.lhs},           {"rhs", r.rhs},
              {"residual", r.residual}, {"scale", r.scale},       {"relative", r.relative()},
              {"asserted", r.asserted}, {"v0", r.v0},             {"theta", r.theta},
              {"t", r.t}};
}

json to_json(const QuatPointd& p) {
  return json{{"x", std::vector<double>(p.x.data(), p.x.data() + 4)},
              {"z", std::vector<double>(p.z.data(), p.z.data() + 3)}};
}

json to_json(const HeisPointd& p) {
  return json{{"x", p.x(0)}, {"y", p.x(1)}, {"z", p.z(0)}};
}

json to_json(const InclusionReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back(json{{"index", x.index}, {"reason", x.reason}, {"endpoint", to_json(x.endpoint)}});
  return json{{"region", to_string(r.region)},
              {"mode", r.mode == InclusionMode::Strict ? "strict" : "closure"},
              {"count", r.count},
              {"in_a_region", r.in_a_region},
              {"violations", v},
              {"max_eta_increase", r.max_eta_increase},
              {"max_cone_deficit", r.max_cone_deficit},
              {"max_defect", r.max_defect}};
}

json to_json(const ConservationReport& r) {
  return json{{"h_drift", r.h_drift}, {"theta_drift", r.theta_drift}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace sublorentz
