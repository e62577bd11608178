#pragma once

#include "sublorentz/heisenberg.hpp"
#include "sublorentz/integrator.hpp"
#include "sublorentz/quaternion.hpp"
#include "sublorentz/reachable.hpp"

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace sublorentz {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Numeric table with a fixed header, emitted as CSV or JSON.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::string csv() const;
  json to_json() const;
};

/// t,x,y,z,xdot,ydot,speed where speed is Q(c', c').
Table path_table(const HeisPath& path);
/// t,x1,x2,x3,x4,z1,z2,z3,speed.
Table path_table(const QuatPath& path);

json to_json(const CausalClass& c);
json to_json(const TargetClass& c);
json to_json(const IdentityReport& r);
json to_json(const InclusionReport& r);
json to_json(const ConservationReport& r);
json to_json(const QuatPointd& p);
json to_json(const HeisPointd& p);

/// Serialized JSON with a trailing newline; key order is insertion order so
/// output is byte-stable.
std::string dump(const json& j);

/// Writes to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& content);

}  // namespace sublorentz
