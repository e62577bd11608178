#include "sublorentz/verify.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <numbers>

using namespace sublorentz;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string format = "csv";
  std::string output = "-";
  std::uint64_t seed = kDefaultSeed;
};

json envelope(const std::string& command) {
  return json{{"schema_version", kReportSchemaVersion}, {"command", command}};
}

void emit(const Common& c, const std::string& command, const Table& t, const json& meta = json::object()) {
  if (c.format == "csv") {
    write_output(c.output, t.csv());
    return;
  }
  json j = envelope(command);
  for (const auto& [k, v] : meta.items()) j[k] = v;
  j["table"] = t.to_json();
  write_output(c.output, dump(j));
}

template <int N>
Eigen::Matrix<double, N, 1> fixed(const std::vector<double>& v, const char* what) {
  if (v.size() != N)
    throw UsageError(std::string(what) + ": expected " + std::to_string(N) + " values, got " + std::to_string(v.size()));
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) {
    if (!std::isfinite(v[i])) throw UsageError(std::string(what) + ": values must be finite");
    out(i) = v[i];
  }
  return out;
}

// classify ------------------------------------------------------------------

struct ClassifyArgs {
  std::string group = "heis";
  std::vector<double> vector, target, point;
};

int run_classify(const Common& c, const ClassifyArgs& a) {
  const int given = !a.vector.empty() + !a.target.empty() + !a.point.empty();
  if (given != 1) throw UsageError("classify: give exactly one of --vector, --target, --point");
  json out = envelope("classify");
  out["group"] = a.group;
  if (!a.vector.empty()) {
    const CausalClass cls = a.group == "heis" ? classify_coeffs(fixed<2>(a.vector, "--vector"))
                                              : classify_coeffs(fixed<4>(a.vector, "--vector"));
    out["vector"] = a.vector;
    out["class"] = to_json(cls);
  } else if (!a.target.empty()) {
    if (a.group != "heis") throw UsageError("classify: --target is defined for the Heisenberg group only");
    const auto v = fixed<3>(a.target, "--target");
    out["target"] = a.target;
    out["class"] = to_json(classify_target(heis_point(v(0), v(1), v(2))));
  } else {
    if (a.group != "quat") throw UsageError("classify: --point is defined for the quaternion group only");
    const auto v = fixed<7>(a.point, "--point");
    const QuatPointd p = QuatPointd::from_coords(v);
    out["point"] = a.point;
    out["eta0"] = eta(0.0, p);
    out["in_gamma0"] = in_region(RegionId::gamma(EtaParams(0)), p);
  }
  write_output(c.output, dump(out));
  return 0;
}

// geodesic ------------------------------------------------------------------

struct ShootArgs {
  std::string group = "heis";
  std::vector<double> v0, theta;
  double t1 = 1;
  int samples = 101;
  std::string method = "closed";
  int steps = 1000;
  double tol = 1e-10;
};

int run_shoot(const Common& c, const ShootArgs& a) {
  IntegrationConfig cfg;
  if (a.method != "closed") {
    cfg.method = parse_method(a.method);
    cfg.t1 = a.t1;
    cfg.steps = a.steps;
    cfg.tol = a.tol;
    cfg.samples = a.samples;
    cfg.validate();
  }
  if (!(a.t1 > 0)) throw UsageError("shoot: --t1 must be positive");
  json meta{{"group", a.group}, {"method", a.method}};
  if (a.group == "heis") {
    const HeisIVP<double> ivp{fixed<2>(a.v0, "--v0"), fixed<1>(a.theta, "--theta")(0)};
    const HeisPath path = a.method == "closed"
                              ? sample_path(ivp, a.t1, a.samples)
                              : integrate(initial_covector<double, 2, 1>(ivp.v0, Eigen::Matrix<double, 1, 1>(ivp.theta)), cfg);
    if (a.method != "closed") meta["conservation"] = to_json(conservation_report(path));
    emit(c, "geodesic shoot", path_table(path), meta);
  } else {
    const QuatIVPd ivp{fixed<4>(a.v0, "--v0"), fixed<3>(a.theta, "--theta")};
    QuatPath path;
    if (a.method == "closed") {
      const auto cf = closed_form(ivp);
      meta["branch"] = to_string(cf.branch);
      path = sample_path(cf, a.t1, a.samples);
    } else {
      path = integrate(initial_covector<double, 4, 3>(ivp.v0, ivp.theta), cfg);
      meta["conservation"] = to_json(conservation_report(path));
    }
    emit(c, "geodesic shoot", path_table(path), meta);
  }
  return 0;
}

struct ConnectArgs {
  std::string group = "heis";
  std::vector<double> target;
  int samples = 101;
};

int run_connect(const Common& c, const ConnectArgs& a, const std::string& command = "geodesic connect") {
  if (a.group != "heis") throw UsageError("connect: two-point connection is available for the Heisenberg group only");
  if (a.samples < 2) throw UsageError("connect: --samples must be at least 2");
  const auto v = fixed<3>(a.target, "--target");
  const auto conn = connect(heis_point(v(0), v(1), v(2)), a.samples);
  const auto& p = conn.params;
  json meta{{"target", a.target},
            {"class", to_json(p.target_class)},
            {"theta", p.theta},
            {"v0", std::vector<double>{p.ivp.v0(0), p.ivp.v0(1)}},
            {"length", length(p)},
            {"endpoint_error", p.endpoint_error}};
  emit(c, command, path_table(conn.path), meta);
  return 0;
}

// plotdata ------------------------------------------------------------------

struct PlotArgs {
  std::vector<double> target{2, 1, 0.1};
  int samples = 200;
  double tau_min = -5, tau_max = 5;
  int points = 1000;
  double x_max = 2;
  int grid = 41;
};

int run_plot_geodesic(const Common& c, const PlotArgs& a) {
  ConnectArgs ca;
  ca.target = a.target;
  ca.samples = a.samples;
  const auto v = fixed<3>(a.target, "--target");
  if (classify_target(heis_point(v(0), v(1), v(2))).kind != TargetKind::TimelikeConnectable)
    throw UsageError("plotdata timelike-geodesic: target is not timelike connectable");
  return run_connect(c, ca, "plotdata timelike-geodesic");
}

int run_plot_mu(const Common& c, const PlotArgs& a) {
  if (a.points < 2 || !(a.tau_max > a.tau_min)) throw UsageError("plotdata mu-curve: need --points >= 2 and tau-max > tau-min");
  Table t{{"tau", "mu"}, {}};
  for (int i = 0; i < a.points; ++i) {
    const double tau = a.tau_min + (a.tau_max - a.tau_min) * i / (a.points - 1);
    t.add_row({tau, mu(tau)});
  }
  emit(c, "plotdata mu-curve", t);
  return 0;
}

int run_plot_region(const Common& c, const PlotArgs& a) {
  if (a.grid < 2 || !(a.x_max > 0)) throw UsageError("plotdata reachable-region: need --grid >= 2 and --x-max > 0");
  // boundary 4|z| = x^2 - y^2 over 0 < x <= x_max, |y| <= x
  Table t{{"x", "y", "z"}, {}};
  for (int i = 1; i < a.grid; ++i) {
    const double x = a.x_max * i / (a.grid - 1);
    for (int j = 0; j < a.grid; ++j) {
      const double y = -x + 2 * x * j / (a.grid - 1);
      const double z = (x * x - y * y) / 4;
      t.add_row({x, y, z});
      if (z != 0) t.add_row({x, y, -z});
    }
  }
  emit(c, "plotdata reachable-region", t);
  return 0;
}

// reachable-sample ----------------------------------------------------------

struct SampleArgs {
  std::size_t n = 100;
  bool nonspacelike = false;
  int min_segments = 8, max_segments = 64;
  double duration = 1;
};

int run_reachable_sample(const Common& c, const SampleArgs& a) {
  if (a.n == 0) throw UsageError("reachable-sample: --n must be positive");
  ControlSamplerConfig cfg;
  cfg.min_segments = a.min_segments;
  cfg.max_segments = a.max_segments;
  cfg.duration = a.duration;
  cfg.strictly_timelike = !a.nonspacelike;
  auto curve = [&](std::size_t i) { return integrate_controls(sample_controls(cfg, sample_seed(c.seed, i))); };
  if (c.format == "json") {
    const auto mode = a.nonspacelike ? InclusionMode::Closure : InclusionMode::Strict;
    const auto r = verify_inclusion(curve, RegionId::gamma(EtaParams(0)), a.n, mode, 1e-9, 1e-9, thread_budget());
    json out = envelope("reachable-sample");
    out["seed"] = c.seed;
    out["n"] = a.n;
    out["report"] = to_json(r);
    write_output(c.output, dump(out));
    return 0;
  }
  Table t{{"index", "x1", "x2", "x3", "x4", "z1", "z2", "z3", "eta0", "in_gamma0"}, {}};
  std::vector<QuatPointd> ends(a.n);
  parallel_for(a.n, thread_budget(), [&](std::size_t i) { ends[i] = curve(i).points.back(); });
  for (std::size_t i = 0; i < a.n; ++i) {
    const auto& p = ends[i];
    t.add_row({double(i), p.x(0), p.x(1), p.x(2), p.x(3), p.z(0), p.z(1), p.z(2), eta(0.0, p),
               in_region(RegionId::gamma(EtaParams(0)), p) ? 1.0 : 0.0});
  }
  write_output(c.output, t.csv());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics, causal structure and reachable sets of sub-Lorentzian H-type groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", common.output, "Output file, - for stdout");
  app.add_option("--seed", common.seed, "Seed for randomized commands");
  const auto groups = CLI::IsMember({"heis", "quat"});

  std::function<int()> action;

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Causal class of a frame vector, connectability of a target");
  classify->add_option("--group", ca.group)->check(groups);
  classify->add_option("--vector", ca.vector, "Frame coefficients");
  classify->add_option("--target", ca.target, "Heisenberg target x y z");
  classify->add_option("--point", ca.point, "Quaternion point x1..x4 z1..z3");
  classify->callback([&] { action = [&] { return run_classify(common, ca); }; });

  auto* geodesic = app.add_subcommand("geodesic", "Sample geodesics from the origin");
  geodesic->require_subcommand(1);
  ShootArgs sa;
  auto* shoot_cmd = geodesic->add_subcommand("shoot", "Geodesic from the origin with given initial data");
  shoot_cmd->add_option("--group", sa.group)->check(groups);
  shoot_cmd->add_option("--v0", sa.v0, "Initial horizontal velocity")->required();
  shoot_cmd->add_option("--theta", sa.theta, "Momentum constants")->required();
  shoot_cmd->add_option("--t1", sa.t1, "End time");
  shoot_cmd->add_option("--samples", sa.samples)->check(CLI::Range(2, 10000000));
  shoot_cmd->add_option("--method", sa.method)->check(CLI::IsMember({"closed", "rk4", "rk45"}));
  shoot_cmd->add_option("--steps", sa.steps, "RK4 steps");
  shoot_cmd->add_option("--tol", sa.tol, "RK45 tolerance");
  shoot_cmd->callback([&] { action = [&] { return run_shoot(common, sa); }; });
  ConnectArgs cna;
  auto* connect_cmd = geodesic->add_subcommand("connect", "Geodesic on [0, 1] from the origin to a target");
  connect_cmd->add_option("--group", cna.group)->check(groups);
  connect_cmd->add_option("--target", cna.target, "Target x y z")->required();
  connect_cmd->add_option("--samples", cna.samples);
  connect_cmd->callback([&] { action = [&] { return run_connect(common, cna); }; });

  std::string suite;
  SuiteOptions so;
  auto* verify = app.add_subcommand("verify", "Run a property suite and print a JSON report");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", so.n, "Sample count (0 for the suite default)");
  verify->callback([&] {
    action = [&] {
      so.seed = common.seed;
      so.threads = thread_budget();
      const auto r = run_suite(suite, so);
      write_output(common.output, dump(r.report));
      return r.passed ? 0 : kExitVerify;
    };
  });

  PlotArgs pa;
  auto* plot = app.add_subcommand("plotdata", "Data behind the standard figures");
  plot->require_subcommand(1);
  auto* pg = plot->add_subcommand("timelike-geodesic", "Timelike geodesic through the origin");
  pg->add_option("--target", pa.target);
  pg->add_option("--samples", pa.samples);
  pg->callback([&] { action = [&] { return run_plot_geodesic(common, pa); }; });
  auto* pm = plot->add_subcommand("mu-curve", "The connection function mu(tau)");
  pm->add_option("--tau-min", pa.tau_min);
  pm->add_option("--tau-max", pa.tau_max);
  pm->add_option("--points", pa.points);
  pm->callback([&] { action = [&] { return run_plot_mu(common, pa); }; });
  auto* pr = plot->add_subcommand("reachable-region", "Boundary 4|z| = x^2 - y^2 of the timelike reachable set");
  pr->add_option("--x-max", pa.x_max);
  pr->add_option("--grid", pa.grid);
  pr->callback([&] { action = [&] { return run_plot_region(common, pa); }; });

  SampleArgs rs;
  auto* sample = app.add_subcommand("reachable-sample", "Endpoints of random future-directed control curves");
  sample->add_option("--n", rs.n);
  sample->add_flag("--nonspacelike", rs.nonspacelike, "Allow null segments");
  sample->add_option("--min-segments", rs.min_segments);
  sample->add_option("--max-segments", rs.max_segments);
  sample->add_option("--duration", rs.duration);
  sample->callback([&] { action = [&] { return run_reachable_sample(common, rs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }
  try {
    return action ? action() : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
