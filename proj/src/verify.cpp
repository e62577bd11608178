#include "sublorentz/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace sublorentz {

unsigned thread_budget() {
  if (const char* env = std::getenv("SUBLORENTZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, 1024));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = std::min(n, w * chunk), e = std::min(n, b + chunk);
    pool.emplace_back([&, b, e] {
      try {
        for (std::size_t i = b; i < e; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

HeisIVP<double> random_heis_ivp(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> th(-2.0, 2.0);
  HeisIVP<double> ivp;
  ivp.v0 << normal(rng), normal(rng);
  ivp.theta = th(rng);
  return ivp;
}

QuatIVPd random_quat_ivp(std::mt19937_64& rng, double planar) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> th(-2.0, 2.0);
  QuatIVPd ivp;
  ivp.v0 << normal(rng), normal(rng), normal(rng), normal(rng);
  do ivp.theta << th(rng), th(rng), th(rng);
  while (ivp.theta.head<2>().squaredNorm() < planar * ivp.theta.squaredNorm() || ivp.theta.norm() < 1e-2);
  return ivp;
}

namespace {

SuiteResult finish(const std::string& suite, const SuiteOptions& opt, std::size_t n, const std::vector<Check>& checks,
                   json details) {
  SuiteResult r;
  r.passed = true;
  json cs = json::array();
  for (const auto& c : checks) {
    r.passed = r.passed && c.ok();
    cs.push_back(json{{"name", c.name},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"comparison", c.upper ? "<=" : ">="},
                      {"asserted", c.asserted},
                      {"passed", c.ok()}});
  }
  r.report = json{{"schema_version", kReportSchemaVersion},
                  {"command", "verify"},
                  {"suite", suite},
                  {"seed", opt.seed},
                  {"n", n},
                  {"passed", r.passed},
                  {"checks", cs},
                  {"details", std::move(details)}};
  return r;
}

std::size_t pick(std::size_t n, std::size_t fallback) { return n == 0 ? fallback : n; }

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

template <int H, int C>
double path_deviation(const GeodesicPath<double, H, C>& a, const GeodesicPath<double, H, C>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, max_abs_diff(a.samples[i].point.coords(), b.samples[i].point.coords()));
  return worst;
}

IntegrationConfig rk4(int steps, int samples) {
  IntegrationConfig cfg;
  cfg.steps = steps;
  cfg.samples = samples;
  return cfg;
}

}  // namespace

SuiteResult verify_mu(const SuiteOptions& opt) {
  const std::size_t n = pick(opt.n, 1000);
  std::vector<double> err(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(opt.seed, i));
    const double r = std::uniform_real_distribution<double>(-0.999, 0.999)(rng);
    err[i] = std::abs(mu(solve_mu(r)) - r);
  });
  const double round_trip = *std::max_element(err.begin(), err.end());

  const int grid = 10000;
  int violations = 0;
  int tail_compared = 0;
  double prev_tau = -20.0;
  for (int i = 1; i < grid; ++i) {
    const double tau = -20.0 + 40.0 * i / (grid - 1);
    bool ok;
    if (prev_tau >= 1 && tau >= 1) {
      ok = mu_tail(tau) < mu_tail(prev_tau);
      ++tail_compared;
    } else if (prev_tau <= -1 && tau <= -1) {
      ok = mu_tail(tau) > mu_tail(prev_tau);
      ++tail_compared;
    } else {
      ok = mu(tau) < mu(prev_tau);
    }
    if (!ok) ++violations;
    prev_tau = tau;
  }
  const double lim_lo = std::abs(mu(-20.0) - 1), lim_hi = std::abs(mu(20.0) + 1);
  std::vector<Check> checks{{"round_trip_max_error", round_trip, 1e-12},
                            {"monotonicity_violations", double(violations), 0},
                            {"limit_at_minus_20", lim_lo, 1e-6},
                            {"limit_at_plus_20", lim_hi, 1e-6}};
  json details{{"grid_points", grid}, {"pairs_compared_by_tail", tail_compared}, {"mu_at_minus_20", mu(-20.0)}, {"mu_at_plus_20", mu(20.0)}};
  return finish("mu", opt, n, checks, details);
}

SuiteResult verify_coefficients(const SuiteOptions& opt) {
  const std::size_t n = pick(opt.n, 1000);
  std::vector<std::vector<IdentityReport>> all(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(opt.seed, i));
    all[i] = coefficient_identities(random_quat_ivp(rng));
  });

  const std::size_t count = all.front().size();
  json per = json::array();
  double worst = 0;
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t arg = 0;
    double w = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (all[i][k].relative() > w) {
        w = all[i][k].relative();
        arg = i;
      }
    worst = std::max(worst, w);
    per.push_back(json{{"name", all[0][k].name}, {"max_relative", w}, {"worst_sample", arg}});
  }
  std::vector<Check> checks{{"identity_count", double(count), 40, true, false},
                            {"max_relative_residual", worst, 1e-10}};
  return finish("appendix", opt, n, checks, json{{"identities", per}});
}

SuiteResult verify_identities(const SuiteOptions& opt) {
  const std::size_t n = pick(opt.n, 1000);
  struct Row {
    IdentityReport x, z_gram, z_candidate;
    double heis_norm = 0;
  };
  std::vector<Row> rows(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(opt.seed, i));
    const auto ivp = random_quat_ivp(rng);
    const double t = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const auto cf = closed_form(ivp);
    rows[i] = {norm_identity_x(cf, t), norm_identity_z_gram(cf, t), norm_identity_z(cf, t), 0};
    const auto h = random_heis_ivp(rng);
    const auto st = shoot(h, t);
    const double lhs = q_form(st.point.x, st.point.x), rhs = horizontal_norm_identity(h, t);
    rows[i].heis_norm = std::abs(lhs - rhs) / std::max({1e-300, std::abs(lhs), std::abs(rhs)});
  });

  // slice-reduced data: Heisenberg initial data on x3 = x4 = 0
  const std::size_t ns = std::max<std::size_t>(1, n / 10);
  std::vector<double> slice_err(ns), slice_candidate(ns);
  parallel_for(ns, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(opt.seed ^ 0x5eedULL, i));
    auto h = random_heis_ivp(rng);
    if (std::abs(h.theta) < 0.05) h.theta = 0.05;
    const double t = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const auto cf = closed_form(bslice_embed(h, Slice::X3X4));
    const double zh = shoot(h, t).point.z(0);
    const double zq2 = shoot_z(cf, t).squaredNorm();
    slice_err[i] = std::abs(zq2 - zh * zh) / std::max(1e-300, zh * zh);
    const auto cand = norm_identity_z(cf, t);
    slice_candidate[i] = std::abs(cand.rhs - zh * zh) / std::max(1e-300, zh * zh);
  });

  double wx = 0, wz = 0, wc = 0, wh = 0;
  std::size_t cand_bad = 0;
  json log = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    wx = std::max(wx, rows[i].x.relative());
    wz = std::max(wz, rows[i].z_gram.relative());
    wh = std::max(wh, rows[i].heis_norm);
    const double c = rows[i].z_candidate.relative();
    wc = std::max(wc, c);
    if (c > 1e-9) {
      ++cand_bad;
      if (log.size() < 20) log.push_back(to_json(rows[i].z_candidate));
    }
  }
  const double ws = *std::max_element(slice_err.begin(), slice_err.end());
  const double wsc = *std::max_element(slice_candidate.begin(), slice_candidate.end());

  std::vector<Check> checks{{"x_norm_max_relative", wx, 1e-9},
                            {"heisenberg_norm_max_relative", wh, 1e-9},
                            {"z_norm_max_relative", wz, 1e-9},
                            {"slice_z_norm_vs_heisenberg", ws, 1e-9},
                            {"z_norm_candidate_max_relative", wc, 1e-9, false},
                            {"slice_z_norm_candidate_vs_heisenberg", wsc, 1e-9, false}};
  json details{{"slice_samples", ns},
               {"z_norm_candidate_mismatches", cand_bad},
               {"z_norm_candidate_log", log},
               {"z_norm_form",
                "4 (T(k - c1c2) + c1c2 sinh T - k sin T)^2 - 8k (c1^2 e^T + c2^2 e^-T - 2c1c2)(sinh T sin T + cos T - "
                "cosh T), T = at"}};
  return finish("identities", opt, n, checks, details);
}

SuiteResult verify_inclusion_suite(const SuiteOptions& opt) {
  const std::size_t n = pick(opt.n, 1000);
  ControlSamplerConfig tfd;
  ControlSamplerConfig nspc;
  nspc.strictly_timelike = false;
  const std::uint64_t seed = opt.seed;
  auto controls_sampler = [seed](const ControlSamplerConfig& cfg, std::uint64_t salt) {
    return [cfg, seed, salt](std::size_t i) { return integrate_controls(sample_controls(cfg, sample_seed(seed ^ salt, i))); };
  };
  auto geodesic_sampler = [seed](std::size_t i) {
    std::mt19937_64 rng(sample_seed(seed ^ 0x9e0ULL, i));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RayParams ray{1.5 * u(rng), 2 * std::numbers::pi * u(rng), std::numbers::pi * u(rng)};
    QuatIVPd ivp = random_quat_ivp(rng);
    ivp.v0 = ray_point(ray, 1.0).x;
    return sample_path(closed_form(ivp), 1.0, 65).curve();
  };

  const auto r_tfd = verify_inclusion(controls_sampler(tfd, 0x1ULL), RegionId::gamma(EtaParams(0)), n,
                                      InclusionMode::Strict, 1e-9, 1e-9, opt.threads);
  const auto r_nspc = verify_inclusion(controls_sampler(nspc, 0x2ULL), RegionId::gamma(EtaParams(0)), n,
                                       InclusionMode::Closure, 1e-9, 1e-9, opt.threads);
  const auto r_a = verify_inclusion(controls_sampler(tfd, 0x3ULL), RegionId::a_region(EtaParams(1.0)), n,
                                    InclusionMode::Strict, 1e-9, 1e-9, opt.threads);
  const auto r_geo = verify_inclusion(geodesic_sampler, RegionId::gamma(EtaParams(0)), std::max<std::size_t>(1, n / 10),
                                      InclusionMode::Strict, 1e-9, 1e-9, opt.threads);

  std::vector<Check> checks{{"timelike_gamma0_violations", double(r_tfd.violations.size()), 0},
                            {"timelike_eta0_max_increase", r_tfd.max_eta_increase, 1e-6},
                            {"nonspacelike_closure_violations", double(r_nspc.violations.size()), 0},
                            {"a_region_violations", double(r_a.violations.size()), 0},
                            {"geodesic_gamma0_violations", double(r_geo.violations.size()), 0}};
  json details{{"timelike_controls", to_json(r_tfd)},
               {"nonspacelike_controls", to_json(r_nspc)},
               {"a_region_controls", to_json(r_a)},
               {"timelike_geodesics", to_json(r_geo)}};
  return finish("inclusion", opt, n, checks, details);
}

SuiteResult verify_crosscheck(const SuiteOptions& opt) {
  const std::size_t n = pick(opt.n, 100);
  struct Row {
    double dev = 0, coarse = 0, fine = 0, drift = 0, theta = 0;
  };
  std::vector<Row> heis(n), quat(n);
  std::vector<double> expm_dev(n);
  std::array<std::vector<double>, 3> slice_dev, slice_off;
  for (auto& v : slice_dev) v.resize(n);
  for (auto& v : slice_off) v.resize(n);

  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(opt.seed, i));
    {
      const auto ivp = random_heis_ivp(rng);
      const auto init = initial_covector<double, 2, 1>(ivp.v0, Eigen::Matrix<double, 1, 1>(ivp.theta));
      const auto num = integrate(init, rk4(1000, 101));
      auto& r = heis[i];
      r.dev = path_deviation(num, sample_path(ivp, 1.0, 101));
      const auto cr = conservation_report(num);
      r.drift = cr.h_drift;
      r.theta = cr.theta_drift;
      r.coarse = path_deviation(integrate(init, rk4(50, 11)), sample_path(ivp, 1.0, 11));
      r.fine = path_deviation(integrate(init, rk4(100, 11)), sample_path(ivp, 1.0, 11));
    }
    {
      const auto ivp = random_quat_ivp(rng);
      const auto cf = closed_form(ivp);
      const auto init = initial_covector<double, 4, 3>(ivp.v0, ivp.theta);
      const auto num = integrate(init, rk4(1000, 101));
      auto& r = quat[i];
      r.dev = path_deviation(num, sample_path(cf, 1.0, 101));
      const auto cr = conservation_report(num);
      r.drift = cr.h_drift;
      r.theta = cr.theta_drift;
      r.coarse = path_deviation(integrate(init, rk4(50, 11)), sample_path(cf, 1.0, 11));
      r.fine = path_deviation(integrate(init, rk4(100, 11)), sample_path(cf, 1.0, 11));

      const auto forced = closed_form(ivp, 2.0);  // every theta is degenerate at eps = 2
      double d = 0;
      for (double t : {0.5, 1.0}) {
        d = std::max(d, max_abs_diff(shoot_x(cf, t), shoot_x(forced, t)));
        d = std::max(d, max_abs_diff(shoot_z(cf, t), shoot_z(forced, t)));
      }
      expm_dev[i] = d;
    }
    for (int s = 0; s < 3; ++s) {
      const Slice slice = static_cast<Slice>(s);
      const auto h = random_heis_ivp(rng);
      const auto q = bslice_embed(h, slice);
      const auto num = integrate(initial_covector<double, 4, 3>(q.v0, q.theta), rk4(1000, 21));
      const auto cf = closed_form(q);
      double dev = 0, off = 0;
      for (const auto& smp : num.samples) {
        const auto exact = shoot(h, smp.t).point;
        for (const QuatPointd& p : {smp.point, shoot(cf, smp.t)}) {
          QuatPointd zeroed = bslice_embed(bslice_reduce(p, slice, 1.0), slice);
          off = std::max(off, max_abs_diff(p.coords(), zeroed.coords()));
          dev = std::max(dev, max_abs_diff(bslice_reduce(p, slice, 1.0).coords(), exact.coords()));
        }
      }
      slice_dev[s][i] = dev;
      slice_off[s][i] = off;
    }
  });

  auto summarize = [](const std::vector<Row>& rows) {
    double dev = 0, drift = 0, theta = 0, coarse = 0, fine = 0, min_ratio = 1e300;
    for (const auto& r : rows) {
      dev = std::max(dev, r.dev);
      drift = std::max(drift, r.drift);
      theta = std::max(theta, r.theta);
      coarse = std::max(coarse, r.coarse);
      fine = std::max(fine, r.fine);
      if (r.coarse > 1e-10) min_ratio = std::min(min_ratio, r.coarse / std::max(r.fine, 1e-300));
    }
    return std::array<double, 6>{dev, drift, theta, coarse / std::max(fine, 1e-300), min_ratio, coarse};
  };
  const auto hs = summarize(heis), qs = summarize(quat);
  const double ed = *std::max_element(expm_dev.begin(), expm_dev.end());

  std::vector<Check> checks{{"heis_closed_form_vs_rk4", hs[0], 1e-6},
                            {"heis_h_drift", hs[1], 1e-8},
                            {"heis_theta_drift", hs[2], 0},
                            {"heis_order_ratio", hs[3], 8, true, false},
                            {"heis_order_ratio_min_per_ivp", hs[4], 8, true, false},
                            {"quat_closed_form_vs_rk4", qs[0], 1e-6},
                            {"quat_h_drift", qs[1], 1e-8},
                            {"quat_theta_drift", qs[2], 0},
                            {"quat_order_ratio", qs[3], 8, true, false},
                            {"quat_order_ratio_min_per_ivp", qs[4], 8, true, false},
                            {"quat_closed_form_vs_matrix_exponential", ed, 1e-9}};
  json slices = json::object();
  for (int s = 0; s < 3; ++s) {
    const double dev = *std::max_element(slice_dev[s].begin(), slice_dev[s].end());
    const double off = *std::max_element(slice_off[s].begin(), slice_off[s].end());
    const std::string name = to_string(static_cast<Slice>(s));
    checks.push_back({"slice_" + name + "_off_slice", off, 1e-10});
    checks.push_back({"slice_" + name + "_vs_heisenberg", dev, 1e-9});
  }
  json details{{"rk4_steps", 1000},
               {"order_steps", json::array({50, 100})},
               {"heis_order_coarse_deviation", hs[5]},
               {"quat_order_coarse_deviation", qs[5]}};
  return finish("crosscheck", opt, n, checks, details);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"mu", "appendix", "identities", "inclusion", "crosscheck"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "mu") return verify_mu(opt);
  if (name == "appendix") return verify_coefficients(opt);
  if (name == "identities") return verify_identities(opt);
  if (name == "inclusion") return verify_inclusion_suite(opt);
  if (name == "crosscheck") return verify_crosscheck(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace sublorentz
