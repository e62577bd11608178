#include "support.hpp"

using namespace sublorentz;

namespace {

IntegrationConfig rk4(int steps, int samples) {
  IntegrationConfig c;
  c.steps = steps;
  c.samples = samples;
  return c;
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(rk4(1000, 101).validate());
  CHECK_THROWS_AS(rk4(1000, 7).validate(), std::invalid_argument);
  CHECK_THROWS_AS(rk4(0, 2).validate(), std::invalid_argument);
  IntegrationConfig c;
  c.t1 = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = IntegrationConfig{};
  c.method = Method::RK45;
  c.tol = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(parse_method("rk45") == Method::RK45);
  CHECK_THROWS_AS(parse_method("euler"), std::invalid_argument);
}

TEST_CASE("RK4 reproduces the Heisenberg closed form") {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 20; ++n) {
    const auto ivp = random_heis_ivp(rng);
    const auto path = integrate(initial_covector<double, 2, 1>(ivp.v0, Eigen::Matrix<double, 1, 1>(ivp.theta)), rk4(1000, 11));
    for (const auto& s : path.samples) {
      const auto e = shoot(ivp, s.t);
      CHECK((s.point.coords() - e.point.coords()).norm() < 1e-9);
      CHECK((s.velocity - e.velocity).norm() < 1e-9);
    }
    const auto cons = conservation_report(path);
    CHECK(cons.h_drift < 1e-10);
    CHECK(cons.theta_drift == 0);
  }
}

TEST_CASE("RK45 reproduces the quaternion closed form") {
  std::mt19937_64 rng(42);
  IntegrationConfig cfg;
  cfg.method = Method::RK45;
  cfg.tol = 1e-12;
  cfg.samples = 6;
  for (int n = 0; n < 20; ++n) {
    const auto ivp = random_quat_ivp(rng);
    const auto cf = closed_form(ivp);
    const auto path = integrate(initial_covector<double, 4, 3>(ivp.v0, ivp.theta), cfg);
    for (const auto& s : path.samples) CHECK((s.point.coords() - shoot(cf, s.t).coords()).norm() < 1e-9);
    CHECK(conservation_report(path).h_drift < 1e-9);
  }
}

TEST_CASE("RK4 is fourth order") {
  const QuatIVPd ivp{{1.1, 0.4, -0.3, 0.6}, {0.9, -0.7, 1.2}};
  const auto cf = closed_form(ivp);
  const auto init = initial_covector<double, 4, 3>(ivp.v0, ivp.theta);
  const double e1 = (integrate(init, rk4(20, 2)).back().point.coords() - shoot(cf, 1.0).coords()).norm();
  const double e2 = (integrate(init, rk4(40, 2)).back().point.coords() - shoot(cf, 1.0).coords()).norm();
  CHECK(e1 / e2 > 14);
  CHECK(e1 / e2 < 18);
}

TEST_CASE("piecewise-constant controls integrate to the group product of steps") {
  ControlSamplerConfig cfg;
  cfg.strictly_timelike = false;
  const auto u = sample_controls(cfg, 5);
  const auto curve = integrate_controls(u);
  QuatPointd p;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    p = multiply(p, QuatPointd(u.values[i] * (u.breaks[i + 1] - u.breaks[i]), Eigen::Vector3d::Zero()));
  CHECK((curve.points.back().coords() - p.coords()).norm() < 1e-13);
  CHECK(horizontality_defect(curve) < 1e-9);
  PiecewiseControls<2> bad{{0, 1}, {}};
  CHECK_THROWS_AS(integrate_controls(bad), std::invalid_argument);
}

TEST_CASE("Heisenberg slice flow of the quaternion system") {
  const HeisIVP<double> h{{1.3, 0.4}, 0.7};
  for (Slice s : {Slice::X3X4, Slice::X2X3, Slice::X2X4}) {
    const auto q = bslice_embed(h, s);
    const auto path = integrate(initial_covector<double, 4, 3>(q.v0, q.theta), rk4(500, 6));
    for (const auto& sm : path.samples) {
      CHECK((bslice_reduce(sm.point, s, 1e-10).coords() - shoot(h, sm.t).point.coords()).norm() < 1e-9);
    }
  }
}
