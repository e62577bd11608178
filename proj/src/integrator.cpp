#include "sublorentz/integrator.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>

namespace sublorentz {

namespace odeint = boost::numeric::odeint;

const char* to_string(Method m) { return m == Method::RK4 ? "rk4" : "rk45"; }

Method parse_method(const std::string& s) {
  if (s == "rk4") return Method::RK4;
  if (s == "rk45") return Method::RK45;
  throw std::invalid_argument("unknown method '" + s + "' (expected rk4 or rk45)");
}

void IntegrationConfig::validate() const {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0))
    throw std::invalid_argument("integration: need t1 > t0");
  if (samples < 2) throw std::invalid_argument("integration: need at least two samples");
  if (method == Method::RK4) {
    if (steps <= 0) throw std::invalid_argument("integration: step count must be positive");
    if (steps % (samples - 1) != 0)
      throw std::invalid_argument("integration: steps must be a multiple of samples - 1");
  } else if (!(tol > 0)) {
    throw std::invalid_argument("integration: tolerance must be positive");
  }
}

namespace {

// State layout: x (H), z (C), xi (H).
template <int H, int C>
struct Layout {
  static constexpr std::size_t N = 2 * H + C;
  using State = std::array<double, N>;
  using Cov = CovectorState<double, H, C>;

  static State pack(const Cov& s) {
    State y{};
    for (int i = 0; i < H; ++i) y[i] = s.position.x(i);
    for (int i = 0; i < C; ++i) y[H + i] = s.position.z(i);
    for (int i = 0; i < H; ++i) y[H + C + i] = s.xi(i);
    return y;
  }

  static Cov unpack(const State& y, const Eigen::Matrix<double, C, 1>& theta) {
    Cov s;
    for (int i = 0; i < H; ++i) s.position.x(i) = y[i];
    for (int i = 0; i < C; ++i) s.position.z(i) = y[H + i];
    for (int i = 0; i < H; ++i) s.xi(i) = y[H + C + i];
    s.theta = theta;
    return s;
  }
};

template <int H, int C>
GeodesicPath<double, H, C> integrate_impl(const CovectorState<double, H, C>& init, const IntegrationConfig& cfg) {
  cfg.validate();
  using L = Layout<H, C>;
  using State = typename L::State;
  const Eigen::Matrix<double, C, 1> theta = init.theta;

  auto rhs = [&theta](const State& y, State& dy, double) {
    const auto r = hamiltonian_rate(L::unpack(y, theta));
    for (int i = 0; i < H; ++i) dy[i] = r.xdot(i);
    for (int i = 0; i < C; ++i) dy[H + i] = r.zdot(i);
    for (int i = 0; i < H; ++i) dy[H + C + i] = r.xidot(i);
  };

  GeodesicPath<double, H, C> path;
  path.samples.reserve(cfg.samples);
  auto record = [&](const State& y, double t) {
    for (double v : y)
      if (!std::isfinite(v)) throw IntegrationError("integration: non-finite state at t = " + std::to_string(t));
    const auto s = L::unpack(y, theta);
    PathSample<double, H, C> out;
    out.t = t;
    out.point = s.position;
    out.velocity = hamiltonian_rate(s).xdot;
    out.hamiltonian = hamiltonian(s);
    out.theta = theta;
    path.samples.push_back(out);
  };

  State y = L::pack(init);
  const double span = cfg.t1 - cfg.t0;
  if (cfg.method == Method::RK4) {
    odeint::runge_kutta4<State> stepper;
    const int per_sample = cfg.steps / (cfg.samples - 1);
    const double dt = span / cfg.steps;
    record(y, cfg.t0);
    for (int i = 1; i < cfg.samples; ++i) {
      const int base = (i - 1) * per_sample;
      for (int j = 0; j < per_sample; ++j) stepper.do_step(rhs, y, cfg.t0 + (base + j) * dt, dt);
      record(y, cfg.t0 + span * i / (cfg.samples - 1));
    }
  } else {
    std::vector<double> times(cfg.samples);
    for (int i = 0; i < cfg.samples; ++i) times[i] = cfg.t0 + span * i / (cfg.samples - 1);
    auto stepper = odeint::make_controlled(cfg.tol, cfg.tol, odeint::runge_kutta_dopri5<State>());
    try {
      odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), span / (cfg.samples - 1) / 10,
                              [&](const State& s, double t) { record(s, t); });
    } catch (const odeint::step_adjustment_error& e) {
      throw IntegrationError(std::string("integration: step size underflow (") + e.what() + ")");
    } catch (const odeint::no_progress_error& e) {
      throw IntegrationError(std::string("integration: no progress (") + e.what() + ")");
    }
  }
  finalize_path(path);
  return path;
}

template <int H, int C>
DiscreteCurve<double, H, C> controls_impl(const PiecewiseControls<H>& u, int substeps) {
  u.validate();
  if (substeps < 1) throw std::invalid_argument("integrate_controls: substeps must be positive");
  using State = std::array<double, H + C>;
  DiscreteCurve<double, H, C> curve;
  State y{};
  auto push = [&](double t) {
    Point<double, H, C> p;
    for (int i = 0; i < H; ++i) p.x(i) = y[i];
    for (int i = 0; i < C; ++i) p.z(i) = y[H + i];
    if (!p.coords().allFinite()) throw IntegrationError("integrate_controls: non-finite state");
    curve.t.push_back(t);
    curve.points.push_back(p);
  };
  odeint::runge_kutta4<State> stepper;
  push(u.breaks.front());
  for (std::size_t seg = 0; seg < u.values.size(); ++seg) {
    const Eigen::Matrix<double, H, 1> v = u.values[seg];
    auto rhs = [&v](const State& s, State& ds, double) {
      Eigen::Matrix<double, H, 1> x;
      for (int i = 0; i < H; ++i) x(i) = s[i];
      const auto zd = center_form<double, H, C>(x, v);
      for (int i = 0; i < H; ++i) ds[i] = v(i);
      for (int i = 0; i < C; ++i) ds[H + i] = zd(i);
    };
    const double a = u.breaks[seg], b = u.breaks[seg + 1];
    const double dt = (b - a) / substeps;
    for (int j = 0; j < substeps; ++j) {
      stepper.do_step(rhs, y, a + j * dt, dt);
      push(j + 1 == substeps ? b : a + (j + 1) * dt);
    }
  }
  return curve;
}

}  // namespace

HeisPath integrate(const HeisCovector& init, const IntegrationConfig& cfg) { return integrate_impl(init, cfg); }
QuatPath integrate(const QuatCovector& init, const IntegrationConfig& cfg) { return integrate_impl(init, cfg); }

HeisCurve integrate_controls(const PiecewiseControls<2>& u, int substeps) {
  return controls_impl<2, 1>(u, substeps);
}
QuatCurve integrate_controls(const PiecewiseControls<4>& u, int substeps) {
  return controls_impl<4, 3>(u, substeps);
}

}  // namespace sublorentz
