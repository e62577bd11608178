#include "support.hpp"

using namespace sublorentz;
using testing::normal;
using testing::random_point;

TEST_CASE_TEMPLATE("group law is associative with identity and inverse", P, HeisPointd, QuatPointd) {
  constexpr int H = P::kHorizontal, C = P::kCenter;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_point<H, C>(rng), b = random_point<H, C>(rng), c = random_point<H, C>(rng);
    CHECK((multiply(multiply(a, b), c).coords() - multiply(a, multiply(b, c)).coords()).norm() < 1e-12);
    CHECK((multiply(a, inverse(a)).coords()).norm() < 1e-14);
    CHECK((multiply(P::identity(), a).coords() - a.coords()).norm() == 0);
  }
}

TEST_CASE("Heisenberg product matches the coordinate formula") {
  // (x, y, z)(x', y', z') = (x + x', y + y', z + z' + (y x' - x y') / 2)
  const auto p = heis_point(1.5, -0.25, 0.75), q = heis_point(-2.0, 3.0, 0.5);
  const auto r = multiply(p, q);
  CHECK(r.x(0) == doctest::Approx(-0.5));
  CHECK(r.x(1) == doctest::Approx(2.75));
  CHECK(r.z(0) == doctest::Approx(0.75 + 0.5 + 0.5 * (-0.25 * -2.0 - 1.5 * 3.0)));
}

TEST_CASE("quaternion structure matrices are anticommuting complex structures") {
  const auto& I = structure_matrices<double, 4, 3>();
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  for (int k = 0; k < 3; ++k) {
    CHECK((I[k] * I[k] + id).norm() == 0);
    CHECK((I[k] + I[k].transpose()).norm() == 0);
    for (int l = k + 1; l < 3; ++l) CHECK((I[k] * I[l] + I[l] * I[k]).norm() == 0);
  }
  // quaternion relations i j = k up to the orientation chosen
  CHECK(((I[0] * I[1]).cwiseAbs() - I[2].cwiseAbs()).norm() == 0);
}

TEST_CASE("quaternion product matches the written-out center terms") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 50; ++n) {
    const auto p = random_point<4, 3>(rng), q = random_point<4, 3>(rng);
    const auto& x = p.x;
    const auto& y = q.x;
    const Eigen::Vector3d b{0.5 * (x(1) * y(0) - x(0) * y(1) + x(3) * y(2) - x(2) * y(3)),
                            0.5 * (-x(3) * y(0) - x(2) * y(1) + x(1) * y(2) + x(0) * y(3)),
                            0.5 * (-x(2) * y(0) + x(3) * y(1) + x(0) * y(2) - x(1) * y(3))};
    CHECK((multiply(p, q).z - p.z - q.z - b).norm() < 1e-14);
  }
}

TEST_CASE_TEMPLATE("frame fields are left-invariant derivatives", P, HeisPointd, QuatPointd) {
  constexpr int H = P::kHorizontal, C = P::kCenter;
  std::mt19937_64 rng(3);
  const double h = 1e-6;
  for (int n = 0; n < 20; ++n) {
    const auto p = random_point<H, C>(rng);
    const auto f = horizontal_frame(p);
    for (int j = 0; j < H; ++j) {
      P step;
      step.x(j) = h;
      const typename P::Coords d = (multiply(p, step).coords() - multiply(p, inverse(step)).coords()) / (2 * h);
      CHECK((d - f.col(j)).norm() < 1e-8);
    }
    // dual forms annihilate the horizontal frame
    for (int j = 0; j < H; ++j) CHECK(dual_forms<double, H, C>(f.col(j), p).norm() < 1e-14);
  }
}

TEST_CASE("brackets of the quaternion frame") {
  // [X_i, X_j] via second-order group commutator of flows
  const auto& I = structure_matrices<double, 4, 3>();
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const auto b = bracket<4, 3>(i, j);
      Eigen::Vector3d expect = Eigen::Vector3d::Zero();
      if (b.z_index) expect(b.z_index - 1) = b.sign;
      const double s = 1e-3;
      QuatPointd a, c;
      a.x(i - 1) = s;
      c.x(j - 1) = s;
      const auto comm = multiply(multiply(a, c), multiply(inverse(a), inverse(c)));
      CHECK((comm.z / (s * s) - expect).norm() < 1e-9);
      CHECK(comm.x.norm() < 1e-15);
      Eigen::Vector3d direct;
      for (int k = 0; k < 3; ++k) direct(k) = -I[k](i - 1, j - 1);
      CHECK((direct - expect).norm() == 0);
    }
  CHECK(bracket<4, 3>(1, 2).z_index == 1);
  CHECK(bracket<4, 3>(3, 4).z_index == 1);
  CHECK(bracket<4, 3>(1, 4).z_index == 2);
  CHECK(bracket<4, 3>(2, 3).z_index == 2);
  CHECK(bracket<4, 3>(1, 3).z_index == 3);
  CHECK(bracket<4, 3>(2, 4).z_index == 3);
  CHECK_THROWS_AS((bracket<4, 3>(0, 2)), std::out_of_range);
}

TEST_CASE("frame coefficient indexing") {
  FrameVector<double, 4, 3> v{FrameKind::Z, 2, {}};
  CHECK(frame_coefficients(v)(5) == 1);
  v.index = 4;
  CHECK_THROWS_AS(frame_coefficients(v), std::out_of_range);
  FrameVector<double, 2, 1> w{FrameKind::X, 3, {}};
  CHECK_THROWS_AS(frame_coefficients(w), std::out_of_range);
}

TEST_CASE("mixed-group operations are rejected at run time") {
  const AnyPoint h = heis_point(1.0, 0.0, 0.0);
  const AnyPoint q = QuatPointd();
  CHECK_THROWS_AS(multiply(h, q), GroupMismatch);
  CHECK(group_of(inverse(q)) == GroupId::QuaternionH);
}

TEST_CASE("discrete curves validate their sampling") {
  HeisCurve c;
  c.t = {0, 1};
  c.points = {HeisPointd(), HeisPointd()};
  CHECK_NOTHROW(c.validate());
  c.t = {0, 0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.t = {0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("finite-difference velocities are exact on quadratics") {
  HeisCurve c;
  for (double t : {0.0, 0.1, 0.35, 0.5, 0.9, 1.0}) {
    c.t.push_back(t);
    c.points.push_back(heis_point(t * t, 2 * t, 0.0));
  }
  const auto v = curve_velocities(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(v[i](0) == doctest::Approx(2 * c.t[i]).epsilon(1e-12));
    CHECK(v[i](1) == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK(horizontality_defect(c) > 0.1);
}
