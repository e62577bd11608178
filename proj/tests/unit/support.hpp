#pragma once

#include "sublorentz/verify.hpp"

#include "doctest.h"
#include "json.hpp"

#include <fstream>
#include <random>
#include <string>

namespace testing {

inline const nlohmann::json& golden() {
  static const nlohmann::json j = [] {
    std::ifstream in(SUBLORENTZ_GOLDEN);
    REQUIRE_MESSAGE(in.good(), "missing fixture " SUBLORENTZ_GOLDEN);
    return nlohmann::json::parse(in);
  }();
  return j;
}

// Fixture numbers are stored as decimal strings with 25 digits.
inline double num(const nlohmann::json& v) { return v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>(); }

template <int N>
Eigen::Matrix<double, N, 1> vec(const nlohmann::json& a) {
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = num(a.at(i));
  return v;
}

template <int N>
Eigen::Matrix<double, N, 1> normal(std::mt19937_64& rng, double sd = 1) {
  std::normal_distribution<double> d(0, sd);
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = d(rng);
  return v;
}

template <int H, int C>
sublorentz::Point<double, H, C> random_point(std::mt19937_64& rng) {
  return {normal<H>(rng), normal<C>(rng)};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace testing
