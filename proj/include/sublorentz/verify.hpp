#pragma once

#include "sublorentz/io.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace sublorentz {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Worker count: SUBLORENTZ_THREADS if set to a positive integer, otherwise
/// the hardware concurrency.
unsigned thread_budget();

/// Independent per-sample seed, so results do not depend on the thread count.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Runs body(i) for i in [0, n) on up to `threads` workers with static
/// contiguous chunks. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// v0 ~ N(0, 1), theta ~ U(-2, 2).
HeisIVP<double> random_heis_ivp(std::mt19937_64& rng);
/// v0 ~ N(0, 1), theta ~ U(-2, 2), redrawn until theta1^2 + theta2^2 >= planar |theta|^2.
QuatIVPd random_quat_ivp(std::mt19937_64& rng, double planar = 0.01);

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t n = 0;  // 0 picks the suite default
  unsigned threads = 1;
};

struct SuiteResult {
  json report;
  bool passed = false;
};

/// Record of one asserted (or merely reported) quantity.
struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool asserted = true;
  bool upper = true;  // value <= tolerance when true, value >= tolerance otherwise

  bool ok() const { return !asserted || (upper ? value <= tolerance : value >= tolerance); }
};

SuiteResult verify_mu(const SuiteOptions& opt);
SuiteResult verify_coefficients(const SuiteOptions& opt);
SuiteResult verify_identities(const SuiteOptions& opt);
SuiteResult verify_inclusion_suite(const SuiteOptions& opt);
SuiteResult verify_crosscheck(const SuiteOptions& opt);

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace sublorentz
