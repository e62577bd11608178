#include "support.hpp"

#include <cstdlib>

using namespace sublorentz;

TEST_CASE("shortest round-trip decimals") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, double(int(rng() % 40)) - 20);
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e300) == "1e+300");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("tables") {
  Table t{{"a", "b"}, {}};
  t.add_row({1, 0.25});
  t.add_row({-2, 1e-20});
  CHECK(t.csv() == "a,b\n1,0.25\n-2,1e-20\n");
  CHECK_THROWS_AS(t.add_row({1}), std::invalid_argument);
  CHECK(dump(t.to_json()) == "{\n  \"columns\": [\n    \"a\",\n    \"b\"\n  ],\n  \"rows\": [\n    [\n      1.0,\n      0.25\n    ],\n    [\n      -2.0,\n      1e-20\n    ]\n  ]\n}\n");
}

TEST_CASE("parallel results do not depend on the worker count") {
  auto run = [](unsigned threads) {
    std::vector<double> out(257);
    parallel_for(out.size(), threads, [&](std::size_t i) {
      std::mt19937_64 rng(sample_seed(7, i));
      out[i] = std::normal_distribution<double>()(rng);
    });
    return out;
  };
  const auto a = run(1);
  CHECK(a == run(3));
  CHECK(a == run(64));
  CHECK(sample_seed(7, 0) != sample_seed(7, 1));
  CHECK(sample_seed(7, 0) != sample_seed(8, 0));
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("thread budget honours the environment") {
  setenv("SUBLORENTZ_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  setenv("SUBLORENTZ_THREADS", "zero", 1);
  CHECK(thread_budget() >= 1);
  unsetenv("SUBLORENTZ_THREADS");
}

TEST_CASE("suite reports are reproducible") {
  SuiteOptions a;
  a.n = 50;
  a.threads = 1;
  SuiteOptions b = a;
  b.threads = 4;
  CHECK(dump(run_suite("mu", a).report) == dump(run_suite("mu", b).report));
  CHECK(dump(run_suite("inclusion", a).report) == dump(run_suite("inclusion", b).report));
  CHECK_THROWS_AS(run_suite("nope", a), std::invalid_argument);
}

TEST_CASE("check semantics behind the verification exit status") {
  CHECK(Check{"a", 1e-13, 1e-12}.ok());
  CHECK_FALSE(Check{"a", 2e-12, 1e-12}.ok());
  CHECK(Check{"a", 2e-12, 1e-12, false}.ok());
  CHECK(Check{"count", 75, 40, true, false}.ok());
  CHECK_FALSE(Check{"count", 39, 40, true, false}.ok());
  CHECK_FALSE(Check{"nan", std::nan(""), 1}.ok());
}
