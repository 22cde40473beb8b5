#include <doctest.h>

#include <algorithm>
#include <random>

#include "eventvad/smoothing.hpp"
#include "oracles.hpp"

using namespace eventvad;

TEST_CASE("kernel sigma=1 radius=1 matches closed form") {
  const auto k = build_kernel(1.0, 1);
  REQUIRE(k.weights.size() == 3);
  // exp(-1/2) / (1 + 2 exp(-1/2)) and 1 / (1 + 2 exp(-1/2))
  CHECK(k.weights[0] == doctest::Approx(0.27406862).epsilon(1e-7));
  CHECK(k.weights[1] == doctest::Approx(0.45186276).epsilon(1e-7));
  CHECK(k.weights[2] == k.weights[0]);
}

TEST_CASE("kernel invariants") {
  for (double sigma : {0.3, 1.0, 2.5, 7.0}) {
    for (std::size_t radius : {1u, 2u, 5u, 21u}) {
      const auto k = build_kernel(sigma, radius);
      double sum = 0.0;
      for (std::size_t j = 0; j < k.weights.size(); ++j) {
        CHECK(k.weights[j] >= 0.0);  // far tails of narrow kernels underflow
        CHECK(k.weights[j] == k.weights[k.weights.size() - 1 - j]);
        CHECK(k.weights[j] <= k.weights[radius]);
        sum += k.weights[j];
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("wide kernel approaches the box filter monotonically") {
  double prev_gap = 1.0;
  for (double sigma : {1.0, 2.0, 5.0, 20.0, 100.0, 1000.0}) {
    const auto k = build_kernel(sigma, 1);
    const double gap = std::abs(k.weights[1] - 1.0 / 3.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-6);
}

TEST_CASE("invalid sigma") {
  CHECK_THROWS_AS(build_kernel(0.0, 1), Error);
  CHECK_THROWS_AS(build_kernel(-1.0, 1), Error);
  CHECK_THROWS_AS(hierarchical_smooth(std::vector<double>{1.0}, 0), Error);
}

TEST_CASE("reflect index mirrors without repeating the edge") {
  CHECK(reflect_index(-1, 5) == 1);
  CHECK(reflect_index(-2, 5) == 2);
  CHECK(reflect_index(5, 5) == 3);
  CHECK(reflect_index(6, 5) == 2);
  CHECK(reflect_index(-9, 5) == 1);
  CHECK(reflect_index(3, 1) == 0);
  for (long long i = -40; i < 40; ++i) {
    CHECK(reflect_index(i, 4) == oracle::fold(i, 4));
  }
}

TEST_CASE("impulse response with sigma=1 radius=1") {
  const auto out = smooth_once(std::vector<double>{0, 0, 1, 0, 0}, build_kernel(1.0, 1));
  const std::vector<double> expected = {0, 0.27406862, 0.45186276, 0.27406862, 0};
  for (std::size_t t = 0; t < out.size(); ++t) {
    CHECK(out[t] == doctest::Approx(expected[t]).epsilon(1e-7));
  }
}

TEST_CASE("constant sequences are an exact fixed point") {
  const std::vector<double> c(37, 0.731);
  CHECK(smooth_once(c, build_kernel(2.0, 6)) == c);
  for (int sm = 1; sm <= 6; ++sm) CHECK(hierarchical_smooth(c, sm) == c);
  const std::vector<double> single = {4.25};
  CHECK(hierarchical_smooth(single, 5) == single);
}

TEST_CASE("smooth_once matches the naive convolution and preserves range") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-3.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 120;
    std::vector<double> x(n);
    for (auto& v : x) v = val(rng);
    const double sigma = 0.5 + (rng() % 80) / 10.0;
    const std::size_t radius = default_radius(sigma);
    const auto fast = smooth_once(x, build_kernel(sigma, radius));
    const auto slow = oracle::naive_smooth(x, sigma, static_cast<long long>(radius));
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    for (std::size_t t = 0; t < n; ++t) {
      CHECK(std::abs(fast[t] - slow[t]) <= 1e-12);
      CHECK(fast[t] >= *lo - 1e-12);
      CHECK(fast[t] <= *hi + 1e-12);
    }
  }
}

TEST_CASE("mass is conserved when the signal is flat near both edges") {
  std::vector<double> x(200, 0.0);
  for (std::size_t t = 60; t < 140; ++t) x[t] = (t % 7) * 0.3;
  const auto out = smooth_once(x, build_kernel(4.0, 12));
  double in_sum = 0.0, out_sum = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    in_sum += x[t];
    out_sum += out[t];
  }
  CHECK(std::abs(in_sum / x.size() - out_sum / x.size()) <= 1e-9);
}

TEST_CASE("hierarchical_smooth with sigma_max=1 is a single pass") {
  const std::vector<double> x = {0.1, 0.9, 0.3, 0.3, 0.8, 0.2, 0.5};
  CHECK(hierarchical_smooth(x, 1) == smooth_once(x, build_kernel(1.0, 3)));
}

TEST_CASE("alternating signal loses variance") {
  std::vector<double> x(64);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = t % 2;
  CHECK(oracle::variance(x) == doctest::Approx(0.25));
  const auto out = hierarchical_smooth(x, 3);
  CHECK(oracle::variance(out) < oracle::variance(x));
}

TEST_CASE("variance does not grow with sigma_max") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> x(300);
    for (auto& v : x) v = noise(rng);
    double prev = oracle::variance(x);
    for (int sm = 1; sm <= 6; ++sm) {
      const double var = oracle::variance(hierarchical_smooth(x, sm));
      CHECK(var <= prev + 1e-15);
      prev = var;
    }
  }
}

TEST_CASE("ScoreSequence overloads keep metadata") {
  ScoreSequence s("clip", {1.0, 2.0, 3.0}, 24.0);
  const auto out = hierarchical_smooth(s, 2);
  CHECK(out.video_id() == "clip");
  CHECK(out.fps() == 24.0);
  CHECK(out.size() == 3);
}
