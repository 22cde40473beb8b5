#include <doctest.h>

#include <random>

#include "eventvad/thresholds.hpp"
#include "oracles.hpp"

using namespace eventvad;

namespace {

const std::vector<double> kScores = {0.1, 0.4, 0.35, 0.8};
const std::vector<std::uint8_t> kLabels = {0, 0, 1, 1};

struct Fixture {
  std::vector<double> s;
  std::vector<std::uint8_t> y;
};

// Scores on a coarse grid so ties are common.
Fixture random_fixture(std::mt19937_64& rng, std::size_t n) {
  Fixture f;
  do {
    f.s.assign(n, 0.0);
    f.y.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      f.y[i] = rng() % 3 == 0;
      f.s[i] = static_cast<double>(rng() % 40) / 10.0 + (f.y[i] ? 0.8 : 0.0);
    }
  } while (std::count(f.y.begin(), f.y.end(), 1) == 0 ||
           std::count(f.y.begin(), f.y.end(), 0) == 0);
  return f;
}

}  // namespace

TEST_CASE("reference fixture: AUC-ROC by pair counting") {
  // Pairs (pos, neg): (0.35,0.1) ok, (0.35,0.4) wrong, (0.8,0.1) ok, (0.8,0.4) ok.
  CHECK(oracle::pair_counting_auc(kScores, kLabels) == 0.75);
  CHECK(auc_roc(roc_curve(kScores, kLabels)) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("reference fixture: AUC-PR, EER and H_prs") {
  CHECK(oracle::sweep_auc_pr(kScores, kLabels) == doctest::Approx(5.0 / 6.0));
  CHECK(auc_pr(kScores, kLabels) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));

  const auto eer = eer_threshold(roc_curve(kScores, kLabels));
  CHECK(eer.tau == 0.4);
  CHECK(eer.eer == 0.5);
  const auto ref = oracle::sweep_eer(kScores, kLabels);
  CHECK(eer.tau == ref.tau);
  CHECK(eer.eer == ref.eer);

  // F0.5 at 0.8 is 1.25 / 1.5; every lower threshold scores less.
  CHECK(hprs_threshold(kScores, kLabels, 0.5) == 0.8);
}

TEST_CASE("reference fixture: F1 at tau=0.375") {
  const auto prf = f1_at_threshold(kScores, kLabels, 0.375);
  CHECK(prf.precision == 0.5);
  CHECK(prf.recall == 0.5);
  CHECK(prf.f1 == doctest::Approx(0.5));
}

TEST_CASE("f1_at_threshold extremes") {
  const auto low = f1_at_threshold(kScores, kLabels, -10.0);
  CHECK(low.recall == 1.0);
  CHECK(low.precision == 0.5);
  const auto high = f1_at_threshold(kScores, kLabels, 10.0);
  CHECK(high.precision == 0.0);
  CHECK(high.recall == 0.0);
  CHECK(high.f1 == 0.0);
}

TEST_CASE("perfect and inverted rankings") {
  const std::vector<double> s = {0.1, 0.2, 0.3, 0.7, 0.8, 0.9};
  const std::vector<std::uint8_t> y = {0, 0, 0, 1, 1, 1};
  const std::vector<std::uint8_t> inv = {1, 1, 1, 0, 0, 0};
  CHECK(auc_roc(roc_curve(s, y)) == 1.0);
  CHECK(auc_roc(roc_curve(s, inv)) == 0.0);
  CHECK(auc_pr(s, y) == 1.0);
  const auto eer = eer_threshold(roc_curve(s, y));
  CHECK(eer.eer == 0.0);
  CHECK(eer.tau == 0.7);
  // Any threshold in (0.3, 0.7] is perfect; the highest observed one wins.
  CHECK(hprs_threshold(s, y, 0.5) == 0.7);
}

TEST_CASE("all-positive labels give AUC-PR 1") {
  const std::vector<double> s = {0.3, 0.1, 0.9};
  const std::vector<std::uint8_t> y = {1, 1, 1};
  CHECK(auc_pr(s, y) == 1.0);
}

TEST_CASE("degenerate labels") {
  const std::vector<double> s = {0.3, 0.1, 0.9};
  const std::vector<std::uint8_t> zeros = {0, 0, 0};
  CHECK_THROWS_AS(roc_curve(s, zeros), Error);
  CHECK_THROWS_AS(auc_pr(s, zeros), Error);
  CHECK_THROWS_AS(hprs_threshold(s, zeros, 0.5), Error);
  try {
    roc_curve(s, zeros);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateLabels);
  }
}

TEST_CASE("ROC curve invariants") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_fixture(rng, 5 + rng() % 60);
    const auto curve = roc_curve(f.s, f.y);
    REQUIRE(curve.points.size() >= 3);
    CHECK(curve.points.front().threshold == -std::numeric_limits<double>::infinity());
    CHECK(curve.points.back().threshold == std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
      const auto& p = curve.points[k];
      CHECK(p.tpr == doctest::Approx(1.0 - p.frr));
      CHECK(p.fpr == p.far);
      if (k > 0) {
        CHECK(p.threshold >= curve.points[k - 1].threshold);
        CHECK(p.tpr <= curve.points[k - 1].tpr);
        CHECK(p.fpr <= curve.points[k - 1].fpr);
      }
    }
  }
}

TEST_CASE("PR curve recall is non-increasing in threshold") {
  std::mt19937_64 rng(8);
  const auto f = random_fixture(rng, 80);
  const auto curve = pr_curve(f.s, f.y);
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    CHECK(curve.points[k].recall <= curve.points[k - 1].recall);
  }
}

TEST_CASE("sweep oracles agree on random fixtures") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_fixture(rng, 2 + rng() % 150);
    const auto curve = roc_curve(f.s, f.y);
    CHECK(std::abs(auc_roc(curve) - oracle::pair_counting_auc(f.s, f.y)) <= 1e-9);
    CHECK(std::abs(auc_pr(f.s, f.y) - oracle::sweep_auc_pr(f.s, f.y)) <= 1e-9);
    const auto eer = eer_threshold(curve);
    const auto ref = oracle::sweep_eer(f.s, f.y);
    CHECK(eer.tau == ref.tau);
    CHECK(eer.eer == ref.eer);
    for (double beta : {0.5, 1.0, 2.0}) {
      CHECK(hprs_threshold(f.s, f.y, beta) == oracle::sweep_hprs(f.s, f.y, beta));
    }
  }
}

TEST_CASE("H_prs with seeded n=200 fixture equals exhaustive argmax") {
  std::mt19937_64 rng(200);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> s(200);
  std::vector<std::uint8_t> y(200);
  for (std::size_t i = 0; i < s.size(); ++i) {
    y[i] = i % 4 == 0;
    s[i] = noise(rng) + (y[i] ? 1.2 : 0.0);
  }
  CHECK(hprs_threshold(s, y, 0.5) == oracle::sweep_hprs(s, y, 0.5));
}

TEST_CASE("beta=1 selects the F1-maximizing threshold") {
  std::mt19937_64 rng(4);
  const auto f = random_fixture(rng, 90);
  const double tau = hprs_threshold(f.s, f.y, 1.0);
  const double best = f1_at_threshold(f.s, f.y, tau).f1;
  for (double t : oracle::distinct(f.s)) {
    CHECK(f1_at_threshold(f.s, f.y, t).f1 <= best + 1e-15);
  }
}

TEST_CASE("strictly increasing transforms leave metrics unchanged") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_fixture(rng, 10 + rng() % 100);
    std::vector<double> g(f.s.size());
    std::transform(f.s.begin(), f.s.end(), g.begin(),
                   [](double v) { return 3.0 * v + 2.0; });
    const auto a = compute_frame_metrics(f.s, f.y);
    const auto b = compute_frame_metrics(g, f.y);
    CHECK(a.auc_roc == doctest::Approx(b.auc_roc));
    CHECK(a.auc_pr == doctest::Approx(b.auc_pr));
    CHECK(a.eer == b.eer);
    CHECK(b.tau_eer == doctest::Approx(3.0 * a.tau_eer + 2.0));
    CHECK(b.tau_hprs == doctest::Approx(3.0 * a.tau_hprs + 2.0));
  }
}

TEST_CASE("stricter H_prs threshold does not lose precision on monotone fixtures") {
  // Anomaly probability rises with the score, so precision rises with tau.
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s(400);
    std::vector<std::uint8_t> y(400);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = static_cast<double>(i) / s.size();
      y[i] = (rng() % 1000) < 1000 * s[i] * s[i];
    }
    const auto m = compute_frame_metrics(s, y);
    if (m.tau_hprs > m.tau_eer) {
      CHECK(f1_at_threshold(s, y, m.tau_hprs).precision >=
            f1_at_threshold(s, y, m.tau_eer).precision);
    }
  }
}

TEST_CASE("random scores give chance-level AUC") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(20000);
  std::vector<std::uint8_t> y(20000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = u(rng);
    y[i] = rng() % 2;
  }
  CHECK(std::abs(auc_roc(roc_curve(s, y)) - 0.5) < 0.05);
}

TEST_CASE("concatenate validates each pair") {
  std::vector<ScoreSequence> s = {ScoreSequence("a", {0.1, 0.2}),
                                  ScoreSequence("b", {0.3})};
  std::vector<FrameMask> m = {FrameMask("a", {0, 1}), FrameMask("b", {1})};
  const auto data = concatenate(s, m);
  CHECK(data.scores == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(data.labels == std::vector<std::uint8_t>{0, 1, 1});
  m[1] = FrameMask("b", {1, 0});
  CHECK_THROWS_AS(concatenate(s, m), Error);
}
