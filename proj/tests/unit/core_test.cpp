#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "eventvad/core.hpp"

using namespace eventvad;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an eventvad::Error");
  return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("validate_pair accepts matching lengths") {
  ScoreSequence s("v", {0.1, 0.2, 0.3, 0.4, 0.5});
  FrameMask m("v", {0, 0, 1, 1, 0});
  CHECK_NOTHROW(validate_pair(s, m));
}

TEST_CASE("validate_pair rejects length mismatch") {
  ScoreSequence s("v", {0.1, 0.2, 0.3, 0.4, 0.5});
  FrameMask m("v", {0, 0, 1, 1});
  try {
    validate_pair(s, m);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLengthMismatch);
    CHECK(e.video_id() == "v");
    CHECK(std::string(e.what()).find("5 scores vs 4 labels") != std::string::npos);
  }
}

TEST_CASE("non-finite score reports its index") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    ScoreSequence s("v", {0.0, 1.0, nan, 2.0});
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonFiniteScore);
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
  CHECK(code_of([] {
          ScoreSequence("v", {std::numeric_limits<double>::infinity()});
        }) == ErrorCode::kNonFiniteScore);
}

TEST_CASE("labels must be binary and sequences non-empty") {
  CHECK(code_of([] { FrameMask("v", {0, 2}); }) == ErrorCode::kNonBinaryLabel);
  CHECK(code_of([] { FrameMask("v", {}); }) == ErrorCode::kLengthMismatch);
  CHECK(code_of([] { ScoreSequence("v", {}); }) == ErrorCode::kLengthMismatch);
}

TEST_CASE("event sets must be sorted, disjoint and non-adjacent") {
  CHECK_NOTHROW(EventSet("v", {{0, 2}, {4, 4}}));
  CHECK(code_of([] { EventSet("v", {{0, 2}, {3, 4}}); }) == ErrorCode::kInvalidEvent);
  CHECK(code_of([] { EventSet("v", {{4, 5}, {0, 1}}); }) == ErrorCode::kInvalidEvent);
  CHECK(code_of([] { EventSet("v", {{3, 2}}); }) == ErrorCode::kInvalidEvent);
  CHECK(TemporalEvent{3, 7}.duration() == 5);
}

TEST_CASE("config validation") {
  EvalConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.effective_micro_threshold() == cfg.min_event_len);

  auto bad = cfg;
  bad.vote_stride = 10;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidConfig);
  bad = cfg;
  bad.tiou_thresholds = {0.5, 0.2};
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidConfig);
  bad = cfg;
  bad.tiou_thresholds = {0.0};
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidConfig);
  bad = cfg;
  bad.sigma_max = 0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("f1 uses the zero convention") {
  CHECK(f1_score(0.0, 0.0) == 0.0);
  CHECK(f1_score(0.5, 0.5) == doctest::Approx(0.5));
  PrfCounts c{1, 1, 1};
  CHECK(c.precision() == 0.5);
  CHECK(c.recall() == 0.5);
  CHECK(c.f1() == doctest::Approx(0.5));
  CHECK(PrfCounts{}.f1() == 0.0);
}

TEST_CASE("value types compare structurally") {
  CHECK(ScoreSequence("a", {1.0, 2.0}) == ScoreSequence("a", {1.0, 2.0}));
  CHECK_FALSE(FrameMask("a", {0, 1}) == FrameMask("b", {0, 1}));
  CHECK(threshold_strategy_from_string("HPRS") == ThresholdStrategy::kHprs);
  CHECK(code_of([] { threshold_strategy_from_string("median"); }) ==
        ErrorCode::kInvalidConfig);
}
