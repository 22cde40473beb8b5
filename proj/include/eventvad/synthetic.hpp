#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "eventvad/report.hpp"

namespace eventvad::synthetic {

// Platform-independent draws on top of std::mt19937_64, whose output sequence
// is fixed by the standard (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                              // [0, 1)
  double uniform(double lo, double hi);          // [lo, hi)
  std::size_t uniform_int(std::size_t lo, std::size_t hi);  // [lo, hi]
  double normal(double mean = 0.0, double stddev = 1.0);

 private:
  std::mt19937_64 engine_;
};

struct FixtureOptions {
  std::size_t videos = 20;
  std::size_t min_frames = 800;
  std::size_t max_frames = 1600;
  std::size_t min_event_len = 60;
  std::size_t max_event_len = 300;
  std::size_t max_events_per_video = 3;
  double normal_level = 0.3;
  double anomaly_level = 0.7;
  double noise_sd = 0.2;  // i.i.d. per-frame noise; fragments raw binarization
  bool branch_errors = false;
  std::size_t window_len = 16;  // dual-branch target window i
  std::uint64_t seed = 7;
};

// Planted events are separated by at least 30 normal frames and kept 30
// frames away from both clip ends.
std::vector<VideoData> generate_fixture(const FixtureOptions& options);

// Writes manifest.txt plus scores/, masks/ (and branch/) under dir and
// returns the manifest path.
std::filesystem::path write_fixture(const std::vector<VideoData>& videos,
                                    const std::filesystem::path& dir,
                                    const std::string& dataset_name);

}  // namespace eventvad::synthetic
