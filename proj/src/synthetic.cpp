#include "eventvad/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "eventvad/smoothing.hpp"

namespace eventvad::synthetic {

namespace fs = std::filesystem;

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::uniform_int(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::size_t>(engine_() % span);
}

double Rng::normal(double mean, double stddev) {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return mean + stddev * z;
}

namespace {

constexpr std::size_t kMargin = 30;

std::vector<TemporalEvent> plant_events(Rng& rng, std::size_t n,
                                        const FixtureOptions& o) {
  const std::size_t want = rng.uniform_int(1, std::max<std::size_t>(1, o.max_events_per_video));
  std::vector<TemporalEvent> events;
  std::size_t cursor = kMargin;
  for (std::size_t k = 0; k < want; ++k) {
    const std::size_t len = rng.uniform_int(o.min_event_len, o.max_event_len);
    const std::size_t remaining_after = (want - k - 1) * (o.min_event_len + kMargin);
    if (cursor + len + kMargin + remaining_after > n) break;
    const std::size_t slack = n - (cursor + len + kMargin + remaining_after);
    const std::size_t start = cursor + rng.uniform_int(0, slack / 2);
    events.push_back({start, start + len - 1});
    cursor = start + len + kMargin;
  }
  return events;
}

std::vector<BranchErrors> make_branches(Rng& rng, std::span<const double> level,
                                        std::size_t window_len) {
  const std::size_t n = level.size();
  // Frame-wise reconstruction error per branch; the long branch sees a
  // steadier signal than the short one.
  std::vector<double> short_err(n);
  std::vector<double> long_err(n);
  for (std::size_t t = 0; t < n; ++t) {
    short_err[t] = std::max(0.0, level[t] + rng.normal(0.0, 0.25));
    long_err[t] = std::max(0.0, level[t] + rng.normal(0.0, 0.1));
  }
  std::vector<BranchErrors> windows;
  for (std::size_t start = 0; start + window_len <= n; start += window_len) {
    std::vector<double> s(short_err.begin() + start,
                          short_err.begin() + start + window_len);
    std::vector<double> l(3 * window_len);
    for (std::size_t k = 0; k < l.size(); ++k) {
      const auto idx = static_cast<std::ptrdiff_t>(start + k) -
                       static_cast<std::ptrdiff_t>(window_len);
      l[k] = long_err[reflect_index(idx, n)];
    }
    windows.emplace_back(start, std::move(s), std::move(l));
  }
  return windows;
}

}  // namespace

std::vector<VideoData> generate_fixture(const FixtureOptions& o) {
  if (o.videos == 0 || o.min_frames > o.max_frames ||
      o.min_event_len > o.max_event_len || o.min_event_len == 0 ||
      o.window_len == 0) {
    throw Error(ErrorCode::kInvalidConfig, "inconsistent fixture options");
  }
  Rng rng(o.seed);
  std::vector<VideoData> videos;
  videos.reserve(o.videos);
  for (std::size_t v = 0; v < o.videos; ++v) {
    char id[32];
    std::snprintf(id, sizeof(id), "video_%03zu", v);
    const std::size_t n = rng.uniform_int(o.min_frames, o.max_frames);
    const auto events = plant_events(rng, n, o);

    std::vector<std::uint8_t> labels(n, 0);
    for (const auto& e : events) {
      std::fill(labels.begin() + e.start, labels.begin() + e.end + 1, 1);
    }
    std::vector<double> level(n);
    std::vector<double> scores(n);
    for (std::size_t t = 0; t < n; ++t) {
      level[t] = labels[t] ? o.anomaly_level : o.normal_level;
      scores[t] = level[t] + rng.normal(0.0, o.noise_sd);
    }
    std::optional<std::vector<BranchErrors>> branches;
    if (o.branch_errors) branches = make_branches(rng, level, o.window_len);
    videos.push_back(VideoData{ScoreSequence(id, std::move(scores)),
                               FrameMask(id, std::move(labels)),
                               std::move(branches)});
  }
  return videos;
}

fs::path write_fixture(const std::vector<VideoData>& videos, const fs::path& dir,
                       const std::string& dataset_name) {
  std::error_code ec;
  fs::create_directories(dir / "scores", ec);
  fs::create_directories(dir / "masks", ec);
  if (ec) {
    throw Error(ErrorCode::kIoError, "cannot create fixture directories: " +
                                         ec.message(), {}, dir.string());
  }
  auto open = [](const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write file", {}, p.string());
    return out;
  };

  io::Manifest manifest;
  manifest.dataset_name = dataset_name;
  for (const auto& v : videos) {
    io::ManifestEntry entry;
    entry.video_id = v.video_id();
    entry.scores_path = fs::path("scores") / (v.video_id() + ".csv");
    entry.mask_path = fs::path("masks") / (v.video_id() + ".csv");
    {
      auto out = open(dir / entry.scores_path);
      io::write_scores(out, v.scores);
    }
    {
      auto out = open(dir / entry.mask_path);
      io::write_mask(out, v.mask);
    }
    if (v.branch_windows) {
      fs::create_directories(dir / "branch", ec);
      entry.branch_errors_path = fs::path("branch") / (v.video_id() + ".txt");
      auto out = open(dir / *entry.branch_errors_path);
      io::write_branch_errors(out, *v.branch_windows);
    }
    manifest.videos.push_back(std::move(entry));
  }
  const fs::path manifest_path = dir / "manifest.txt";
  auto out = open(manifest_path);
  io::write_manifest(out, manifest, dir);
  return manifest_path;
}

}  // namespace eventvad::synthetic
