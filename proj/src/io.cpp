#include "eventvad/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json_conv.hpp"

namespace eventvad::io {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line,
                             const std::string& what,
                             const std::string& video_id = {}) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what, video_id, origin);
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_size(const std::string& text, std::size_t& out) {
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return !text.empty() && ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::ifstream open_input(const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kMissingFile, "file does not exist", {},
                path.string());
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open file for reading", {},
                path.string());
  }
  return in;
}

// Reads "frame,<value_name>" CSV rows, handing each value string to sink.
template <typename Sink>
void read_two_column(std::istream& in, const std::string& value_name,
                     const std::string& video_id, const std::string& origin,
                     Sink&& sink) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t expected_frame = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto fields = split_csv(row);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "frame" || fields[1] != value_name) {
        parse_fail(origin, line_no, "expected header 'frame," + value_name + "'",
                   video_id);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      parse_fail(origin, line_no, "expected 2 columns", video_id);
    }
    std::size_t frame = 0;
    if (!parse_size(fields[0], frame)) {
      parse_fail(origin, line_no, "bad frame index '" + fields[0] + "'",
                 video_id);
    }
    if (frame != expected_frame) {
      parse_fail(origin, line_no,
                 "frame index " + std::to_string(frame) + ", expected " +
                     std::to_string(expected_frame),
                 video_id);
    }
    sink(fields[1], line_no);
    ++expected_frame;
  }
  if (!header_seen) parse_fail(origin, line_no, "missing header", video_id);
  if (expected_frame == 0) parse_fail(origin, line_no, "no frames", video_id);
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Manifest parse_manifest(std::istream& in, const fs::path& base_dir,
                        const std::string& origin) {
  Manifest manifest;
  std::map<std::string, std::string> current;
  std::size_t current_line = 0;
  bool in_video = false;
  std::set<std::string> ids;

  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  auto flush = [&]() {
    if (!in_video) return;
    for (const char* key : {"id", "scores", "mask"}) {
      if (!current.count(key)) {
        parse_fail(origin, current_line,
                   std::string("[video] record missing '") + key + "'");
      }
    }
    ManifestEntry entry;
    entry.video_id = current["id"];
    if (!ids.insert(entry.video_id).second) {
      throw Error(ErrorCode::kDuplicateVideoId,
                  "video id appears more than once", entry.video_id, origin);
    }
    entry.scores_path = resolve(current["scores"]);
    entry.mask_path = resolve(current["mask"]);
    if (current.count("branch_errors")) {
      entry.branch_errors_path = resolve(current["branch_errors"]);
    }
    manifest.videos.push_back(std::move(entry));
    current.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string row = trim(line.substr(0, hash));
    if (row.empty()) continue;
    if (row == "[video]") {
      flush();
      in_video = true;
      current_line = line_no;
      continue;
    }
    if (row.front() == '[') parse_fail(origin, line_no, "unknown section " + row);
    const auto eq = row.find('=');
    if (eq == std::string::npos) parse_fail(origin, line_no, "expected key = value");
    const std::string key = trim(row.substr(0, eq));
    const std::string value = trim(row.substr(eq + 1));
    if (value.empty()) parse_fail(origin, line_no, "empty value for '" + key + "'");
    if (!in_video) {
      if (key != "dataset") parse_fail(origin, line_no, "unknown key '" + key + "'");
      manifest.dataset_name = value;
      continue;
    }
    static const std::set<std::string> kVideoKeys = {"id", "scores", "mask",
                                                     "branch_errors"};
    if (!kVideoKeys.count(key)) {
      parse_fail(origin, line_no, "unknown key '" + key + "'");
    }
    if (current.count(key)) parse_fail(origin, line_no, "repeated key '" + key + "'");
    current[key] = value;
  }
  flush();
  if (manifest.videos.empty()) {
    parse_fail(origin, line_no, "manifest lists no videos");
  }
  return manifest;
}

Manifest load_manifest(const fs::path& path) {
  std::ifstream in = open_input(path);
  Manifest m = parse_manifest(in, path.parent_path(), path.string());
  for (const auto& v : m.videos) {
    std::vector<fs::path> required = {v.scores_path, v.mask_path};
    if (v.branch_errors_path) required.push_back(*v.branch_errors_path);
    for (const auto& p : required) {
      if (!fs::exists(p)) {
        throw Error(ErrorCode::kMissingFile, "referenced file does not exist",
                    v.video_id, p.string());
      }
    }
  }
  return m;
}

void write_manifest(std::ostream& out, const Manifest& manifest,
                    const fs::path& base_dir) {
  auto rel = [&](const fs::path& p) {
    return p.is_absolute() ? p.lexically_relative(base_dir).generic_string()
                           : p.generic_string();
  };
  out << "dataset = " << manifest.dataset_name << "\n";
  for (const auto& v : manifest.videos) {
    out << "\n[video]\n";
    out << "id = " << v.video_id << "\n";
    out << "scores = " << rel(v.scores_path) << "\n";
    out << "mask = " << rel(v.mask_path) << "\n";
    if (v.branch_errors_path) {
      out << "branch_errors = " << rel(*v.branch_errors_path) << "\n";
    }
  }
}

ScoreSequence parse_scores(std::istream& in, const std::string& video_id,
                           const std::string& origin) {
  std::vector<double> scores;
  read_two_column(in, "score", video_id, origin,
                  [&](const std::string& value, std::size_t line_no) {
                    double v = 0.0;
                    if (!parse_double(value, v)) {
                      parse_fail(origin, line_no, "bad score '" + value + "'",
                                 video_id);
                    }
                    if (!std::isfinite(v)) {
                      throw Error(ErrorCode::kNonFiniteScore,
                                  "non-finite score at index " +
                                      std::to_string(scores.size()),
                                  video_id, origin);
                    }
                    scores.push_back(v);
                  });
  return ScoreSequence(video_id, std::move(scores));
}

ScoreSequence load_scores(const fs::path& path, const std::string& video_id) {
  std::ifstream in = open_input(path);
  return parse_scores(in, video_id, path.string());
}

void write_scores(std::ostream& out, const ScoreSequence& scores) {
  out << "frame,score\n";
  for (std::size_t t = 0; t < scores.size(); ++t) {
    out << t << ',' << format_double(scores.values()[t]) << '\n';
  }
}

FrameMask parse_mask(std::istream& in, const std::string& video_id,
                     const std::string& origin) {
  std::vector<std::uint8_t> labels;
  read_two_column(in, "label", video_id, origin,
                  [&](const std::string& value, std::size_t line_no) {
                    std::size_t v = 0;
                    if (!parse_size(value, v)) {
                      double d = 0.0;
                      if (!parse_double(value, d)) {
                        parse_fail(origin, line_no, "bad label '" + value + "'",
                                   video_id);
                      }
                      v = 2;  // numeric but not an integer label
                    }
                    if (v > 1) {
                      throw Error(ErrorCode::kNonBinaryLabel,
                                  "label '" + value + "' at index " +
                                      std::to_string(labels.size()),
                                  video_id, origin);
                    }
                    labels.push_back(static_cast<std::uint8_t>(v));
                  });
  return FrameMask(video_id, std::move(labels));
}

FrameMask load_mask(const fs::path& path, const std::string& video_id) {
  std::ifstream in = open_input(path);
  return parse_mask(in, video_id, path.string());
}

void write_mask(std::ostream& out, const FrameMask& mask) {
  out << "frame,label\n";
  for (std::size_t t = 0; t < mask.size(); ++t) {
    out << t << ',' << static_cast<int>(mask.values()[t]) << '\n';
  }
}

std::vector<BranchErrors> parse_branch_errors(std::istream& in,
                                              const std::string& origin) {
  std::vector<BranchErrors> windows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line.substr(0, line.find('#')));
    if (row.empty()) continue;
    std::istringstream ss(row);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    std::size_t start = 0;
    std::size_t len = 0;
    if (tokens.size() < 2 || !parse_size(tokens[0], start) ||
        !parse_size(tokens[1], len)) {
      parse_fail(origin, line_no, "expected 'target_start i values...'");
    }
    if (len == 0 || tokens.size() - 2 != 4 * len) {
      throw Error(ErrorCode::kBadLength,
                  "line " + std::to_string(line_no) + ": window length " +
                      std::to_string(len) + " needs " +
                      std::to_string(4 * len) + " values, got " +
                      std::to_string(tokens.size() - 2),
                  {}, origin);
    }
    std::vector<double> values(4 * len);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!parse_double(tokens[k + 2], values[k])) {
        parse_fail(origin, line_no, "bad value '" + tokens[k + 2] + "'");
      }
    }
    try {
      windows.emplace_back(
          start, std::vector<double>(values.begin(), values.begin() + len),
          std::vector<double>(values.begin() + len, values.end()));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.message(),
                  {}, origin);
    }
  }
  return windows;
}

std::vector<BranchErrors> load_branch_errors(const fs::path& path) {
  std::ifstream in = open_input(path);
  return parse_branch_errors(in, path.string());
}

void write_branch_errors(std::ostream& out,
                         const std::vector<BranchErrors>& windows) {
  out << "# target_start i short[i] long[3i]\n";
  for (const auto& w : windows) {
    out << w.target_start() << ' ' << w.window_len();
    for (double v : w.short_errors()) out << ' ' << format_double(v);
    for (double v : w.long_errors()) out << ' ' << format_double(v);
    out << '\n';
  }
}

std::vector<EventSet> parse_events(std::istream& in, const std::string& origin) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<TemporalEvent>> by_video;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto fields = split_csv(row);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"video_id", "start", "end"}) {
        parse_fail(origin, line_no, "expected header 'video_id,start,end'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3 || fields[0].empty()) {
      parse_fail(origin, line_no, "expected 'video_id,start,end'");
    }
    auto [it, inserted] = by_video.try_emplace(fields[0]);
    if (inserted) order.push_back(fields[0]);
    if (fields[1].empty() && fields[2].empty()) continue;
    TemporalEvent e;
    if (!parse_size(fields[1], e.start) || !parse_size(fields[2], e.end)) {
      parse_fail(origin, line_no, "bad event bounds", fields[0]);
    }
    it->second.push_back(e);
  }
  if (!header_seen) parse_fail(origin, line_no, "missing header");
  std::vector<EventSet> sets;
  for (const auto& id : order) {
    auto events = std::move(by_video[id]);
    std::sort(events.begin(), events.end(),
              [](const TemporalEvent& a, const TemporalEvent& b) {
                return a.start < b.start;
              });
    try {
      sets.emplace_back(id, std::move(events));
    } catch (const Error& e) {
      throw e.with_origin(id, origin);
    }
  }
  return sets;
}

std::vector<EventSet> load_events(const fs::path& path) {
  std::ifstream in = open_input(path);
  return parse_events(in, path.string());
}

void write_events(std::ostream& out, const std::vector<EventSet>& sets) {
  out << "video_id,start,end\n";
  for (const auto& s : sets) {
    if (s.empty()) {
      out << s.video_id() << ",,\n";
      continue;
    }
    for (const auto& e : s.events()) {
      out << s.video_id() << ',' << e.start << ',' << e.end << '\n';
    }
  }
}

EvalConfig parse_config(const std::string& json_text, const std::string& origin) {
  ojson j;
  try {
    j = ojson::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what(), {}, origin);
  }
  return config_from_json(j, origin);
}

EvalConfig load_config(const fs::path& path) {
  return parse_config(read_file(path), path.string());
}

std::string config_to_json(const EvalConfig& cfg) {
  return to_json_value(cfg).dump(2);
}

}  // namespace eventvad::io
