#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eventvad/core.hpp"
#include "eventvad/fusion.hpp"

namespace eventvad::io {

struct ManifestEntry {
  std::string video_id;
  std::filesystem::path scores_path;
  std::filesystem::path mask_path;
  std::optional<std::filesystem::path> branch_errors_path;
};

struct Manifest {
  std::string dataset_name;
  std::vector<ManifestEntry> videos;
};

// Key/value text format:
//
//   # comment
//   dataset = SHT
//
//   [video]
//   id = 01_0014
//   scores = scores/01_0014.csv
//   mask = masks/01_0014.csv
//   branch_errors = branch/01_0014.txt   (optional)
//
// Relative paths are resolved against the manifest's directory.
Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                        const std::string& origin = "<manifest>");
Manifest load_manifest(const std::filesystem::path& path);
void write_manifest(std::ostream& out, const Manifest& manifest,
                    const std::filesystem::path& base_dir);

// Two-column headered CSV: "frame,score" / "frame,label", frame indices
// consecutive from 0.
ScoreSequence parse_scores(std::istream& in, const std::string& video_id,
                           const std::string& origin = "<scores>");
ScoreSequence load_scores(const std::filesystem::path& path,
                          const std::string& video_id);
void write_scores(std::ostream& out, const ScoreSequence& scores);

FrameMask parse_mask(std::istream& in, const std::string& video_id,
                     const std::string& origin = "<mask>");
FrameMask load_mask(const std::filesystem::path& path,
                    const std::string& video_id);
void write_mask(std::ostream& out, const FrameMask& mask);

// One record per line: target_start i short_1 .. short_i long_1 .. long_3i,
// whitespace separated. '#' starts a comment.
std::vector<BranchErrors> parse_branch_errors(
    std::istream& in, const std::string& origin = "<branch errors>");
std::vector<BranchErrors> load_branch_errors(const std::filesystem::path& path);
void write_branch_errors(std::ostream& out,
                         const std::vector<BranchErrors>& windows);

// "video_id,start,end" CSV. A row with empty start/end declares a video with
// no events.
std::vector<EventSet> parse_events(std::istream& in,
                                   const std::string& origin = "<events>");
std::vector<EventSet> load_events(const std::filesystem::path& path);
void write_events(std::ostream& out, const std::vector<EventSet>& sets);

// JSON object whose keys override EvalConfig defaults.
EvalConfig parse_config(const std::string& json_text,
                        const std::string& origin = "<config>");
EvalConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const EvalConfig& cfg);

std::string read_file(const std::filesystem::path& path);

}  // namespace eventvad::io
