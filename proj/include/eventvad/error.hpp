#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eventvad {

enum class ErrorCode {
  kLengthMismatch,
  kNonFiniteScore,
  kNonBinaryLabel,
  kInvalidEvent,
  kInvalidSigma,
  kInvalidWindow,
  kInvalidConfig,
  kDegenerateLabels,
  kEventOutOfRange,
  kBadLength,
  kWindowOutOfRange,
  kVideoIdMismatch,
  kParseError,
  kDuplicateVideoId,
  kMissingFile,
  kIoError,
};

const char* to_string(ErrorCode code);

// Validation errors map to exit code 1, I/O errors to exit code 2.
bool is_io_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string video_id = {},
        std::string path = {});

  ErrorCode code() const { return code_; }
  const std::string& video_id() const { return video_id_; }
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

  // Copy of this error with origin information filled in where missing.
  Error with_origin(const std::string& video_id, const std::string& path) const;

 private:
  ErrorCode code_;
  std::string message_;
  std::string video_id_;
  std::string path_;
};

}  // namespace eventvad
