#include "eventvad/error.hpp"

namespace eventvad {

namespace {

std::string compose(ErrorCode code, const std::string& message,
                    const std::string& video_id, const std::string& path) {
  std::string out = to_string(code);
  out += ": ";
  out += message;
  if (!video_id.empty()) out += " [video " + video_id + "]";
  if (!path.empty()) out += " [file " + path + "]";
  return out;
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNonFiniteScore: return "NonFiniteScore";
    case ErrorCode::kNonBinaryLabel: return "NonBinaryLabel";
    case ErrorCode::kInvalidEvent: return "InvalidEvent";
    case ErrorCode::kInvalidSigma: return "InvalidSigma";
    case ErrorCode::kInvalidWindow: return "InvalidWindow";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kEventOutOfRange: return "EventOutOfRange";
    case ErrorCode::kBadLength: return "BadLength";
    case ErrorCode::kWindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::kVideoIdMismatch: return "VideoIdMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateVideoId: return "DuplicateVideoId";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool is_io_error(ErrorCode code) {
  return code == ErrorCode::kMissingFile || code == ErrorCode::kIoError;
}

Error::Error(ErrorCode code, std::string message, std::string video_id,
             std::string path)
    : std::runtime_error(compose(code, message, video_id, path)),
      code_(code),
      message_(std::move(message)),
      video_id_(std::move(video_id)),
      path_(std::move(path)) {}

Error Error::with_origin(const std::string& video_id,
                         const std::string& path) const {
  return Error(code_, message_, video_id_.empty() ? video_id : video_id_,
               path_.empty() ? path : path_);
}

}  // namespace eventvad
