#pragma once

// VideoReport serialization.
//
// Text form, one record per line:
//   # uvcount report v1
//   mode main
//   config <key> <value>              resolved run configuration, repeated; value runs to end of line
//   frame <index> blobs <b> global <g>
//   det <x> <y> <width> <height> <area> <score>   detections of the preceding frame
//   total <globalCount>
// Lines starting with # are comments.
//
// JSON form mirrors the same content:
//   {"mode": ..., "config": {...}, "frames": [{"index", "blobs", "global",
//    "detections": [{"x","y","width","height","area","score"}]}], "globalCount": ...}

#include <filesystem>
#include <string>

#include "uvcount/detect.hpp"

namespace uvcount {

std::string format_report_text(const VideoReport& report);
VideoReport parse_report_text(const std::string& text, const std::string& origin = "<string>");

std::string format_report_json(const VideoReport& report);
VideoReport parse_report_json(const std::string& text, const std::string& origin = "<string>");

/// Picks the parser from the content: JSON if it starts with '{', text otherwise.
VideoReport load_report(const std::filesystem::path& path);

}  // namespace uvcount
