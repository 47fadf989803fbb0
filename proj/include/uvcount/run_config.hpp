#pragma once

// Resolved settings of one detection/evaluation run. Config files use the same key names
// as the CLI flags:
//
//   mode = main            # or baseline
//   mu-v = 40
//   h-ut = 220
//   h-lt = 25
//   s-lt = 90
//   s-ut = 255
//   n-p = 20
//   roi = 720x720
//   smooth-radius = 1
//   seed-floor = 40        # defaults to mu-v
//   seed-dynamic = 2
//   split = watershed      # or none
//   iou-min = 0.5
//   annotate = false

#include <string>
#include <utility>
#include <vector>

#include "uvcount/baseline.hpp"
#include "uvcount/detect.hpp"
#include "uvcount/eval.hpp"
#include "uvcount/keyvalue.hpp"

namespace uvcount {

struct RunConfig {
    std::string mode = "main";
    PipelineParams pipeline;
    double iouMin = kDefaultIouMin;
    bool annotate = false;

    /// Overlays the keys present in `kv`. Unknown keys and malformed values throw ParseError.
    void apply(const KeyValueFile& kv);

    /// Throws std::invalid_argument on any out-of-range setting.
    void validate() const;

    BaselineParams baseline() const;

    /// Every setting, resolved, in config-file order.
    std::vector<std::pair<std::string, std::string>> echo() const;
    KeyValueFile to_key_values() const;
};

bool parse_bool(const std::string& text, const std::string& what);

}  // namespace uvcount
