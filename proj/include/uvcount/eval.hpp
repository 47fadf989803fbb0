#pragma once

// Detection quality against ground-truth boxes: IoU matching, precision-recall sweep
// over detection scores, and area under the PR curve.
//
// Ground-truth file: ASCII, one box per line, whitespace-separated
//   frameIndex x y width height
// in ROI pixel coordinates. '#' starts a comment.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uvcount/detect.hpp"

namespace uvcount {

inline constexpr double kDefaultIouMin = 0.5;

struct GroundTruthBox {
    std::size_t frameIndex = 0;
    Box box;

    friend bool operator==(const GroundTruthBox&, const GroundTruthBox&) = default;
};

double iou(const Box& a, const Box& b) noexcept;

struct MatchResult {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (detection, ground truth)
};

/// Greedy one-to-one matching by descending IoU; a pair is accepted when IoU >= iouMin and
/// neither side is taken yet. Equal IoUs resolve by detection index, then GT index.
MatchResult match_frame(std::span<const Detection> dets, std::span<const GroundTruthBox> gts, double iouMin);

struct PRPoint {
    double threshold = 0.0;
    double precision = 1.0;
    double recall = 0.0;
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
};

struct PRCurve {
    std::vector<PRPoint> points;  // ascending threshold
    double auc = 0.0;
};

/// Recall-ascending rectangle integration under the monotone precision envelope.
double auc_pr(std::span<const PRPoint> points);

/// Sweeps the score threshold over the distinct detection scores. With no detections the
/// curve is one sentinel point at threshold -1.
PRCurve pr_curve(const VideoReport& report, std::span<const GroundTruthBox> gt, double iouMin = kDefaultIouMin);

/// Point with the highest F1 score (first on ties).
PRPoint best_f1(const PRCurve& curve);

std::vector<GroundTruthBox> parse_ground_truth(const std::string& text, const std::string& origin = "<string>");
std::vector<GroundTruthBox> load_ground_truth(const std::filesystem::path& path);
std::string format_ground_truth(std::span<const GroundTruthBox> gt);

/// Two-column table (recall precision) with the threshold and AUC as comments.
std::string format_pr_table(const PRCurve& curve, const std::string& label);

}  // namespace uvcount
