#pragma once

// Blob extraction, size filtering, scoring and the cross-frame insect counter.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uvcount/core.hpp"
#include "uvcount/io.hpp"
#include "uvcount/segment.hpp"
#include "uvcount/threshold.hpp"

namespace uvcount {

/// Axis-aligned box in ROI pixel coordinates.
struct Box {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    long long area() const noexcept { return static_cast<long long>(width) * height; }
    friend bool operator==(const Box&, const Box&) = default;
};

struct Blob {
    std::int32_t label = 0;
    std::vector<std::int32_t> pixels;  // row-major indices, ascending
};

struct Detection {
    std::size_t frameIndex = 0;
    Box box;
    int areaPx = 0;
    double score = 0.0;  // mean intensity of the blob's pixels

    friend bool operator==(const Detection&, const Detection&) = default;
};

inline constexpr int kDefaultMinBlobArea = 20;
inline constexpr int kDefaultSmoothRadius = 1;
inline constexpr int kDefaultSeedDynamic = 2;

struct PipelineParams {
    ThresholdConfig threshold;
    int roiWidth = kDefaultRoiSize;
    int roiHeight = kDefaultRoiSize;
    int smoothRadius = kDefaultSmoothRadius;
    std::optional<int> seedFloor;  // defaults to threshold.muV
    int seedDynamic = kDefaultSeedDynamic;  // minimum peak-to-saddle depth of a seed
    int minBlobArea = kDefaultMinBlobArea;
    bool splitTouching = true;     // false: count thresholded blobs without watershed

    int effective_seed_floor() const noexcept { return seedFloor.value_or(threshold.muV); }
    void validate() const;
};

struct FrameResult {
    std::size_t frameIndex = 0;
    int blobCount = 0;
    std::vector<Detection> detections;

    friend bool operator==(const FrameResult&, const FrameResult&) = default;
};

struct FrameRecord {
    std::size_t frameIndex = 0;
    int blobCount = 0;
    long long globalCount = 0;  // counter value after this frame
    std::vector<Detection> detections;

    friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct VideoReport {
    std::string mode = "main";
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<FrameRecord> frames;
    long long globalCount = 0;

    friend bool operator==(const VideoReport&, const VideoReport&) = default;
};

/// Maximal 8-connected sets of pixels sharing one nonzero label, ordered by first pixel.
std::vector<Blob> connected_components(const SegmentedMask& seg);

/// Drops blobs smaller than `minArea`, then boxes each survivor and scores it by the mean
/// of `intensity` over its pixels.
std::vector<Detection> filter_and_score(std::span<const Blob> blobs, const GrayImage& intensity, int minArea,
                                        std::size_t frameIndex = 0);
std::vector<Detection> filter_and_score(std::span<const Blob> blobs, const RoiFrame& roi, int minArea);

/// globalCount + max(0, currCount - prevCount).
long long update_counter(long long prevCount, long long currCount, long long globalCount) noexcept;

/// Folds per-frame results into a report, in frame-index order. The first frame counts
/// against a previous count of zero.
VideoReport fold_counts(std::vector<FrameResult> results, std::string mode = "main");

FrameResult detect_frame(const Frame& frame, const PipelineParams& params);
FrameResult detect_roi(const RoiFrame& roi, const PipelineParams& params);

/// Runs detect_frame over every frame in parallel and folds the counts in order.
VideoReport run_pipeline(const FrameSource& source, const PipelineParams& params);

/// Key-value echo of every parameter, embedded in reports.
std::vector<std::pair<std::string, std::string>> describe(const PipelineParams& params);

}  // namespace uvcount
