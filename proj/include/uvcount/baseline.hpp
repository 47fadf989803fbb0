#pragma once

// Comparison detector: Otsu luminance thresholding with a single video-wide threshold
// equal to the largest per-frame Otsu threshold (two passes over the video).

#include <array>
#include <cstdint>
#include <vector>

#include "uvcount/core.hpp"
#include "uvcount/detect.hpp"
#include "uvcount/io.hpp"

namespace uvcount {

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram(const GrayImage& gray);

/// Threshold t maximizing between-class variance of {<= t} vs {> t}; smallest t on ties.
int otsu_threshold(const Histogram& hist);
int otsu_threshold(const GrayImage& gray);

struct OtsuResult {
    std::vector<int> perFrameThresholds;
    int videoMax = 0;
};

struct BaselineParams {
    int roiWidth = kDefaultRoiSize;
    int roiHeight = kDefaultRoiSize;
    int minBlobArea = kDefaultMinBlobArea;
};

/// First pass: Otsu threshold of every frame's ROI luminance, and their maximum.
OtsuResult video_max_threshold(const FrameSource& frames, int roiWidth, int roiHeight);

/// Binarizes one ROI luminance image with `> threshold` and extracts scored blobs.
FrameResult baseline_frame(const Frame& frame, int threshold, const BaselineParams& params);

/// Both passes; the report matches the main pipeline's shape with mode "baseline".
VideoReport baseline_detect(const FrameSource& frames, const BaselineParams& params);

}  // namespace uvcount
