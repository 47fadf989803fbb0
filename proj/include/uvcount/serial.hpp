#pragma once

// Single-threaded reference versions of the data-parallel kernels. They share no code with
// the OpenMP implementations and exist so tests and benchmarks can compare against them.

#include <array>
#include <cstdint>

#include "uvcount/core.hpp"
#include "uvcount/segment.hpp"
#include "uvcount/threshold.hpp"

namespace uvcount::serial {

GrayImage value_channel(const Frame& frame);
GrayImage luminance(const Frame& frame);
DetectionMask foreground_mask(const Frame& image, const ThresholdConfig& cfg);

/// Direct 2-D window sum with clamped coordinates (no separable pass).
GrayImage box_smooth(const GrayImage& raster, int radius);

SegmentedMask apply_mask(const PeakImage& peaks, const DetectionMask& mask);
std::array<std::uint64_t, 256> histogram(const GrayImage& gray);

}  // namespace uvcount::serial
