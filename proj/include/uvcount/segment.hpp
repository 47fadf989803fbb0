#pragma once

// Splitting touching insects: regional maxima of the smoothed value channel seed
// a marker watershed, and the resulting basins are masked by the foreground mask.

#include <cstdint>
#include <span>
#include <vector>

#include "uvcount/core.hpp"
#include "uvcount/threshold.hpp"

namespace uvcount {

/// Basin labels; 0 is ridge or unreached, k >= 1 is the basin grown from seed k.
struct PeakImage : Raster<std::int32_t> {
    using Raster::Raster;
};

/// Basin labels surviving the foreground mask.
struct SegmentedMask : Raster<std::int32_t> {
    using Raster::Raster;
};

/// An 8-connected plateau that is a regional maximum.
struct SeedComponent {
    std::uint8_t level = 0;
    std::vector<std::int32_t> pixels;  // row-major indices, ascending
};

/// Box filter with clamped borders; radius 0 returns the input unchanged.
GrayImage box_smooth(const GrayImage& raster, int radius);

/// Box-smoothed HSV value channel of the ROI.
GrayImage smooth_value(const RoiFrame& roi, int radius);

/// Plateaus strictly brighter than all their outside 8-neighbours and brighter than `floor`,
/// ordered by their first pixel in row-major order.
std::vector<SeedComponent> regional_maxima(const GrayImage& raster, int floor);

/// Drops every seed that can reach a higher-ranked seed through pixels above `floor`
/// without descending more than `minDynamic - 1` levels below its own level. Rank is
/// level, then list order. minDynamic 0 or 1 keeps every seed.
std::vector<SeedComponent> filter_by_dynamic(const GrayImage& raster, std::vector<SeedComponent> seeds, int floor,
                                             int minDynamic);

/// Marker-based flooding from the seeds in order of descending intensity, ties broken by
/// row-major position. A pixel reached by two basins at once becomes ridge (0).
PeakImage watershed_peaks(const GrayImage& raster, std::span<const SeedComponent> seeds);

/// Elementwise product of the 0/1 mask with the basin labels.
SegmentedMask apply_mask(const PeakImage& peaks, const DetectionMask& mask);

/// Uses the mask itself as a single label (no watershed split).
SegmentedMask mask_as_labels(const DetectionMask& mask);

}  // namespace uvcount
