#pragma once

// Per-pixel insect/background classification.
//
// A pixel is foreground when all four hold:
//   r > b > g                        (pink: low green, red above blue)
//   v > muV                          (brighter than the calibrated floor)
//   h > hueUpper || h < hueLower     (red/pink wrap-around hue band)
//   satLower < s <= satUpper

#include <span>

#include "uvcount/core.hpp"

namespace uvcount {

struct ThresholdConfig {
    int muV = 40;
    int hueUpper = 220;
    int hueLower = 25;
    int satLower = 90;
    int satUpper = 255;

    /// Throws std::invalid_argument on out-of-range or inverted bands.
    void validate() const;

    friend bool operator==(const ThresholdConfig&, const ThresholdConfig&) = default;
};

/// One byte per pixel, 1 = foreground.
struct DetectionMask : Raster<std::uint8_t> {
    using Raster::Raster;

    std::size_t count() const noexcept;
};

inline bool is_foreground(Rgb p, const HsvPixel& hsv, const ThresholdConfig& cfg) noexcept
{
    return p.r > p.b && p.b > p.g &&
           hsv.v > cfg.muV &&
           (hsv.h > cfg.hueUpper || hsv.h < cfg.hueLower) &&
           hsv.s > cfg.satLower && hsv.s <= cfg.satUpper;
}

inline bool is_foreground(Rgb p, const ThresholdConfig& cfg) noexcept
{
    // Cheap RGB ordering test first; most background pixels fail it.
    if (!(p.r > p.b && p.b > p.g))
        return false;
    return is_foreground(p, rgb_to_hsv(p), cfg);
}

DetectionMask foreground_mask(const RoiFrame& roi, const ThresholdConfig& cfg);
DetectionMask foreground_mask(const Frame& image, const ThresholdConfig& cfg);

/// Mean HSV value over the marked pixels of every calibration image, rounded.
int calibrate_mu_v(std::span<const Frame> images, std::span<const DetectionMask> insectMasks);

}  // namespace uvcount
