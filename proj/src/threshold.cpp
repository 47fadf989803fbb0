#include "uvcount/threshold.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uvcount {

void ThresholdConfig::validate() const
{
    auto in_range = [](int v) { return v >= 0 && v <= 255; };
    if (!in_range(muV) || !in_range(hueUpper) || !in_range(hueLower) || !in_range(satLower) || !in_range(satUpper))
        throw std::invalid_argument("threshold constants must lie in [0,255]");
    if (hueLower >= hueUpper)
        throw std::invalid_argument("h-lt must be below h-ut");
    if (satLower >= satUpper)
        throw std::invalid_argument("s-lt must be below s-ut");
}

std::size_t DetectionMask::count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(data().begin(), data().end(), [](std::uint8_t b) { return b != 0; }));
}

DetectionMask foreground_mask(const Frame& image, const ThresholdConfig& cfg)
{
    DetectionMask mask(image.width(), image.height());
    const auto n = static_cast<std::ptrdiff_t>(mask.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        mask[i] = is_foreground(image.pixel(static_cast<std::size_t>(i)), cfg) ? 1 : 0;
    return mask;
}

DetectionMask foreground_mask(const RoiFrame& roi, const ThresholdConfig& cfg)
{
    return foreground_mask(roi.image, cfg);
}

int calibrate_mu_v(std::span<const Frame> images, std::span<const DetectionMask> insectMasks)
{
    if (images.empty())
        throw std::invalid_argument("calibration needs at least one image");
    if (images.size() != insectMasks.size())
        throw std::invalid_argument("calibration images and masks are not paired");

    std::uint64_t sum = 0;
    std::uint64_t count = 0;
    for (std::size_t k = 0; k < images.size(); ++k) {
        const Frame& img = images[k];
        const DetectionMask& mask = insectMasks[k];
        if (!mask.same_shape(img.width(), img.height()))
            throw DimensionError("calibration mask " + std::to_string(k) + " does not match its image");
        for (std::size_t i = 0; i < mask.size(); ++i) {
            if (!mask[i])
                continue;
            const Rgb p = img.pixel(i);
            sum += std::max({p.r, p.g, p.b});
            ++count;
        }
    }
    if (count == 0)
        throw std::invalid_argument("calibration masks mark no insect pixels");
    return static_cast<int>((2 * sum + count) / (2 * count));
}

}  // namespace uvcount
