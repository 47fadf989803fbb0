#include "uvcount/serial.hpp"

#include <algorithm>

namespace uvcount::serial {

GrayImage value_channel(const Frame& frame)
{
    GrayImage out(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y)
        for (int x = 0; x < frame.width(); ++x) {
            const Rgb p = frame.pixel(x, y);
            out.at(x, y) = std::max({p.r, p.g, p.b});
        }
    return out;
}

GrayImage luminance(const Frame& frame)
{
    GrayImage out(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y)
        for (int x = 0; x < frame.width(); ++x)
            out.at(x, y) = luma(frame.pixel(x, y));
    return out;
}

DetectionMask foreground_mask(const Frame& image, const ThresholdConfig& cfg)
{
    DetectionMask mask(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) {
            const Rgb p = image.pixel(x, y);
            mask.at(x, y) = is_foreground(p, rgb_to_hsv(p), cfg) ? 1 : 0;
        }
    return mask;
}

GrayImage box_smooth(const GrayImage& raster, int radius)
{
    GrayImage out(raster.width(), raster.height());
    const int n = (2 * radius + 1) * (2 * radius + 1);
    for (int y = 0; y < raster.height(); ++y)
        for (int x = 0; x < raster.width(); ++x) {
            int sum = 0;
            for (int dy = -radius; dy <= radius; ++dy)
                for (int dx = -radius; dx <= radius; ++dx)
                    sum += raster.at(std::clamp(x + dx, 0, raster.width() - 1),
                                     std::clamp(y + dy, 0, raster.height() - 1));
            out.at(x, y) = static_cast<std::uint8_t>((2 * sum + n) / (2 * n));
        }
    return out;
}

SegmentedMask apply_mask(const PeakImage& peaks, const DetectionMask& mask)
{
    if (!peaks.same_shape(mask.width(), mask.height()))
        throw DimensionError("peak image and detection mask differ in size");
    SegmentedMask out(peaks.width(), peaks.height());
    for (int y = 0; y < peaks.height(); ++y)
        for (int x = 0; x < peaks.width(); ++x)
            out.at(x, y) = peaks.at(x, y) * (mask.at(x, y) ? 1 : 0);
    return out;
}

std::array<std::uint64_t, 256> histogram(const GrayImage& gray)
{
    std::array<std::uint64_t, 256> h{};
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x)
            ++h[gray.at(x, y)];
    return h;
}

}  // namespace uvcount::serial
