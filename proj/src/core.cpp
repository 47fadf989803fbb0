#include "uvcount/core.hpp"

#include <algorithm>
#include <cmath>

namespace uvcount {

Frame::Frame(int width, int height, std::size_t index)
    : width_(width), height_(height), index_(index)
{
    if (width < 0 || height < 0)
        throw DimensionError("negative frame dimensions");
    data_.assign(3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

namespace {

// Hexagonal hue expressed as N/d sixths of a turn, N in [0, 6d).
int hue_sixths(int r, int g, int b, int mx, int d) noexcept
{
    if (mx == r) {
        int n = g - b;
        return n < 0 ? n + 6 * d : n;
    }
    if (mx == g)
        return b - r + 2 * d;
    return r - g + 4 * d;
}

}  // namespace

HsvPixel rgb_to_hsv(Rgb p) noexcept
{
    const int r = p.r, g = p.g, b = p.b;
    const int mx = std::max({r, g, b});
    const int mn = std::min({r, g, b});
    const int d = mx - mn;

    HsvPixel out;
    out.v = static_cast<std::uint8_t>(mx);
    if (mx == 0)
        return out;
    // round(255 d / v) and round(255 N / 6d), half up, in integers so the result is bit-exact.
    out.s = static_cast<std::uint8_t>((2 * 255 * d + mx) / (2 * mx));
    if (d == 0)
        return out;
    const int n = hue_sixths(r, g, b, mx, d);
    out.h = static_cast<std::uint8_t>((2 * 255 * n + 6 * d) / (12 * d));
    return out;
}

double hue_degrees(Rgb p) noexcept
{
    const int mx = std::max({int(p.r), int(p.g), int(p.b)});
    const int d = mx - std::min({int(p.r), int(p.g), int(p.b)});
    if (d == 0)
        return 0.0;
    return 60.0 * hue_sixths(p.r, p.g, p.b, mx, d) / d;
}

Rgb hsv_to_rgb(HsvPixel p) noexcept
{
    const double v = p.v;
    const double s = p.s / 255.0;
    const double h = p.h * 360.0 / 255.0;
    const double c = v * s;
    const double x = c * (1.0 - std::abs(std::fmod(h / 60.0, 2.0) - 1.0));
    const double m = v - c;
    double r = 0, g = 0, b = 0;
    if (h < 60) {
        r = c; g = x;
    } else if (h < 120) {
        r = x; g = c;
    } else if (h < 180) {
        g = c; b = x;
    } else if (h < 240) {
        g = x; b = c;
    } else if (h < 300) {
        r = x; b = c;
    } else {
        r = c; b = x;
    }
    auto to8 = [](double u) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(u), 0L, 255L));
    };
    return {to8(r + m), to8(g + m), to8(b + m)};
}

RoiFrame crop_roi(const Frame& frame, int roiWidth, int roiHeight)
{
    if (roiWidth <= 0 || roiHeight <= 0)
        throw DimensionError("ROI dimensions must be positive");
    if (roiWidth > frame.width() || roiHeight > frame.height())
        throw DimensionError("ROI " + std::to_string(roiWidth) + "x" + std::to_string(roiHeight) +
                             " exceeds frame " + std::to_string(frame.width()) + "x" +
                             std::to_string(frame.height()));

    RoiFrame roi;
    roi.offsetX = (frame.width() - roiWidth) / 2;
    roi.offsetY = (frame.height() - roiHeight) / 2;
    roi.sourceWidth = frame.width();
    roi.sourceHeight = frame.height();
    roi.image = Frame(roiWidth, roiHeight, frame.index());

    const auto& src = frame.data();
    auto& dst = roi.image.data();
    const std::size_t rowBytes = 3 * static_cast<std::size_t>(roiWidth);
    for (int y = 0; y < roiHeight; ++y) {
        const std::size_t s = 3 * ((static_cast<std::size_t>(y + roi.offsetY) * frame.width()) + roi.offsetX);
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(s), rowBytes,
                    dst.begin() + static_cast<std::ptrdiff_t>(y * rowBytes));
    }
    return roi;
}

RoiFrame whole_frame_roi(Frame frame)
{
    RoiFrame roi;
    roi.sourceWidth = frame.width();
    roi.sourceHeight = frame.height();
    roi.image = std::move(frame);
    return roi;
}

GrayImage value_channel(const Frame& frame)
{
    GrayImage out(frame.width(), frame.height());
    const auto& src = frame.data();
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = std::max({src[3 * i], src[3 * i + 1], src[3 * i + 2]});
    return out;
}

GrayImage luminance(const Frame& frame)
{
    GrayImage out(frame.width(), frame.height());
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = luma(frame.pixel(static_cast<std::size_t>(i)));
    return out;
}

}  // namespace uvcount
