#pragma once

// Rasters, color conversion and region-of-interest extraction.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uvcount {

class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Hue, saturation and value, each scaled to [0,255].
struct HsvPixel {
    std::uint8_t h = 0;
    std::uint8_t s = 0;
    std::uint8_t v = 0;

    friend bool operator==(const HsvPixel&, const HsvPixel&) = default;
};

/// Single-channel raster, row-major.
template <typename T>
class Raster {
public:
    using value_type = T;

    Raster() = default;
    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height)
    {
        if (width < 0 || height < 0)
            throw DimensionError("negative raster dimensions");
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& at(int x, int y) const { return data_[index(x, y)]; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }
    bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool same_shape(int w, int h) const noexcept { return w == width_ && h == height_; }

    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using GrayImage = Raster<std::uint8_t>;

/// An 8-bit RGB frame, channels interleaved in R,G,B order.
class Frame {
public:
    Frame() = default;
    Frame(int width, int height, std::size_t index = 0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t index() const noexcept { return index_; }
    void set_index(std::size_t i) noexcept { index_ = i; }
    std::size_t pixel_count() const noexcept { return data_.size() / 3; }

    Rgb pixel(int x, int y) const
    {
        const std::size_t o = offset(x, y);
        return {data_[o], data_[o + 1], data_[o + 2]};
    }
    Rgb pixel(std::size_t i) const { return {data_[3 * i], data_[3 * i + 1], data_[3 * i + 2]}; }
    void set_pixel(int x, int y, Rgb p)
    {
        const std::size_t o = offset(x, y);
        data_[o] = p.r;
        data_[o + 1] = p.g;
        data_[o + 2] = p.b;
    }
    void set_pixel(std::size_t i, Rgb p)
    {
        data_[3 * i] = p.r;
        data_[3 * i + 1] = p.g;
        data_[3 * i + 2] = p.b;
    }

    std::vector<std::uint8_t>& data() noexcept { return data_; }
    const std::vector<std::uint8_t>& data() const noexcept { return data_; }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    std::size_t offset(int x, int y) const noexcept
    {
        return 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x));
    }

    int width_ = 0;
    int height_ = 0;
    std::size_t index_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Centered crop of a source frame. `image` holds the cropped pixels.
struct RoiFrame {
    Frame image;
    int offsetX = 0;
    int offsetY = 0;
    int sourceWidth = 0;
    int sourceHeight = 0;

    int width() const noexcept { return image.width(); }
    int height() const noexcept { return image.height(); }
    std::size_t index() const noexcept { return image.index(); }
};

inline constexpr int kDefaultRoiSize = 720;

HsvPixel rgb_to_hsv(Rgb p) noexcept;

/// Inverse of rgb_to_hsv up to hue/saturation quantization.
Rgb hsv_to_rgb(HsvPixel p) noexcept;

/// Hue in degrees [0,360) before scaling; exposed for diagnostics.
double hue_degrees(Rgb p) noexcept;

/// Centered crop; offsets round down when the margin is odd.
RoiFrame crop_roi(const Frame& frame, int roiWidth, int roiHeight);

/// Wraps a frame whose dimensions already equal the ROI.
RoiFrame whole_frame_roi(Frame frame);

/// HSV value channel (max of R,G,B) of every pixel.
GrayImage value_channel(const Frame& frame);

/// round(0.299 R + 0.587 G + 0.114 B), computed in exact integer arithmetic.
inline std::uint8_t luma(Rgb p) noexcept
{
    return static_cast<std::uint8_t>((299u * p.r + 587u * p.g + 114u * p.b + 500u) / 1000u);
}

GrayImage luminance(const Frame& frame);

}  // namespace uvcount
