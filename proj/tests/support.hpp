#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "uvcount/core.hpp"
#include "uvcount/segment.hpp"
#include "uvcount/threshold.hpp"

namespace uvcount::testing {

class TempDir {
public:
    TempDir()
    {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("uvcount_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline Rgb random_rgb(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> c(0, 255);
    return {static_cast<std::uint8_t>(c(rng)), static_cast<std::uint8_t>(c(rng)), static_cast<std::uint8_t>(c(rng))};
}

inline Frame random_frame(std::mt19937_64& rng, int w, int h)
{
    Frame f(w, h);
    for (std::size_t p = 0; p < f.pixel_count(); ++p)
        f.set_pixel(p, random_rgb(rng));
    return f;
}

inline GrayImage random_gray(std::mt19937_64& rng, int w, int h, int lo = 0, int hi = 255)
{
    std::uniform_int_distribution<int> v(lo, hi);
    GrayImage g(w, h);
    for (auto& x : g.data())
        x = static_cast<std::uint8_t>(v(rng));
    return g;
}

inline Frame solid_frame(int w, int h, Rgb c)
{
    Frame f(w, h);
    for (std::size_t p = 0; p < f.pixel_count(); ++p)
        f.set_pixel(p, c);
    return f;
}

// Two 5x5 bulbs joined by a one-pixel neck, on an 11x5 raster. Bulb peaks sit at the bulb
// centres; the neck (x = 5, y = 2) is darker than both bulbs.
inline GrayImage dumbbell_raster()
{
    GrayImage g(11, 5, 0);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            const int d = std::max(std::abs(x - 2), std::abs(y - 2));
            g.at(x, y) = static_cast<std::uint8_t>(200 - 30 * d);
            g.at(x + 6, y) = static_cast<std::uint8_t>(200 - 30 * d);
        }
    g.at(5, 2) = 100;
    return g;
}

// The dumbbell painted in marker pink with value equal to the raster: one thresholded blob
// of 51 pixels whose value channel has two peaks.
inline Frame dumbbell_frame()
{
    const GrayImage g = dumbbell_raster();
    Frame f(g.width(), g.height());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            f.set_pixel(x, y, {g.at(x, y), 0, static_cast<std::uint8_t>(g.at(x, y) / 2)});
    return f;
}

inline DetectionMask threshold_gray(const GrayImage& g, int above)
{
    DetectionMask m(g.width(), g.height());
    for (std::size_t p = 0; p < g.size(); ++p)
        m[p] = g[p] > above;
    return m;
}

}  // namespace uvcount::testing
