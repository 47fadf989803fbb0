#include "uvcount/annotate.hpp"

#include <array>
#include <string>

namespace uvcount {

namespace {

// 3x5 glyphs, one row per entry, bit 2 = leftmost column.
constexpr std::array<std::array<std::uint8_t, 5>, 10> kDigits = {{
    {7, 5, 5, 5, 7},
    {2, 6, 2, 2, 7},
    {7, 1, 7, 4, 7},
    {7, 1, 7, 1, 7},
    {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7},
    {7, 4, 7, 5, 7},
    {7, 1, 1, 1, 1},
    {7, 5, 7, 5, 7},
    {7, 5, 7, 1, 7},
}};

void put(Frame& img, int x, int y, Rgb c)
{
    if (x >= 0 && y >= 0 && x < img.width() && y < img.height())
        img.set_pixel(x, y, c);
}

}  // namespace

void draw_number(Frame& image, long long value, int x, int y, int scale, Rgb color)
{
    const std::string text = std::to_string(value);
    int cursor = x;
    for (const char ch : text) {
        if (ch == '-') {
            for (int dx = 0; dx < 3 * scale; ++dx)
                for (int dy = 0; dy < scale; ++dy)
                    put(image, cursor + dx, y + 2 * scale + dy, color);
        } else {
            const auto& glyph = kDigits[static_cast<std::size_t>(ch - '0')];
            for (int row = 0; row < 5; ++row)
                for (int col = 0; col < 3; ++col)
                    if (glyph[static_cast<std::size_t>(row)] & (4 >> col))
                        for (int dy = 0; dy < scale; ++dy)
                            for (int dx = 0; dx < scale; ++dx)
                                put(image, cursor + col * scale + dx, y + row * scale + dy, color);
        }
        cursor += 4 * scale;
    }
}

Frame annotate_frame(const Frame& roiImage, const FrameRecord& record)
{
    Frame out = roiImage;
    for (const auto& d : record.detections) {
        const int x0 = d.box.x, y0 = d.box.y;
        const int x1 = d.box.x + d.box.width - 1, y1 = d.box.y + d.box.height - 1;
        for (int x = x0 - 1; x <= x1 + 1; ++x) {
            put(out, x, y0 - 1, kBoxGreen);
            put(out, x, y1 + 1, kBoxGreen);
        }
        for (int y = y0 - 1; y <= y1 + 1; ++y) {
            put(out, x0 - 1, y, kBoxGreen);
            put(out, x1 + 1, y, kBoxGreen);
        }
    }
    draw_number(out, record.globalCount, 8, 8, 4, {255, 255, 255});
    return out;
}

}  // namespace uvcount
