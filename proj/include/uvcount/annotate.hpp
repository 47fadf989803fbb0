#pragma once

#include "uvcount/core.hpp"
#include "uvcount/detect.hpp"

namespace uvcount {

inline constexpr Rgb kBoxGreen{0, 255, 0};

/// Copy of the ROI image with a 1 px green box around each detection and the running
/// global count printed in the top-left corner.
Frame annotate_frame(const Frame& roiImage, const FrameRecord& record);

/// Draws decimal digits with a 3x5 bitmap font scaled by `scale`.
void draw_number(Frame& image, long long value, int x, int y, int scale, Rgb color);

}  // namespace uvcount
