#include "uvcount/baseline.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace uvcount {

Histogram histogram(const GrayImage& gray)
{
    Histogram hist{};
    for (const std::uint8_t v : gray.data())
        ++hist[v];
    return hist;
}

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

// Between-class variance up to the constant factor 1/N^2: K^2 / (n0 n1), K = N s0 - n0 S.
struct Separation {
    u128 num = 0;
    u128 den = 1;
};

// a.num / a.den > b.num / b.den, exactly when the cross products fit in 128 bits.
bool greater_than(const Separation& a, const Separation& b)
{
    u128 lhs = 0, rhs = 0;
    if (!__builtin_mul_overflow(a.num, b.den, &lhs) && !__builtin_mul_overflow(b.num, a.den, &rhs))
        return lhs > rhs;
    const long double la = static_cast<long double>(a.num) / static_cast<long double>(a.den);
    const long double lb = static_cast<long double>(b.num) / static_cast<long double>(b.den);
    return la > lb;
}

}  // namespace

int otsu_threshold(const Histogram& hist)
{
    std::uint64_t total = 0;
    std::uint64_t totalSum = 0;
    for (int v = 0; v < 256; ++v) {
        total += hist[static_cast<std::size_t>(v)];
        totalSum += static_cast<std::uint64_t>(v) * hist[static_cast<std::size_t>(v)];
    }

    int best = 0;
    Separation bestSep{0, 1};
    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += hist[static_cast<std::size_t>(t)];
        s0 += static_cast<std::uint64_t>(t) * hist[static_cast<std::size_t>(t)];
        const std::uint64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0)
            continue;
        const i128 k = static_cast<i128>(total) * s0 - static_cast<i128>(n0) * totalSum;
        const u128 mag = static_cast<u128>(k < 0 ? -k : k);
        const Separation sep{mag * mag, static_cast<u128>(n0) * n1};
        if (greater_than(sep, bestSep)) {
            bestSep = sep;
            best = t;
        }
    }
    return best;
}

int otsu_threshold(const GrayImage& gray)
{
    return otsu_threshold(histogram(gray));
}

OtsuResult video_max_threshold(const FrameSource& frames, int roiWidth, int roiHeight)
{
    if (frames.size() == 0)
        throw std::invalid_argument("empty video: no frames to threshold");
    OtsuResult result;
    result.perFrameThresholds.assign(frames.size(), 0);
    const auto n = static_cast<std::ptrdiff_t>(frames.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const RoiFrame roi = crop_roi(frames.load(static_cast<std::size_t>(i)), roiWidth, roiHeight);
            result.perFrameThresholds[static_cast<std::size_t>(i)] = otsu_threshold(luminance(roi.image));
        } catch (...) {
#pragma omp critical(uvcount_baseline_error)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    result.videoMax = *std::max_element(result.perFrameThresholds.begin(), result.perFrameThresholds.end());
    return result;
}

FrameResult baseline_frame(const Frame& frame, int threshold, const BaselineParams& params)
{
    const RoiFrame roi = crop_roi(frame, params.roiWidth, params.roiHeight);
    const GrayImage lum = luminance(roi.image);
    SegmentedMask seg(lum.width(), lum.height());
    for (std::size_t i = 0; i < lum.size(); ++i)
        seg[i] = lum[i] > threshold ? 1 : 0;

    const auto blobs = connected_components(seg);
    FrameResult r;
    r.frameIndex = roi.index();
    r.detections = filter_and_score(blobs, lum, params.minBlobArea, roi.index());
    r.blobCount = static_cast<int>(r.detections.size());
    return r;
}

VideoReport baseline_detect(const FrameSource& frames, const BaselineParams& params)
{
    if (params.minBlobArea < 0)
        throw std::invalid_argument("n-p must be non-negative");
    const OtsuResult otsu = video_max_threshold(frames, params.roiWidth, params.roiHeight);

    std::vector<FrameResult> results(frames.size());
    const auto n = static_cast<std::ptrdiff_t>(frames.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            results[static_cast<std::size_t>(i)] =
                baseline_frame(frames.load(static_cast<std::size_t>(i)), otsu.videoMax, params);
        } catch (...) {
#pragma omp critical(uvcount_baseline_error)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    VideoReport report = fold_counts(std::move(results), "baseline");
    report.config = {
        {"roi", std::to_string(params.roiWidth) + "x" + std::to_string(params.roiHeight)},
        {"n-p", std::to_string(params.minBlobArea)},
        {"luminance", "bt601"},
        {"t-m", std::to_string(otsu.videoMax)},
    };
    return report;
}

}  // namespace uvcount
