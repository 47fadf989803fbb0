#include "uvcount/detect.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace uvcount {

void PipelineParams::validate() const
{
    threshold.validate();
    if (roiWidth <= 0 || roiHeight <= 0)
        throw std::invalid_argument("roi dimensions must be positive");
    if (smoothRadius < 0)
        throw std::invalid_argument("smoothing radius must be non-negative");
    if (minBlobArea < 0)
        throw std::invalid_argument("n-p must be non-negative");
    if (seedDynamic < 0 || seedDynamic > 255)
        throw std::invalid_argument("seed dynamic must lie in [0,255]");
    if (seedFloor && (*seedFloor < 0 || *seedFloor > 255))
        throw std::invalid_argument("seed floor must lie in [0,255]");
}

std::vector<Blob> connected_components(const SegmentedMask& seg)
{
    static constexpr int dx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    static constexpr int dy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

    std::vector<Blob> blobs;
    std::vector<std::uint8_t> seen(seg.size(), 0);
    std::vector<std::int32_t> stack;
    const int w = seg.width();
    for (std::size_t start = 0; start < seg.size(); ++start) {
        const std::int32_t label = seg[start];
        if (label == 0 || seen[start])
            continue;
        Blob blob{label, {}};
        seen[start] = 1;
        stack.assign(1, static_cast<std::int32_t>(start));
        while (!stack.empty()) {
            const std::int32_t p = stack.back();
            stack.pop_back();
            blob.pixels.push_back(p);
            const int px = p % w, py = p / w;
            for (int k = 0; k < 8; ++k) {
                const int qx = px + dx[k], qy = py + dy[k];
                if (!seg.contains(qx, qy))
                    continue;
                const std::size_t q = seg.index(qx, qy);
                if (!seen[q] && seg[q] == label) {
                    seen[q] = 1;
                    stack.push_back(static_cast<std::int32_t>(q));
                }
            }
        }
        std::sort(blob.pixels.begin(), blob.pixels.end());
        blobs.push_back(std::move(blob));
    }
    return blobs;
}

std::vector<Detection> filter_and_score(std::span<const Blob> blobs, const GrayImage& intensity, int minArea,
                                        std::size_t frameIndex)
{
    std::vector<Detection> out;
    const int w = intensity.width();
    for (const Blob& blob : blobs) {
        if (blob.pixels.empty() || static_cast<long long>(blob.pixels.size()) < minArea)
            continue;
        int x0 = w, y0 = intensity.height(), x1 = -1, y1 = -1;
        std::uint64_t sum = 0;
        for (const std::int32_t p : blob.pixels) {
            const int x = p % w, y = p / w;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
            sum += intensity[static_cast<std::size_t>(p)];
        }
        Detection d;
        d.frameIndex = frameIndex;
        d.box = {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
        d.areaPx = static_cast<int>(blob.pixels.size());
        d.score = static_cast<double>(sum) / static_cast<double>(blob.pixels.size());
        out.push_back(d);
    }
    return out;
}

std::vector<Detection> filter_and_score(std::span<const Blob> blobs, const RoiFrame& roi, int minArea)
{
    return filter_and_score(blobs, value_channel(roi.image), minArea, roi.index());
}

long long update_counter(long long prevCount, long long currCount, long long globalCount) noexcept
{
    return globalCount + std::max(0LL, currCount - prevCount);
}

VideoReport fold_counts(std::vector<FrameResult> results, std::string mode)
{
    std::sort(results.begin(), results.end(),
              [](const FrameResult& a, const FrameResult& b) { return a.frameIndex < b.frameIndex; });
    VideoReport report;
    report.mode = std::move(mode);
    long long prev = 0;
    long long global = 0;
    for (auto& r : results) {
        global = update_counter(prev, r.blobCount, global);
        prev = r.blobCount;
        report.frames.push_back({r.frameIndex, r.blobCount, global, std::move(r.detections)});
    }
    report.globalCount = global;
    return report;
}

FrameResult detect_roi(const RoiFrame& roi, const PipelineParams& params)
{
    const DetectionMask mask = foreground_mask(roi, params.threshold);
    const GrayImage value = value_channel(roi.image);

    SegmentedMask seg;
    if (params.splitTouching) {
        const GrayImage smooth = box_smooth(value, params.smoothRadius);
        const int floor = params.effective_seed_floor();
        const auto seeds = filter_by_dynamic(smooth, regional_maxima(smooth, floor), floor, params.seedDynamic);
        seg = apply_mask(watershed_peaks(smooth, seeds), mask);
    } else {
        seg = mask_as_labels(mask);
    }

    const auto blobs = connected_components(seg);
    FrameResult result;
    result.frameIndex = roi.index();
    result.detections = filter_and_score(blobs, value, params.minBlobArea, roi.index());
    result.blobCount = static_cast<int>(result.detections.size());
    return result;
}

FrameResult detect_frame(const Frame& frame, const PipelineParams& params)
{
    return detect_roi(crop_roi(frame, params.roiWidth, params.roiHeight), params);
}

VideoReport run_pipeline(const FrameSource& source, const PipelineParams& params)
{
    params.validate();
    const auto n = static_cast<std::ptrdiff_t>(source.size());
    std::vector<FrameResult> results(source.size());
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            results[static_cast<std::size_t>(i)] = detect_frame(source.load(static_cast<std::size_t>(i)), params);
        } catch (...) {
#pragma omp critical(uvcount_pipeline_error)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    VideoReport report = fold_counts(std::move(results), "main");
    report.config = describe(params);
    return report;
}

std::vector<std::pair<std::string, std::string>> describe(const PipelineParams& params)
{
    const auto s = [](int v) { return std::to_string(v); };
    return {
        {"mu-v", s(params.threshold.muV)},
        {"h-ut", s(params.threshold.hueUpper)},
        {"h-lt", s(params.threshold.hueLower)},
        {"s-lt", s(params.threshold.satLower)},
        {"s-ut", s(params.threshold.satUpper)},
        {"roi", s(params.roiWidth) + "x" + s(params.roiHeight)},
        {"smooth-radius", s(params.smoothRadius)},
        {"seed-floor", s(params.effective_seed_floor())},
        {"seed-dynamic", s(params.seedDynamic)},
        {"n-p", s(params.minBlobArea)},
        {"split", params.splitTouching ? "watershed" : "none"},
    };
}

}  // namespace uvcount
