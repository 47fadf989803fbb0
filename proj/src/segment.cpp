#include "uvcount/segment.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace uvcount {

GrayImage box_smooth(const GrayImage& raster, int radius)
{
    if (radius < 0)
        throw std::invalid_argument("smoothing radius must be non-negative");
    if (radius == 0 || raster.empty())
        return raster;

    const int w = raster.width();
    const int h = raster.height();
    Raster<std::uint32_t> rows(w, h);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint32_t s = 0;
            for (int dx = -radius; dx <= radius; ++dx)
                s += raster.at(std::clamp(x + dx, 0, w - 1), y);
            rows.at(x, y) = s;
        }
    }

    const std::uint32_t n = static_cast<std::uint32_t>((2 * radius + 1) * (2 * radius + 1));
    GrayImage out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint32_t s = 0;
            for (int dy = -radius; dy <= radius; ++dy)
                s += rows.at(x, std::clamp(y + dy, 0, h - 1));
            out.at(x, y) = static_cast<std::uint8_t>((2 * s + n) / (2 * n));
        }
    }
    return out;
}

GrayImage smooth_value(const RoiFrame& roi, int radius)
{
    return box_smooth(value_channel(roi.image), radius);
}

namespace {

constexpr int kDx8[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy8[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int kDx4[4] = {0, -1, 1, 0};
constexpr int kDy4[4] = {-1, 0, 0, 1};

}  // namespace

std::vector<SeedComponent> regional_maxima(const GrayImage& raster, int floor)
{
    const int w = raster.width();
    const int h = raster.height();
    std::vector<std::uint8_t> visited(raster.size(), 0);
    std::vector<SeedComponent> seeds;
    std::vector<std::int32_t> stack;
    std::vector<std::int32_t> plateau;

    for (int y0 = 0; y0 < h; ++y0) {
        for (int x0 = 0; x0 < w; ++x0) {
            const std::size_t start = raster.index(x0, y0);
            const std::uint8_t level = raster[start];
            if (visited[start] || level <= floor)
                continue;

            bool isMax = true;
            plateau.clear();
            stack.assign(1, static_cast<std::int32_t>(start));
            visited[start] = 1;
            while (!stack.empty()) {
                const std::int32_t p = stack.back();
                stack.pop_back();
                plateau.push_back(p);
                const int px = p % w, py = p / w;
                for (int k = 0; k < 8; ++k) {
                    const int qx = px + kDx8[k], qy = py + kDy8[k];
                    if (!raster.contains(qx, qy))
                        continue;
                    const std::size_t q = raster.index(qx, qy);
                    const std::uint8_t v = raster[q];
                    if (v > level) {
                        isMax = false;
                    } else if (v == level && !visited[q]) {
                        visited[q] = 1;
                        stack.push_back(static_cast<std::int32_t>(q));
                    }
                }
            }
            if (isMax) {
                std::sort(plateau.begin(), plateau.end());
                seeds.push_back({level, plateau});
            }
        }
    }
    return seeds;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n, -1) {}

    bool active(std::size_t i) const noexcept { return parent_[i] != -1; }
    void activate(std::size_t i) noexcept { parent_[i] = static_cast<std::int32_t>(i); }

    std::int32_t find(std::int32_t i) noexcept
    {
        while (parent_[static_cast<std::size_t>(i)] != i) {
            auto& p = parent_[static_cast<std::size_t>(i)];
            p = parent_[static_cast<std::size_t>(p)];
            i = p;
        }
        return i;
    }

    void link(std::int32_t child, std::int32_t root) noexcept { parent_[static_cast<std::size_t>(child)] = root; }

private:
    std::vector<std::int32_t> parent_;
};

}  // namespace

std::vector<SeedComponent> filter_by_dynamic(const GrayImage& raster, std::vector<SeedComponent> seeds, int floor,
                                             int minDynamic)
{
    if (minDynamic <= 1 || seeds.size() < 2)
        return seeds;

    const int w = raster.width();
    std::vector<std::int32_t> seedOf(raster.size(), -1);
    for (std::size_t s = 0; s < seeds.size(); ++s)
        for (const std::int32_t p : seeds[s].pixels)
            seedOf[static_cast<std::size_t>(p)] = static_cast<std::int32_t>(s);

    auto outranks = [&](std::int32_t a, std::int32_t b) {
        const auto la = seeds[static_cast<std::size_t>(a)].level, lb = seeds[static_cast<std::size_t>(b)].level;
        return la != lb ? la > lb : a < b;
    };

    // Pixels above the floor, brightest first.
    std::array<std::vector<std::int32_t>, 256> byLevel;
    for (std::size_t p = 0; p < raster.size(); ++p)
        if (raster[p] > floor)
            byLevel[raster[p]].push_back(static_cast<std::int32_t>(p));

    DisjointSets sets(raster.size());
    std::vector<std::int32_t> leader(raster.size(), -1);  // best seed of each root
    std::vector<std::uint8_t> keep(seeds.size(), 1);
    for (int level = 255; level > floor; --level) {
        for (const std::int32_t p : byLevel[static_cast<std::size_t>(level)]) {
            sets.activate(static_cast<std::size_t>(p));
            leader[static_cast<std::size_t>(p)] = seedOf[static_cast<std::size_t>(p)];
            const int px = p % w, py = p / w;
            for (int k = 0; k < 8; ++k) {
                const int qx = px + kDx8[k], qy = py + kDy8[k];
                if (!raster.contains(qx, qy) || !sets.active(raster.index(qx, qy)))
                    continue;
                const std::int32_t a = sets.find(p);
                const std::int32_t b = sets.find(static_cast<std::int32_t>(raster.index(qx, qy)));
                if (a == b)
                    continue;
                std::int32_t la = leader[static_cast<std::size_t>(a)], lb = leader[static_cast<std::size_t>(b)];
                if (la >= 0 && lb >= 0 && la != lb) {
                    if (outranks(la, lb))
                        std::swap(la, lb);
                    if (seeds[static_cast<std::size_t>(la)].level - level < minDynamic)
                        keep[static_cast<std::size_t>(la)] = 0;
                    la = lb;
                } else if (la < 0) {
                    la = lb;
                }
                sets.link(b, a);
                leader[static_cast<std::size_t>(a)] = la;
            }
        }
    }

    std::vector<SeedComponent> out;
    for (std::size_t s = 0; s < seeds.size(); ++s)
        if (keep[s])
            out.push_back(std::move(seeds[s]));
    return out;
}

namespace {

// Highest-level-first queue over 8-bit intensities; within a level, smallest index first.
class FloodQueue {
public:
    void push(std::uint8_t level, std::int32_t index)
    {
        auto& heap = buckets_[level];
        heap.push_back(index);
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
        top_ = std::max(top_, static_cast<int>(level));
        ++size_;
    }

    bool empty() const noexcept { return size_ == 0; }

    std::int32_t pop()
    {
        while (buckets_[static_cast<std::size_t>(top_)].empty())
            --top_;
        auto& heap = buckets_[static_cast<std::size_t>(top_)];
        std::pop_heap(heap.begin(), heap.end(), std::greater<>());
        const std::int32_t i = heap.back();
        heap.pop_back();
        --size_;
        return i;
    }

private:
    std::array<std::vector<std::int32_t>, 256> buckets_;
    int top_ = 0;
    std::size_t size_ = 0;
};

enum : std::uint8_t { kFresh = 0, kQueued = 1, kDone = 2 };

}  // namespace

PeakImage watershed_peaks(const GrayImage& raster, std::span<const SeedComponent> seeds)
{
    const int w = raster.width();
    const int h = raster.height();
    PeakImage labels(w, h, 0);
    if (seeds.empty())
        return labels;

    std::vector<std::uint8_t> state(raster.size(), kFresh);
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        for (const std::int32_t p : seeds[k].pixels) {
            labels[static_cast<std::size_t>(p)] = static_cast<std::int32_t>(k + 1);
            state[static_cast<std::size_t>(p)] = kDone;
        }
    }

    // A plateau joined only through a diagonal is bridged through the brighter shared
    // 4-neighbour so that every basin stays 4-connected.
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        const auto label = static_cast<std::int32_t>(k + 1);
        for (const std::int32_t p : seeds[k].pixels) {
            const int px = p % w, py = p / w;
            for (const int dx : {-1, 1}) {
                const int qx = px + dx, qy = py + 1;
                if (!raster.contains(qx, qy) || labels.at(qx, qy) != label)
                    continue;
                const std::size_t a = raster.index(qx, py);
                const std::size_t b = raster.index(px, qy);
                if (labels[a] == label || labels[b] == label)
                    continue;
                std::size_t first = a, second = b;
                if (raster[b] > raster[a] || (raster[b] == raster[a] && b < a))
                    std::swap(first, second);
                for (const std::size_t c : {first, second}) {
                    if (state[c] == kFresh) {
                        labels[c] = label;
                        state[c] = kDone;
                        break;
                    }
                }
            }
        }
    }

    FloodQueue queue;
    auto push_neighbours = [&](std::size_t p) {
        const int px = static_cast<int>(p % static_cast<std::size_t>(w));
        const int py = static_cast<int>(p / static_cast<std::size_t>(w));
        for (int k = 0; k < 4; ++k) {
            const int qx = px + kDx4[k], qy = py + kDy4[k];
            if (!raster.contains(qx, qy))
                continue;
            const std::size_t q = raster.index(qx, qy);
            if (state[q] == kFresh) {
                state[q] = kQueued;
                queue.push(raster[q], static_cast<std::int32_t>(q));
            }
        }
    };

    for (std::size_t p = 0; p < labels.size(); ++p)
        if (labels[p] > 0)
            push_neighbours(p);

    while (!queue.empty()) {
        const auto p = static_cast<std::size_t>(queue.pop());
        const int px = static_cast<int>(p % static_cast<std::size_t>(w));
        const int py = static_cast<int>(p / static_cast<std::size_t>(w));
        std::int32_t found = 0;
        bool ridge = false;
        for (int k = 0; k < 4; ++k) {
            const int qx = px + kDx4[k], qy = py + kDy4[k];
            if (!raster.contains(qx, qy))
                continue;
            const std::size_t q = raster.index(qx, qy);
            if (state[q] != kDone || labels[q] == 0)
                continue;
            if (found == 0)
                found = labels[q];
            else if (labels[q] != found)
                ridge = true;
        }
        state[p] = kDone;
        if (ridge || found == 0)
            continue;
        labels[p] = found;
        push_neighbours(p);
    }
    return labels;
}

SegmentedMask apply_mask(const PeakImage& peaks, const DetectionMask& mask)
{
    if (!peaks.same_shape(mask.width(), mask.height()))
        throw DimensionError("peak image and detection mask differ in size");
    SegmentedMask out(peaks.width(), peaks.height());
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = mask[i] ? peaks[i] : 0;
    return out;
}

SegmentedMask mask_as_labels(const DetectionMask& mask)
{
    SegmentedMask out(mask.width(), mask.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mask[i] ? 1 : 0;
    return out;
}

}  // namespace uvcount
