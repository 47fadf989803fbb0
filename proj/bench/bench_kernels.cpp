// Serial reference kernels against their OpenMP counterparts, plus one whole frame.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "uvcount/baseline.hpp"
#include "uvcount/detect.hpp"
#include "uvcount/segment.hpp"
#include "uvcount/serial.hpp"
#include "uvcount/synth.hpp"
#include "uvcount/threshold.hpp"

using namespace uvcount;

namespace {

const Frame& sample_frame(int side)
{
    static const Frame f720 = SyntheticVideo(SceneSpec::grid_benchmark(1, true)).load(0);
    static const Frame f1440 = [] {
        SceneSpec spec = SceneSpec::grid_benchmark(1, true);
        spec.width = spec.height = spec.roiWidth = spec.roiHeight = 1440;
        return SyntheticVideo(spec).load(0);
    }();
    return side == 720 ? f720 : f1440;
}

const GrayImage& sample_value(int side)
{
    static const GrayImage v720 = value_channel(sample_frame(720));
    static const GrayImage v1440 = value_channel(sample_frame(1440));
    return side == 720 ? v720 : v1440;
}

template <auto Kernel>
void frame_kernel(benchmark::State& state)
{
    const Frame& f = sample_frame(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(f));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.pixel_count()));
}

template <auto Kernel>
void mask_kernel(benchmark::State& state)
{
    const Frame& f = sample_frame(static_cast<int>(state.range(0)));
    const ThresholdConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(f, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.pixel_count()));
}

template <auto Kernel>
void smooth_kernel(benchmark::State& state)
{
    const GrayImage& g = sample_value(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(g, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}

template <auto Kernel>
void gray_kernel(benchmark::State& state)
{
    const GrayImage& g = sample_value(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(g));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}

template <auto Kernel>
void apply_kernel(benchmark::State& state)
{
    const int side = static_cast<int>(state.range(0));
    const GrayImage smooth = box_smooth(sample_value(side), 1);
    const PeakImage peaks = watershed_peaks(smooth, regional_maxima(smooth, 40));
    const DetectionMask mask = foreground_mask(sample_frame(side), ThresholdConfig{});
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(peaks, mask));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(mask.size()));
}

GrayImage value_parallel(const Frame& f) { return value_channel(f); }
GrayImage luminance_parallel(const Frame& f) { return luminance(f); }
DetectionMask mask_parallel(const Frame& f, const ThresholdConfig& c) { return foreground_mask(f, c); }
GrayImage smooth_parallel(const GrayImage& g, int r) { return box_smooth(g, r); }
SegmentedMask apply_parallel(const PeakImage& p, const DetectionMask& m) { return apply_mask(p, m); }
Histogram histogram_parallel(const GrayImage& g) { return histogram(g); }

void whole_frame(benchmark::State& state)
{
    const int side = static_cast<int>(state.range(0));
    const Frame& f = sample_frame(side);
    PipelineParams params;
    params.roiWidth = params.roiHeight = side;
    for (auto _ : state)
        benchmark::DoNotOptimize(detect_frame(f, params));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.pixel_count()));
}

}  // namespace

#define SIDES ->Arg(720)->Arg(1440)->Unit(benchmark::kMicrosecond)

BENCHMARK(frame_kernel<serial::value_channel>)->Name("value_channel/serial") SIDES;
BENCHMARK(frame_kernel<value_parallel>)->Name("value_channel/parallel") SIDES;
BENCHMARK(frame_kernel<serial::luminance>)->Name("luminance/serial") SIDES;
BENCHMARK(frame_kernel<luminance_parallel>)->Name("luminance/parallel") SIDES;
BENCHMARK(mask_kernel<serial::foreground_mask>)->Name("foreground_mask/serial") SIDES;
BENCHMARK(mask_kernel<mask_parallel>)->Name("foreground_mask/parallel") SIDES;
BENCHMARK(smooth_kernel<serial::box_smooth>)->Name("box_smooth/serial") SIDES;
BENCHMARK(smooth_kernel<smooth_parallel>)->Name("box_smooth/parallel") SIDES;
BENCHMARK(apply_kernel<serial::apply_mask>)->Name("apply_mask/serial") SIDES;
BENCHMARK(apply_kernel<apply_parallel>)->Name("apply_mask/parallel") SIDES;
BENCHMARK(gray_kernel<serial::histogram>)->Name("histogram/serial") SIDES;
BENCHMARK(gray_kernel<histogram_parallel>)->Name("histogram/parallel") SIDES;
BENCHMARK(whole_frame)->Name("detect_frame") SIDES;

BENCHMARK_MAIN();
