#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "uvcount/baseline.hpp"
#include "uvcount/serial.hpp"
#include "uvcount/synth.hpp"

using namespace uvcount;
using uvcount::testing::brute_force_otsu;

namespace {

Frame gray_frame(const GrayImage& g)
{
    Frame f(g.width(), g.height());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            f.set_pixel(x, y, {g.at(x, y), g.at(x, y), g.at(x, y)});
    return f;
}

// Half the pixels at `t`, half at 255: every threshold from t to 254 splits the same way,
// so the smallest, t, wins.
Frame two_level_frame(int t)
{
    GrayImage g(8, 8, 255);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 8; ++x)
            g.at(x, y) = static_cast<std::uint8_t>(t);
    return gray_frame(g);
}

BaselineParams params_for(int w, int h)
{
    BaselineParams p;
    p.roiWidth = w;
    p.roiHeight = h;
    return p;
}

long long pixels_above(const Frame& f, int t)
{
    const GrayImage l = luminance(f);
    return std::count_if(l.data().begin(), l.data().end(), [t](auto v) { return v > t; });
}

// Dark frame with a few random bright rectangles.
Frame blobby_frame(std::mt19937_64& rng, int w, int h)
{
    GrayImage g = uvcount::testing::random_gray(rng, w, h, 0, 30);
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
        const int bx = static_cast<int>(rng() % static_cast<unsigned>(w - 6));
        const int by = static_cast<int>(rng() % static_cast<unsigned>(h - 6));
        const auto level = static_cast<std::uint8_t>(40 + rng() % 216);
        for (int y = by; y < by + 6; ++y)
            for (int x = bx; x < bx + 6; ++x)
                g.at(x, y) = level;
    }
    return gray_frame(g);
}

}  // namespace

TEST(Otsu, HalfBlackHalfWhite)
{
    GrayImage g(10, 10, 0);
    for (int y = 5; y < 10; ++y)
        for (int x = 0; x < 10; ++x)
            g.at(x, y) = 255;
    EXPECT_EQ(otsu_threshold(g), 0);
    EXPECT_EQ(brute_force_otsu(g), 0);
}

TEST(Otsu, UniformRasterGivesZero)
{
    for (const int v : {0, 17, 255})
        EXPECT_EQ(otsu_threshold(GrayImage(9, 4, static_cast<std::uint8_t>(v))), 0);
}

TEST(Otsu, TwoLevelFixtures)
{
    for (const int t : {59, 119, 176})
        EXPECT_EQ(otsu_threshold(luminance(two_level_frame(t))), t);
}

TEST(Otsu, MatchesExactRationalOracle)
{
    std::mt19937_64 rng(1);
    for (int n = 0; n < 300; ++n) {
        const int lo = static_cast<int>(rng() % 256);
        const int hi = lo + static_cast<int>(rng() % static_cast<unsigned>(256 - lo));
        const GrayImage g = uvcount::testing::random_gray(rng, 1 + static_cast<int>(rng() % 40),
                                                          1 + static_cast<int>(rng() % 40), lo, hi);
        ASSERT_EQ(otsu_threshold(g), brute_force_otsu(g)) << lo << ".." << hi;
    }
}

TEST(Histogram, MatchesSerialReference)
{
    std::mt19937_64 rng(2);
    for (const auto& [w, h] : {std::pair{1, 1}, std::pair{33, 7}, std::pair{720, 720}}) {
        const GrayImage g = uvcount::testing::random_gray(rng, w, h);
        const Histogram hist = histogram(g);
        EXPECT_EQ(hist, serial::histogram(g));
        std::uint64_t total = 0;
        for (const auto c : hist)
            total += c;
        EXPECT_EQ(total, g.size());
    }
}

TEST(VideoMaxThreshold, FixtureFrames)
{
    const InMemoryFrames video({two_level_frame(59), two_level_frame(119), two_level_frame(176)});
    const OtsuResult r = video_max_threshold(video, 8, 8);
    EXPECT_EQ(r.perFrameThresholds, (std::vector<int>{59, 119, 176}));
    EXPECT_EQ(r.videoMax, 176);
}

TEST(VideoMaxThreshold, PermutationInvariant)
{
    std::mt19937_64 rng(3);
    for (int n = 0; n < 20; ++n) {
        std::vector<Frame> frames;
        for (int k = 0; k < 6; ++k)
            frames.push_back(blobby_frame(rng, 32, 32));
        const int tm = video_max_threshold(InMemoryFrames(frames), 32, 32).videoMax;
        std::shuffle(frames.begin(), frames.end(), rng);
        ASSERT_EQ(video_max_threshold(InMemoryFrames(frames), 32, 32).videoMax, tm);
    }
}

TEST(VideoMaxThreshold, EmptyVideoRejected)
{
    EXPECT_THROW(video_max_threshold(InMemoryFrames({}), 8, 8), std::invalid_argument);
    EXPECT_THROW(baseline_detect(InMemoryFrames({}), params_for(8, 8)), std::invalid_argument);
}

TEST(BaselineDetect, BrightFrameSuppressesDimInsectElsewhere)
{
    GrayImage dim(40, 40, 0);
    for (int y = 10; y < 20; ++y)
        for (int x = 10; x < 20; ++x)
            dim.at(x, y) = 60;
    GrayImage bright(40, 40, 100);
    for (int y = 20; y < 40; ++y)
        for (int x = 0; x < 40; ++x)
            bright.at(x, y) = 255;
    const std::vector<Frame> frames{gray_frame(dim), gray_frame(bright)};
    const BaselineParams p = params_for(40, 40);

    EXPECT_EQ(baseline_frame(frames[0], otsu_threshold(dim), p).detections.size(), 1u);
    const VideoReport report = baseline_detect(InMemoryFrames(frames), p);
    EXPECT_EQ(report.mode, "baseline");
    ASSERT_EQ(report.frames.size(), 2u);
    EXPECT_TRUE(report.frames[0].detections.empty());
    ASSERT_EQ(report.frames[1].detections.size(), 1u);
    EXPECT_EQ(report.frames[1].detections[0].box, (Box{0, 20, 40, 20}));
    EXPECT_EQ(report.frames[1].detections[0].score, 255.0);
}

TEST(BaselineDetect, FlagsClutterThatTheMainPipelineRejects)
{
    InsectSpec insect;
    insect.cx = 30;
    insect.cy = 40;
    SceneSpec spec = isolated_insect_scene(insect, 80, 80);
    spec.clutter.push_back({60, 40, 4.0, kViolet});
    const Frame f = SyntheticVideo(spec).load(0);

    PipelineParams main;
    main.roiWidth = main.roiHeight = 80;
    EXPECT_EQ(detect_frame(f, main).detections.size(), 1u);
    const VideoReport base = baseline_detect(InMemoryFrames({f}), params_for(80, 80));
    EXPECT_EQ(base.frames[0].detections.size(), 2u);
}

TEST(BaselineDetect, VideoThresholdDominatesAndRemovesPixels)
{
    std::mt19937_64 rng(4);
    for (int n = 0; n < 30; ++n) {
        std::vector<Frame> frames;
        for (int k = 0; k < 5; ++k)
            frames.push_back(blobby_frame(rng, 40, 30));
        const OtsuResult r = video_max_threshold(InMemoryFrames(frames), 40, 30);
        for (std::size_t k = 0; k < frames.size(); ++k) {
            ASSERT_LE(r.perFrameThresholds[k], r.videoMax);
            ASSERT_LE(pixels_above(frames[k], r.videoMax), pixels_above(frames[k], r.perFrameThresholds[k]));
        }

        // Adding a frame can only raise the threshold and shrink existing foreground.
        std::vector<Frame> more = frames;
        more.push_back(blobby_frame(rng, 40, 30));
        const int tm2 = video_max_threshold(InMemoryFrames(more), 40, 30).videoMax;
        ASSERT_GE(tm2, r.videoMax);
        for (const auto& f : frames)
            ASSERT_LE(pixels_above(f, tm2), pixels_above(f, r.videoMax));
    }
}

TEST(BaselineDetect, MatchesSingleFrameCallsAndCounter)
{
    std::mt19937_64 rng(5);
    std::vector<Frame> frames;
    for (int k = 0; k < 8; ++k)
        frames.push_back(blobby_frame(rng, 48, 48));
    const BaselineParams p = params_for(40, 40);
    const VideoReport report = baseline_detect(InMemoryFrames(frames), p);
    const int tm = video_max_threshold(InMemoryFrames(frames), 40, 40).videoMax;
    long long global = 0, prev = 0;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const FrameResult one = baseline_frame(frames[k], tm, p);
        EXPECT_EQ(report.frames[k].detections.size(), one.detections.size());
        global = update_counter(prev, one.blobCount, global);
        prev = one.blobCount;
        EXPECT_EQ(report.frames[k].globalCount, global);
    }
    EXPECT_EQ(report.globalCount, global);
}
