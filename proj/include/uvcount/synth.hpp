#pragma once

// Synthetic night footage with exact ground truth.
//
// Each frame is a dark field with a static green grass texture, lit by a moving UV beam
// whose intensity falls off as cos(pi/2 * d / R)^falloff. Insects are ellipses in the
// marker pink, scaled by the local beam intensity and surrounded by a short linear glow;
// clutter specks are violet reflections. Ground truth labels, per frame, every pixel an
// insect dominates that reads as marker-coloured under the default thresholds, and emits
// the box of each insect whose labelled area inside the ROI reaches gtMinArea.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uvcount/core.hpp"
#include "uvcount/eval.hpp"
#include "uvcount/io.hpp"
#include "uvcount/keyvalue.hpp"
#include "uvcount/threshold.hpp"

namespace uvcount {

inline constexpr Rgb kMarkerPink{255, 0, 128};
inline constexpr Rgb kViolet{170, 60, 255};
inline constexpr int kCalibrationImageCount = 9;

// Insect footprint statistics at 10 m altitude, 4096x2160 capture (pixels).
inline constexpr double kInsectWidthMean = 7.8;
inline constexpr double kInsectWidthStd = 2.7;
inline constexpr double kInsectLengthMean = 14.6;
inline constexpr double kInsectLengthStd = 5.0;

struct InsectSpec {
    double cx = 0.0;
    double cy = 0.0;
    double width = kInsectWidthMean;    // minor axis, pixels
    double length = kInsectLengthMean;  // major axis, pixels
    double angleDeg = 0.0;              // major-axis orientation
    Rgb color = kMarkerPink;
};

struct ClutterSpec {
    double x = 0.0;
    double y = 0.0;
    double radius = 2.0;
    Rgb color = kViolet;
};

struct SceneSpec {
    std::size_t frameCount = 500;
    int width = kDefaultRoiSize;
    int height = kDefaultRoiSize;
    int roiWidth = kDefaultRoiSize;
    int roiHeight = kDefaultRoiSize;
    double fps = 24.0;

    double beamStartX = 0.0;
    double beamStartY = 0.0;
    double beamVelX = 0.0;  // px/frame
    double beamVelY = 0.0;
    double beamRadius = 330.0;
    double beamFalloff = 2.0;
    Rgb beamTint{40, 20, 60};  // violet reflection of the lit ground at full intensity

    double glowWidth = 2.0;
    double bodyShading = 0.5;  // body brightness falls to 1 - bodyShading at the rim
    double grassNoise = 20.0;
    int gtMinArea = kDefaultMinBlobArea;
    int calibrationLevel = 40;  // mean value of calibration insect pixels

    std::vector<InsectSpec> insects;
    std::vector<ClutterSpec> clutter;
    std::uint64_t seed = 7;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// 6x6 insect grid swept left to right by the beam; every insect enters the beam
    /// before any leaves it.
    static SceneSpec grid_benchmark(std::size_t frameCount = 500, bool withClutter = false, std::uint64_t seed = 7);

    /// Reads a scene file. Besides scalar keys it accepts repeatable `insect = cx cy width
    /// length angle`, `clutter = x y radius`, and generators `grid = rows cols spacing`
    /// and `random-clutter = count`, expanded with the scene seed.
    static SceneSpec from_key_values(const KeyValueFile& kv);
    KeyValueFile to_key_values() const;
};

/// Draws an insect footprint from the field statistics, clamped to at least 3 px.
void draw_insect_size(std::mt19937_64& rng, InsectSpec& insect);

/// Adds a rows x cols grid centered in the frame with randomized sizes and orientations.
void add_insect_grid(SceneSpec& spec, int rows, int cols, double spacing, std::mt19937_64& rng);

/// Scatters violet specks at least `clearance` px away from every insect.
void add_random_clutter(SceneSpec& spec, int count, std::mt19937_64& rng, double clearance = 25.0);

struct CalibrationSet {
    std::vector<Frame> images;
    std::vector<DetectionMask> masks;
};

/// Lazily rendered synthetic video. Frames render on demand and concurrently.
class SyntheticVideo final : public FrameSource {
public:
    explicit SyntheticVideo(SceneSpec spec);

    std::size_t size() const override { return spec_.frameCount; }
    Frame load(std::size_t i) const override;

    const SceneSpec& spec() const noexcept { return spec_; }

    /// Ground-truth boxes in ROI coordinates for every frame (computed once, cached).
    const std::vector<GroundTruthBox>& ground_truth() const;

    /// Number of distinct insects that appear in the ground truth at least once.
    std::size_t distinct_insects() const;

    /// Nine single-insect images on black with their body masks.
    CalibrationSet calibration_set() const;

    /// Beam intensity in [0,1] at a pixel of frame i.
    double beam_intensity(std::size_t i, double x, double y) const noexcept;

private:
    struct Layers {
        std::vector<float> alpha;
        std::vector<float> shade;
        std::vector<std::int32_t> owner;  // insect index + 1, 0 = none
    };

    Frame render(std::size_t i, Layers* layers) const;
    void compute_ground_truth() const;

    SceneSpec spec_;
    std::vector<float> grass_;
    mutable std::once_flag gtOnce_;
    mutable std::vector<GroundTruthBox> gt_;
    mutable std::vector<std::uint8_t> insectSeen_;
};

/// One-frame scene holding only `insect`, on black, at full beam intensity.
SceneSpec isolated_insect_scene(const InsectSpec& insect, int roiWidth, int roiHeight);

/// Writes frames, manifest, gt.txt, scene.txt and calib/{images,masks} under `dir`.
void write_benchmark(const SyntheticVideo& video, const std::filesystem::path& dir);

}  // namespace uvcount
