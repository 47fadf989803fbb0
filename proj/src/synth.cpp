#include "uvcount/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <stdexcept>

namespace uvcount {

namespace {

constexpr std::uint64_t kGrassStream = 0x6a09e667f3bcc909ULL;
constexpr std::uint64_t kCalibrationStream = 0xbb67ae8584caa73bULL;
constexpr std::uint64_t kLayoutStream = 0x3c6ef372fe94f82bULL;

std::uint8_t to8(double v)
{
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Coverage of an insect (1 inside the ellipse, linear glow outside) and the normalized
// elliptical radius at a pixel center.
struct Coverage {
    double alpha = 0.0;
    double rho = 0.0;
};

Coverage insect_coverage(const InsectSpec& insect, double glowWidth, double x, double y)
{
    const double dx = x - insect.cx;
    const double dy = y - insect.cy;
    const double th = insect.angleDeg * std::numbers::pi / 180.0;
    const double u = dx * std::cos(th) + dy * std::sin(th);
    const double v = -dx * std::sin(th) + dy * std::cos(th);
    const double a = insect.length / 2.0;
    const double b = insect.width / 2.0;
    const double rho = std::sqrt((u / a) * (u / a) + (v / b) * (v / b));
    if (rho <= 1.0)
        return {1.0, rho};
    if (glowWidth <= 0.0)
        return {0.0, rho};
    const double dist = std::hypot(dx, dy) * (1.0 - 1.0 / rho);
    return {std::max(0.0, 1.0 - dist / glowWidth), rho};
}

struct PixelRect {
    int x0, y0, x1, y1;  // inclusive
};

PixelRect insect_extent(const InsectSpec& insect, double glowWidth, int w, int h)
{
    const double reach = insect.length / 2.0 + glowWidth + 1.0;
    return {std::max(0, static_cast<int>(std::floor(insect.cx - reach))),
            std::max(0, static_cast<int>(std::floor(insect.cy - reach))),
            std::min(w - 1, static_cast<int>(std::ceil(insect.cx + reach))),
            std::min(h - 1, static_cast<int>(std::ceil(insect.cy + reach)))};
}

std::string rgb_text(Rgb c)
{
    return std::to_string(c.r) + " " + std::to_string(c.g) + " " + std::to_string(c.b);
}

Rgb parse_rgb(const std::string& text, const std::string& what)
{
    const auto v = parse_numbers(text, what);
    if (v.size() != 3)
        throw ParseError(what + ": expected 'r g b'");
    for (double c : v)
        if (c < 0 || c > 255)
            throw ParseError(what + ": channel outside [0,255]");
    return {static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]), static_cast<std::uint8_t>(v[2])};
}

void set_horizontal_sweep(SceneSpec& spec)
{
    // Start and end with the visible part of the beam (intensity above ~40/255) off-frame.
    const double margin = 0.75 * spec.beamRadius;
    spec.beamStartX = -margin;
    spec.beamStartY = spec.height / 2.0;
    spec.beamVelY = 0.0;
    spec.beamVelX = spec.frameCount > 1 ? (spec.width + 2.0 * margin) / static_cast<double>(spec.frameCount - 1) : 0.0;
}

}  // namespace

void SceneSpec::validate() const
{
    if (frameCount == 0)
        throw std::invalid_argument("scene: frames must be positive");
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("scene: frame size must be positive");
    if (roiWidth <= 0 || roiHeight <= 0 || roiWidth > width || roiHeight > height)
        throw std::invalid_argument("scene: roi must be positive and fit inside the frame");
    if (!(fps > 0))
        throw std::invalid_argument("scene: fps must be positive");
    if (!(beamRadius > 0))
        throw std::invalid_argument("scene: beam-radius must be positive");
    if (!(beamFalloff > 0))
        throw std::invalid_argument("scene: beam-falloff must be positive");
    if (!std::isfinite(beamStartX) || !std::isfinite(beamStartY) || !std::isfinite(beamVelX) ||
        !std::isfinite(beamVelY))
        throw std::invalid_argument("scene: beam path must be finite");
    if (bodyShading < 0 || bodyShading > 1)
        throw std::invalid_argument("scene: body-shading must lie in [0,1]");
    if (glowWidth < 0 || grassNoise < 0)
        throw std::invalid_argument("scene: glow-width and grass-noise must be non-negative");
    if (gtMinArea < 0)
        throw std::invalid_argument("scene: gt-min-area must be non-negative");
    if (calibrationLevel <= 0 || calibrationLevel > 255)
        throw std::invalid_argument("scene: calibration-level must lie in (0,255]");
    for (const auto& in : insects)
        if (!(in.width > 0) || !(in.length > 0))
            throw std::invalid_argument("scene: insect axes must be positive");
    for (const auto& c : clutter)
        if (!(c.radius > 0))
            throw std::invalid_argument("scene: clutter radius must be positive");
}

void draw_insect_size(std::mt19937_64& rng, InsectSpec& insect)
{
    std::normal_distribution<double> width(kInsectWidthMean, kInsectWidthStd);
    std::normal_distribution<double> length(kInsectLengthMean, kInsectLengthStd);
    double w = std::max(3.0, width(rng));
    double l = std::max(3.0, length(rng));
    if (l < w)
        std::swap(l, w);
    insect.width = w;
    insect.length = l;
}

void add_insect_grid(SceneSpec& spec, int rows, int cols, double spacing, std::mt19937_64& rng)
{
    if (rows <= 0 || cols <= 0 || !(spacing > 0))
        throw std::invalid_argument("scene: grid needs positive rows, cols and spacing");
    std::uniform_real_distribution<double> jitter(-0.1 * spacing, 0.1 * spacing);
    std::uniform_real_distribution<double> angle(0.0, 180.0);
    const double x0 = spec.width / 2.0 - spacing * (cols - 1) / 2.0;
    const double y0 = spec.height / 2.0 - spacing * (rows - 1) / 2.0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            InsectSpec in;
            in.cx = x0 + c * spacing + jitter(rng);
            in.cy = y0 + r * spacing + jitter(rng);
            in.angleDeg = angle(rng);
            draw_insect_size(rng, in);
            spec.insects.push_back(in);
        }
    }
}

void add_random_clutter(SceneSpec& spec, int count, std::mt19937_64& rng, double clearance)
{
    const double mx = (spec.width - spec.roiWidth) / 2.0;
    const double my = (spec.height - spec.roiHeight) / 2.0;
    std::uniform_real_distribution<double> px(mx + 4.0, mx + spec.roiWidth - 4.0);
    std::uniform_real_distribution<double> py(my + 4.0, my + spec.roiHeight - 4.0);
    std::uniform_real_distribution<double> radius(1.5, 3.5);
    int placed = 0;
    for (int tries = 0; placed < count && tries < 1000 * std::max(count, 1); ++tries) {
        ClutterSpec c{px(rng), py(rng), radius(rng), kViolet};
        const bool clear = std::all_of(spec.insects.begin(), spec.insects.end(), [&](const InsectSpec& in) {
            return std::hypot(in.cx - c.x, in.cy - c.y) >= clearance + in.length / 2.0;
        });
        if (clear) {
            spec.clutter.push_back(c);
            ++placed;
        }
    }
}

SceneSpec SceneSpec::grid_benchmark(std::size_t frameCount, bool withClutter, std::uint64_t seed)
{
    SceneSpec spec;
    spec.frameCount = frameCount;
    spec.seed = seed;
    set_horizontal_sweep(spec);
    std::mt19937_64 rng(seed ^ kLayoutStream);
    add_insect_grid(spec, 6, 6, 50.0, rng);
    if (withClutter)
        add_random_clutter(spec, 60, rng);
    return spec;
}

SceneSpec SceneSpec::from_key_values(const KeyValueFile& kv)
{
    SceneSpec spec;
    const std::string o = kv.origin() + ": ";
    const int frames = kv.get_int("frames", static_cast<int>(spec.frameCount));
    if (frames < 0)
        throw std::invalid_argument("scene: frames must be positive");
    spec.frameCount = static_cast<std::size_t>(frames);
    spec.width = kv.get_int("width", spec.width);
    spec.height = kv.get_int("height", spec.height);
    if (auto roi = kv.get("roi")) {
        std::tie(spec.roiWidth, spec.roiHeight) = parse_dims(*roi, o + "roi");
    } else {
        spec.roiWidth = std::min(kDefaultRoiSize, spec.width);
        spec.roiHeight = std::min(kDefaultRoiSize, spec.height);
    }
    spec.fps = kv.get_double("fps", spec.fps);
    if (auto s = kv.get("seed")) {
        try {
            spec.seed = std::stoull(*s);
        } catch (const std::exception&) {
            throw ParseError(o + "seed: not an unsigned integer: '" + *s + "'");
        }
    }
    spec.beamRadius = kv.get_double("beam-radius", spec.beamRadius);
    spec.beamFalloff = kv.get_double("beam-falloff", spec.beamFalloff);
    if (auto t = kv.get("beam-tint"))
        spec.beamTint = parse_rgb(*t, o + "beam-tint");
    spec.glowWidth = kv.get_double("glow-width", spec.glowWidth);
    spec.bodyShading = kv.get_double("body-shading", spec.bodyShading);
    spec.grassNoise = kv.get_double("grass-noise", spec.grassNoise);
    spec.gtMinArea = kv.get_int("gt-min-area", spec.gtMinArea);
    spec.calibrationLevel = kv.get_int("calibration-level", spec.calibrationLevel);

    const std::string sweep = kv.get_string("beam-sweep", kv.has("beam-start") ? "manual" : "horizontal");
    if (sweep == "horizontal") {
        set_horizontal_sweep(spec);
    } else if (sweep == "manual") {
        const auto start = parse_numbers(kv.get_string("beam-start", ""), o + "beam-start");
        const auto vel = parse_numbers(kv.get_string("beam-velocity", "0 0"), o + "beam-velocity");
        if (start.size() != 2 || vel.size() != 2)
            throw ParseError(o + "beam-start and beam-velocity need two numbers each");
        spec.beamStartX = start[0];
        spec.beamStartY = start[1];
        spec.beamVelX = vel[0];
        spec.beamVelY = vel[1];
    } else {
        throw ParseError(o + "beam-sweep must be 'horizontal' or 'manual'");
    }

    std::mt19937_64 rng(spec.seed ^ kLayoutStream);
    for (const auto& line : kv.get_all("insect")) {
        const auto v = parse_numbers(line, o + "insect");
        if (v.size() != 5)
            throw ParseError(o + "insect needs 'cx cy width length angle'");
        spec.insects.push_back({v[0], v[1], v[2], v[3], v[4], kMarkerPink});
    }
    for (const auto& line : kv.get_all("grid")) {
        const auto v = parse_numbers(line, o + "grid");
        if (v.size() != 3)
            throw ParseError(o + "grid needs 'rows cols spacing'");
        add_insect_grid(spec, static_cast<int>(v[0]), static_cast<int>(v[1]), v[2], rng);
    }
    for (const auto& line : kv.get_all("clutter")) {
        const auto v = parse_numbers(line, o + "clutter");
        if (v.size() != 3)
            throw ParseError(o + "clutter needs 'x y radius'");
        spec.clutter.push_back({v[0], v[1], v[2], kViolet});
    }
    if (auto n = kv.get("random-clutter"))
        add_random_clutter(spec, parse_int(*n, o + "random-clutter"), rng);

    spec.validate();
    return spec;
}

KeyValueFile SceneSpec::to_key_values() const
{
    KeyValueFile kv;
    kv.add("frames", std::to_string(frameCount));
    kv.add("width", std::to_string(width));
    kv.add("height", std::to_string(height));
    kv.add("roi", std::to_string(roiWidth) + "x" + std::to_string(roiHeight));
    kv.add("fps", format_double(fps));
    kv.add("seed", std::to_string(seed));
    kv.add("beam-sweep", "manual");
    kv.add("beam-start", format_double(beamStartX) + " " + format_double(beamStartY));
    kv.add("beam-velocity", format_double(beamVelX) + " " + format_double(beamVelY));
    kv.add("beam-radius", format_double(beamRadius));
    kv.add("beam-falloff", format_double(beamFalloff));
    kv.add("beam-tint", rgb_text(beamTint));
    kv.add("glow-width", format_double(glowWidth));
    kv.add("body-shading", format_double(bodyShading));
    kv.add("grass-noise", format_double(grassNoise));
    kv.add("gt-min-area", std::to_string(gtMinArea));
    kv.add("calibration-level", std::to_string(calibrationLevel));
    for (const auto& in : insects)
        kv.add("insect", format_double(in.cx) + " " + format_double(in.cy) + " " + format_double(in.width) + " " +
                             format_double(in.length) + " " + format_double(in.angleDeg));
    for (const auto& c : clutter)
        kv.add("clutter", format_double(c.x) + " " + format_double(c.y) + " " + format_double(c.radius));
    return kv;
}

SceneSpec isolated_insect_scene(const InsectSpec& insect, int roiWidth, int roiHeight)
{
    SceneSpec spec;
    spec.frameCount = 1;
    spec.width = spec.roiWidth = roiWidth;
    spec.height = spec.roiHeight = roiHeight;
    spec.beamRadius = 1e12;
    spec.beamStartX = insect.cx;
    spec.beamStartY = insect.cy;
    spec.beamVelX = spec.beamVelY = 0.0;
    spec.beamTint = {0, 0, 0};
    spec.grassNoise = 0.0;
    spec.insects = {insect};
    return spec;
}

SyntheticVideo::SyntheticVideo(SceneSpec spec) : spec_(std::move(spec))
{
    spec_.validate();
    grass_.resize(static_cast<std::size_t>(spec_.width) * static_cast<std::size_t>(spec_.height));
    std::mt19937_64 rng(spec_.seed ^ kGrassStream);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    for (auto& g : grass_)
        g = u(rng);
}

double SyntheticVideo::beam_intensity(std::size_t i, double x, double y) const noexcept
{
    const double t = static_cast<double>(i);
    const double d = std::hypot(x - (spec_.beamStartX + spec_.beamVelX * t), y - (spec_.beamStartY + spec_.beamVelY * t));
    if (d >= spec_.beamRadius)
        return 0.0;
    const double c = std::cos(std::numbers::pi / 2.0 * d / spec_.beamRadius);
    return spec_.beamFalloff == 2.0 ? c * c : std::pow(c, spec_.beamFalloff);
}

Frame SyntheticVideo::render(std::size_t i, Layers* layers) const
{
    const int w = spec_.width;
    const int h = spec_.height;
    Frame frame(w, h, i);
    const Rgb tint = spec_.beamTint;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double k = beam_intensity(i, x, y);
            const double grass = spec_.grassNoise * grass_[static_cast<std::size_t>(y) * w + x] * (0.25 + 0.75 * k);
            frame.set_pixel(x, y, {to8(tint.r * k), to8(tint.g * k + grass), to8(tint.b * k)});
        }
    }

    for (const auto& c : spec_.clutter) {
        const int x0 = std::max(0, static_cast<int>(std::floor(c.x - c.radius)));
        const int x1 = std::min(w - 1, static_cast<int>(std::ceil(c.x + c.radius)));
        const int y0 = std::max(0, static_cast<int>(std::floor(c.y - c.radius)));
        const int y1 = std::min(h - 1, static_cast<int>(std::ceil(c.y + c.radius)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                if (std::hypot(x - c.x, y - c.y) <= c.radius) {
                    const double k = beam_intensity(i, x, y);
                    frame.set_pixel(x, y, {to8(c.color.r * k), to8(c.color.g * k), to8(c.color.b * k)});
                }
    }

    Layers local;
    Layers& L = layers ? *layers : local;
    L.alpha.assign(frame.pixel_count(), 0.0f);
    L.shade.assign(frame.pixel_count(), 0.0f);
    L.owner.assign(frame.pixel_count(), 0);
    std::vector<PixelRect> extents;
    for (std::size_t n = 0; n < spec_.insects.size(); ++n) {
        const auto& in = spec_.insects[n];
        const PixelRect r = insect_extent(in, spec_.glowWidth, w, h);
        for (int y = r.y0; y <= r.y1; ++y) {
            for (int x = r.x0; x <= r.x1; ++x) {
                const Coverage c = insect_coverage(in, spec_.glowWidth, x, y);
                const std::size_t p = static_cast<std::size_t>(y) * w + x;
                if (c.alpha > L.alpha[p]) {
                    L.alpha[p] = static_cast<float>(c.alpha);
                    L.shade[p] = static_cast<float>(1.0 - spec_.bodyShading * std::min(1.0, c.rho * c.rho));
                    L.owner[p] = static_cast<std::int32_t>(n + 1);
                }
            }
        }
        extents.push_back(r);
    }
    for (std::size_t n = 0; n < spec_.insects.size(); ++n) {
        const PixelRect r = extents[n];
        const Rgb col = spec_.insects[n].color;
        for (int y = r.y0; y <= r.y1; ++y) {
            for (int x = r.x0; x <= r.x1; ++x) {
                const std::size_t p = static_cast<std::size_t>(y) * w + x;
                if (L.owner[p] != static_cast<std::int32_t>(n + 1))
                    continue;
                const double a = L.alpha[p];
                const double k = beam_intensity(i, x, y) * L.shade[p];
                const Rgb below = frame.pixel(p);
                frame.set_pixel(p, {to8(a * col.r * k + (1 - a) * below.r), to8(a * col.g * k + (1 - a) * below.g),
                                    to8(a * col.b * k + (1 - a) * below.b)});
            }
        }
    }
    return frame;
}

Frame SyntheticVideo::load(std::size_t i) const
{
    if (i >= spec_.frameCount)
        throw std::out_of_range("synthetic frame index out of range");
    return render(i, nullptr);
}

void SyntheticVideo::compute_ground_truth() const
{
    const ThresholdConfig labeller;
    const int offX = (spec_.width - spec_.roiWidth) / 2;
    const int offY = (spec_.height - spec_.roiHeight) / 2;
    const std::size_t nInsects = spec_.insects.size();
    std::vector<std::vector<GroundTruthBox>> perFrame(spec_.frameCount);
    std::vector<std::vector<std::uint8_t>> seen(spec_.frameCount);

    const auto n = static_cast<std::ptrdiff_t>(spec_.frameCount);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t fi = 0; fi < n; ++fi) {
        const auto i = static_cast<std::size_t>(fi);
        seen[i].assign(nInsects, 0);
        if (nInsects == 0)
            continue;
        Layers layers;
        const Frame frame = render(i, &layers);
        for (std::size_t k = 0; k < nInsects; ++k) {
            const PixelRect r = insect_extent(spec_.insects[k], spec_.glowWidth, spec_.width, spec_.height);
            int x0 = spec_.roiWidth, y0 = spec_.roiHeight, x1 = -1, y1 = -1, area = 0;
            for (int y = std::max(r.y0, offY); y <= std::min(r.y1, offY + spec_.roiHeight - 1); ++y) {
                for (int x = std::max(r.x0, offX); x <= std::min(r.x1, offX + spec_.roiWidth - 1); ++x) {
                    const std::size_t p = static_cast<std::size_t>(y) * spec_.width + x;
                    if (layers.owner[p] != static_cast<std::int32_t>(k + 1) || !is_foreground(frame.pixel(p), labeller))
                        continue;
                    ++area;
                    x0 = std::min(x0, x - offX);
                    x1 = std::max(x1, x - offX);
                    y0 = std::min(y0, y - offY);
                    y1 = std::max(y1, y - offY);
                }
            }
            if (area > 0 && area >= spec_.gtMinArea) {
                perFrame[i].push_back({i, {x0, y0, x1 - x0 + 1, y1 - y0 + 1}});
                seen[i][k] = 1;
            }
        }
    }

    gt_.clear();
    insectSeen_.assign(nInsects, 0);
    for (std::size_t i = 0; i < spec_.frameCount; ++i) {
        gt_.insert(gt_.end(), perFrame[i].begin(), perFrame[i].end());
        for (std::size_t k = 0; k < nInsects; ++k)
            insectSeen_[k] |= seen[i][k];
    }
}

const std::vector<GroundTruthBox>& SyntheticVideo::ground_truth() const
{
    std::call_once(gtOnce_, [this] { compute_ground_truth(); });
    return gt_;
}

std::size_t SyntheticVideo::distinct_insects() const
{
    ground_truth();
    return static_cast<std::size_t>(std::count(insectSeen_.begin(), insectSeen_.end(), std::uint8_t{1}));
}

CalibrationSet SyntheticVideo::calibration_set() const
{
    constexpr int kSize = 64;
    std::mt19937_64 rng(spec_.seed ^ kCalibrationStream);
    std::uniform_real_distribution<double> offset(-0.5, 0.5);
    std::uniform_real_distribution<double> angle(0.0, 180.0);

    CalibrationSet set;
    for (int n = 0; n < kCalibrationImageCount; ++n) {
        InsectSpec in;
        draw_insect_size(rng, in);
        in.width = std::clamp(in.width, 5.0, 20.0);
        in.length = std::clamp(in.length, in.width, 40.0);
        in.cx = kSize / 2.0 + offset(rng);
        in.cy = kSize / 2.0 + offset(rng);
        in.angleDeg = angle(rng);

        std::vector<double> shade(kSize * kSize, 0.0);
        DetectionMask mask(kSize, kSize);
        for (int y = 0; y < kSize; ++y) {
            for (int x = 0; x < kSize; ++x) {
                const Coverage c = insect_coverage(in, spec_.glowWidth, x, y);
                const std::size_t p = static_cast<std::size_t>(y) * kSize + x;
                if (c.rho <= 1.0) {
                    shade[p] = 1.0 - spec_.bodyShading * c.rho * c.rho;
                    mask[p] = 1;
                } else {
                    shade[p] = (1.0 - spec_.bodyShading) * c.alpha;
                }
            }
        }

        auto render_at = [&](double gain) {
            Frame f(kSize, kSize, static_cast<std::size_t>(n));
            for (std::size_t p = 0; p < shade.size(); ++p) {
                const double s = gain * shade[p];
                f.set_pixel(p, {to8(in.color.r * s), to8(in.color.g * s), to8(in.color.b * s)});
            }
            return f;
        };
        auto mean_value = [&](const Frame& f) {
            double sum = 0;
            std::size_t cnt = 0;
            for (std::size_t p = 0; p < mask.size(); ++p)
                if (mask[p]) {
                    const Rgb q = f.pixel(p);
                    sum += std::max({q.r, q.g, q.b});
                    ++cnt;
                }
            return sum / static_cast<double>(cnt);
        };

        // Smallest gain reaching the target mean, then whichever neighbour lands closer.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mean_value(render_at(mid)) >= spec_.calibrationLevel ? hi : lo) = mid;
        }
        Frame above = render_at(hi);
        Frame below = render_at(lo);
        const double target = spec_.calibrationLevel;
        Frame chosen = std::abs(mean_value(above) - target) <= std::abs(mean_value(below) - target) ? above : below;
        set.images.push_back(std::move(chosen));
        set.masks.push_back(std::move(mask));
    }
    return set;
}

void write_benchmark(const SyntheticVideo& video, const std::filesystem::path& dir)
{
    namespace fs = std::filesystem;
    const SceneSpec& spec = video.spec();
    fs::create_directories(dir / "calib" / "images");
    fs::create_directories(dir / "calib" / "masks");

    const auto n = static_cast<std::ptrdiff_t>(video.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            write_ppm(dir / frame_file_name(static_cast<std::size_t>(i)), video.load(static_cast<std::size_t>(i)));
        } catch (...) {
#pragma omp critical(uvcount_synth_error)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    write_file_atomic(dir / "gt.txt", format_ground_truth(video.ground_truth()));
    write_file_atomic(dir / "scene.txt", spec.to_key_values().to_string());

    const CalibrationSet calib = video.calibration_set();
    for (std::size_t n = 0; n < calib.images.size(); ++n) {
        char name[32];
        std::snprintf(name, sizeof name, "calib_%03zu", n);
        write_ppm(dir / "calib" / "images" / (std::string(name) + ".ppm"), calib.images[n]);
        GrayImage m(calib.masks[n].width(), calib.masks[n].height());
        for (std::size_t p = 0; p < m.size(); ++p)
            m[p] = calib.masks[n][p] ? 255 : 0;
        write_pgm(dir / "calib" / "masks" / (std::string(name) + ".pgm"), m);
    }

    // Manifest last: its presence marks a complete benchmark directory.
    Manifest manifest;
    manifest.fps = spec.fps;
    manifest.width = spec.width;
    manifest.height = spec.height;
    manifest.frameCount = video.size();
    manifest.extra = {{"generator", "uvcount-synth"},
                      {"seed", std::to_string(spec.seed)},
                      {"rng", "mt19937_64"},
                      {"roi", std::to_string(spec.roiWidth) + "x" + std::to_string(spec.roiHeight)}};
    manifest.save(dir);
}

}  // namespace uvcount
