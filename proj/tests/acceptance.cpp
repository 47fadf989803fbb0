// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "oracles.hpp"
#include "support.hpp"
#include "uvcount/baseline.hpp"
#include "uvcount/detect.hpp"
#include "uvcount/eval.hpp"
#include "uvcount/segment.hpp"
#include "uvcount/synth.hpp"
#include "uvcount/threshold.hpp"

using namespace uvcount;
using namespace uvcount::testing;
namespace fs = std::filesystem;

namespace {

// Reference-run values of the seeded 500-frame grid benchmark (seed 7).
constexpr long long kGridTruthBoxes = 6461;
constexpr long long kGridGlobalCount = 36;
constexpr double kClutterAucMain = 1.0;
constexpr double kClutterAucBaseline = 0.047544023;
constexpr int kClutterVideoThreshold = 14;
constexpr double kAucTolerance = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int failures = 0;

void run(int id, const std::string& title, const std::function<Verdict()>& body)
{
    const auto t0 = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.note(std::string("exception: ") + e.what());
    }
    failures += !v.pass;
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
}

Verdict threshold_suite()
{
    const auto t0 = Clock::now();
    Verdict v;
    const ThresholdConfig cfg;
    v.require(is_foreground({255, 0, 128}, cfg), "(255,0,128) accepted");
    v.require(!is_foreground({128, 0, 255}, cfg), "(128,0,255) rejected");
    v.require(!is_foreground({0, 0, 0}, cfg), "black rejected");
    v.require(!is_foreground({200, 0, 200}, cfg), "r == b rejected");
    v.require(!is_foreground({200, 50, 50}, cfg), "b == g rejected");
    v.require(!is_foreground({40, 0, 20}, cfg) && is_foreground({41, 0, 20}, cfg), "value floor is strict");
    v.require(!is_foreground({255, 0, 254}, cfg), "hue between the bands rejected");
    v.require(!is_foreground({255, 200, 210}, cfg), "low saturation rejected");
    v.require(is_foreground({255, 0, 128}, HsvPixel{24, 255, 255}, cfg), "lower hue band admits");
    v.require(!is_foreground({255, 0, 128}, HsvPixel{120, 255, 255}, cfg), "mid hue rejected");
    ThresholdConfig narrow = cfg;
    narrow.satUpper = 254;
    v.require(!is_foreground({255, 0, 128}, narrow), "saturation cap is inclusive");

    int laws = 0;
    for (const auto& law : monotonicity_laws()) {
        const LawOutcome out = check_law(law, 10000);
        v.require(out.violations == 0, law.name + ": " + std::to_string(out.violations) + " violations");
        v.require(out.acceptedByBoth > 0 && out.droppedByTightening > 0, law.name + " exercised both outcomes");
        ++laws;
    }
    const double t = seconds_since(t0);
    v.require(t < 5.0, "runtime < 5 s");
    v.note(std::to_string(laws) + " laws x 10000 pixels, runtime " + fmt("%.2f s", t));
    return v;
}

Verdict otsu_oracle()
{
    const auto t0 = Clock::now();
    Verdict v;
    std::mt19937_64 rng(2024);
    int mismatches = 0;
    for (int n = 0; n < 1000; ++n) {
        const int lo = static_cast<int>(rng() % 256);
        const int hi = lo + static_cast<int>(rng() % static_cast<unsigned>(256 - lo));
        const GrayImage g =
            random_gray(rng, 1 + static_cast<int>(rng() % 32), 1 + static_cast<int>(rng() % 32), lo, hi);
        mismatches += otsu_threshold(g) != brute_force_otsu(g);
    }
    const double t = seconds_since(t0);
    v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    v.require(t < 30.0, "runtime < 30 s");
    v.note("1000 rasters, 0 mismatches allowed, runtime " + fmt("%.2f s", t));
    return v;
}

Verdict subset_law()
{
    Verdict v;
    std::mt19937_64 rng(3);
    long long checked = 0, bad = 0;
    for (int n = 0; n < 1000; ++n) {
        const int w = 1 + static_cast<int>(rng() % 48), h = 1 + static_cast<int>(rng() % 48);
        PeakImage peaks(w, h);
        if (n % 2) {
            const GrayImage g = box_smooth(random_gray(rng, w, h), 1);
            peaks = watershed_peaks(g, regional_maxima(g, static_cast<int>(rng() % 100)));
        } else {
            for (auto& p : peaks.data())
                p = static_cast<std::int32_t>(rng() % 6);
        }
        DetectionMask mask(w, h);
        for (auto& m : mask.data())
            m = static_cast<std::uint8_t>(rng() % 2);
        const SegmentedMask seg = apply_mask(peaks, mask);
        for (std::size_t p = 0; p < seg.size(); ++p) {
            checked += seg[p] != 0;
            bad += seg[p] != 0 && !mask[p];
        }
    }
    v.require(bad == 0, std::to_string(bad) + " labelled pixels outside the mask");
    v.note("1000 pairs, " + std::to_string(checked) + " labelled pixels checked");
    return v;
}

Verdict watershed_split()
{
    Verdict v;
    const Frame f = dumbbell_frame();
    PipelineParams params;
    params.roiWidth = f.width();
    params.roiHeight = f.height();
    const std::size_t blobs = foreground_mask(f, params.threshold).count();
    const std::size_t split = detect_frame(f, params).detections.size();
    params.splitTouching = false;
    const std::size_t whole = detect_frame(f, params).detections.size();
    v.require(split == 2, "main pipeline gives 2 detections, got " + std::to_string(split));
    v.require(whole == 1, "thresholding alone gives 1 detection, got " + std::to_string(whole));
    v.note("dumbbell: " + std::to_string(blobs) + " foreground px, " + std::to_string(split) + " split vs " +
           std::to_string(whole) + " unsplit");
    return v;
}

struct BenchmarkRun {
    VideoReport report;
    PRCurve curve;
    double seconds = 0;
};

BenchmarkRun main_on(const SyntheticVideo& video)
{
    BenchmarkRun r;
    const auto t0 = Clock::now();
    r.report = run_pipeline(video, PipelineParams{});
    r.seconds = seconds_since(t0);
    r.curve = pr_curve(r.report, video.ground_truth());
    return r;
}

Verdict end_to_end()
{
    Verdict v;
    const SyntheticVideo clean(SceneSpec::grid_benchmark(500, false));
    const BenchmarkRun m = main_on(clean);
    const PRPoint& all = m.curve.points.front();  // lowest threshold keeps every detection
    const long long truth = static_cast<long long>(clean.ground_truth().size());
    v.require(clean.distinct_insects() == 36, "36 distinct insects in the truth");
    v.require(all.recall == 1.0 && all.precision == 1.0,
              "recall " + fmt("%.6f", all.recall) + " precision " + fmt("%.6f", all.precision));
    v.require(m.seconds < 120.0, "500-frame run < 2 min");
    v.require(truth == kGridTruthBoxes, "regression: truth boxes " + std::to_string(truth));
    v.require(m.report.globalCount == kGridGlobalCount,
              "regression: global count " + std::to_string(m.report.globalCount));
    v.note("no clutter: P " + fmt("%.4f", all.precision) + " R " + fmt("%.4f", all.recall) + " over " +
           std::to_string(truth) + " boxes, global count " + std::to_string(m.report.globalCount) + ", run " +
           fmt("%.1f s", m.seconds));

    const SyntheticVideo noisy(SceneSpec::grid_benchmark(500, true));
    const BenchmarkRun mc = main_on(noisy);
    const OtsuResult otsu = video_max_threshold(noisy, kDefaultRoiSize, kDefaultRoiSize);
    const VideoReport base = baseline_detect(noisy, BaselineParams{});
    const double baseAuc = pr_curve(base, noisy.ground_truth()).auc;
    const double gap = mc.curve.auc - baseAuc;
    v.require(gap >= 0.15, "AUC gap >= 0.15");
    v.require(std::abs(mc.curve.auc - kClutterAucMain) <= kAucTolerance,
              "regression: main AUC " + fmt("%.9f", mc.curve.auc));
    v.require(std::abs(baseAuc - kClutterAucBaseline) <= kAucTolerance,
              "regression: baseline AUC " + fmt("%.9f", baseAuc));
    v.require(otsu.videoMax == kClutterVideoThreshold, "regression: t_m " + std::to_string(otsu.videoMax));
    v.note("clutter: AUC main " + fmt("%.6f", mc.curve.auc) + " baseline " + fmt("%.6f", baseAuc) + " gap " +
           fmt("%.4f", gap) + " (t_m " + std::to_string(otsu.videoMax) + ")");
    return v;
}

Verdict counter_properties()
{
    Verdict v;
    v.require(update_counter(2, 5, 10) == 13, "update_counter(2,5,10) == 13");
    v.require(update_counter(5, 2, 10) == 10, "update_counter(5,2,10) == 10");
    v.require(update_counter(3, 3, 7) == 7, "update_counter(3,3,7) == 7");
    std::mt19937_64 rng(6);
    int bad = 0;
    for (int n = 0; n < 10000; ++n) {
        std::vector<FrameResult> seq(1 + rng() % 60);
        int maxCount = 0;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            seq[i].frameIndex = i;
            seq[i].blobCount = static_cast<int>(rng() % 15);
            maxCount = std::max(maxCount, seq[i].blobCount);
        }
        const VideoReport r = fold_counts(seq);
        bool ok = r.globalCount >= maxCount;
        for (std::size_t i = 1; i < r.frames.size(); ++i)
            ok = ok && r.frames[i].globalCount >= r.frames[i - 1].globalCount;
        bad += !ok;
    }
    v.require(bad == 0, std::to_string(bad) + " sequences violate the properties");
    v.note("3 examples, 10000 sequences");
    return v;
}

Verdict evaluation_oracle()
{
    Verdict v;
    std::mt19937_64 rng(7);
    int differ = 0, nonTrivial = 0;
    for (int n = 0; n < 1000; ++n) {
        const MatchingInstance m = random_matching_instance(rng);
        const int greedy = match_frame(m.dets, m.gts, 0.5).tp;
        const int best = max_matching_tp(m.dets, m.gts, 0.5);
        differ += greedy != best;
        nonTrivial += best > 0;
    }
    v.require(differ == 0, std::to_string(differ) + " of 1000 instances where greedy TP < maximum TP");

    int axiomFailures = 0;
    for (int n = 0; n < 10000; ++n) {
        const Box a = random_box(rng, 30, 15), b = random_box(rng, 30, 15);
        const double x = iou(a, b);
        const int dx = static_cast<int>(rng() % 50) - 25, dy = static_cast<int>(rng() % 50) - 25;
        const bool ok = x == iou(b, a) && x >= 0.0 && x <= 1.0 && iou(a, a) == 1.0 &&
                        iou(Box{a.x + dx, a.y + dy, a.width, a.height}, Box{b.x + dx, b.y + dy, b.width, b.height}) == x;
        axiomFailures += !ok;
    }
    v.require(axiomFailures == 0, std::to_string(axiomFailures) + " IoU axiom failures");

    const auto pt = [](double p, double r) {
        PRPoint q;
        q.precision = p;
        q.recall = r;
        return q;
    };
    v.require(std::abs(auc_pr(std::vector<PRPoint>{pt(1, 1)}) - 1.0) <= 1e-12, "auc example 1.0");
    v.require(std::abs(auc_pr(std::vector<PRPoint>{pt(1, 0.5), pt(0.5, 1)}) - 0.75) <= 1e-12, "auc example 0.75");
    v.require(std::abs(auc_pr(std::vector<PRPoint>{pt(0.8, 0)}) - 0.0) <= 1e-12, "auc example 0.0");
    v.note("1000 matching instances (" + std::to_string(nonTrivial) + " with a match), 10000 IoU pairs, 3 AUC examples");
    return v;
}

double median(std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// 720 frames from the grid benchmark, and 1440 frames tiling four of them so both sizes carry
// the same insect density. Timed single-threaded so the ratio reflects work, not cores.
Verdict scaling()
{
    Verdict v;
    const SyntheticVideo video(SceneSpec::grid_benchmark(500, true));
    std::vector<Frame> small, large;
    for (std::size_t k = 0; k < 50; ++k) {
        const std::size_t base = 50 + 8 * k;
        small.push_back(video.load(base));
        Frame big(1440, 1440);
        for (int tile = 0; tile < 4; ++tile) {
            const Frame f = video.load((base + 97 * static_cast<std::size_t>(tile)) % video.size());
            const int ox = (tile % 2) * 720, oy = (tile / 2) * 720;
            for (int y = 0; y < 720; ++y)
                for (int x = 0; x < 720; ++x)
                    big.set_pixel(x + ox, y + oy, f.pixel(x, y));
        }
        large.push_back(std::move(big));
    }

    PipelineParams p720, p1440;
    p1440.roiWidth = p1440.roiHeight = 1440;
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto time_all = [](const std::vector<Frame>& frames, const PipelineParams& params) {
        std::vector<double> t;
        for (const auto& f : frames) {
            const auto t0 = Clock::now();
            const FrameResult r = detect_frame(f, params);
            t.push_back(seconds_since(t0));
            if (r.blobCount < 0)
                std::abort();
        }
        return median(t);
    };
    time_all(std::vector<Frame>(small.begin(), small.begin() + 3), p720);
    const double m720 = time_all(small, p720);
    const double m1440 = time_all(large, p1440);
    omp_set_num_threads(saved);
    const double ratio = m1440 / m720;
    v.require(ratio <= 5.0, "ratio " + fmt("%.2f", ratio) + " > 5");
    v.note("median " + fmt("%.1f ms", m720 * 1e3) + " at 720x720, " + fmt("%.1f ms", m1440 * 1e3) +
           " at 1440x1440, ratio " + fmt("%.2f", ratio));
    return v;
}

int shell(const std::string& cmd)
{
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism()
{
    Verdict v;
    TempDir dir;
    const std::string cli = UVCOUNT_CLI;
    const fs::path bench = dir.path() / "bench";
    const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
    v.require(shell(cli + " synth --clutter -o " + q(bench)) == 0, "synth benchmark");
    v.require(shell(cli + " detect -i " + q(bench) + " -o " + q(dir.path() / "a")) == 0, "first detect run");
    v.require(shell(cli + " detect -i " + q(bench) + " -o " + q(dir.path() / "b")) == 0, "second detect run");
    if (!v.pass)
        return v;
    for (const char* name : {"report.txt", "report.json"}) {
        const std::string a = slurp(dir.path() / "a" / name), b = slurp(dir.path() / "b" / name);
        v.require(!a.empty() && a == b, std::string(name) + " differs");
    }
    v.note("500-frame clutter benchmark, report.txt and report.json compared byte for byte");
    return v;
}

}  // namespace

int main()
{
    run(1, "threshold unit suite", threshold_suite);
    run(2, "Otsu oracle equivalence", otsu_oracle);
    run(3, "segmented mask lies inside the foreground", subset_law);
    run(4, "watershed split fixture", watershed_split);
    run(5, "end-to-end synthetic benchmark", end_to_end);
    run(6, "counter properties", counter_properties);
    run(7, "evaluation oracle", evaluation_oracle);
    run(8, "per-frame time scales with ROI area", scaling);
    run(9, "determinism of repeated detect runs", determinism);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
