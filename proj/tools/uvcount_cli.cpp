// uvcount: detect, evaluate, synthesize and calibrate from the command line.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "uvcount/annotate.hpp"
#include "uvcount/baseline.hpp"
#include "uvcount/detect.hpp"
#include "uvcount/eval.hpp"
#include "uvcount/io.hpp"
#include "uvcount/report.hpp"
#include "uvcount/run_config.hpp"
#include "uvcount/synth.hpp"
#include "uvcount/threshold.hpp"

namespace fs = std::filesystem;
using namespace uvcount;

namespace {

struct DetectArgs {
    fs::path input;
    fs::path output;
    fs::path config;
    std::optional<std::string> mode;
    std::optional<int> muV, hut, hlt, slt, sut, np, smoothRadius, seedFloor, seedDynamic;
    std::optional<std::string> roi;
    bool annotate = false;
    bool noWatershed = false;
};

struct EvalArgs {
    fs::path report;
    fs::path gt;
    std::optional<double> iouMin;
    fs::path output;
    fs::path plotData;
    std::string label;
};

struct SynthArgs {
    fs::path output;
    fs::path spec;
    std::optional<int> frames;
    std::optional<std::uint64_t> seed;
    bool clutter = false;
    bool force = false;
};

struct CalibrateArgs {
    fs::path images;
    fs::path masks;
    fs::path config;
};

RunConfig resolve_run_config(const DetectArgs& a)
{
    RunConfig run;
    if (!a.config.empty())
        run.apply(KeyValueFile::load(a.config));

    KeyValueFile flags;
    auto put = [&](const char* key, const auto& value) {
        if (value)
            flags.add(key, std::to_string(*value));
    };
    if (a.mode)
        flags.add("mode", *a.mode);
    put("mu-v", a.muV);
    put("h-ut", a.hut);
    put("h-lt", a.hlt);
    put("s-lt", a.slt);
    put("s-ut", a.sut);
    put("n-p", a.np);
    put("smooth-radius", a.smoothRadius);
    put("seed-floor", a.seedFloor);
    put("seed-dynamic", a.seedDynamic);
    if (a.roi)
        flags.add("roi", *a.roi);
    if (a.annotate)
        flags.add("annotate", "true");
    if (a.noWatershed)
        flags.add("split", "none");
    run.apply(KeyValueFile::parse(flags.to_string(), "<command line>"));
    run.validate();
    return run;
}

void write_annotated(const FrameDirectory& source, const VideoReport& report, const RunConfig& run,
                     const fs::path& outDir)
{
    const fs::path partial = outDir / "annotated.partial";
    const fs::path final = outDir / "annotated";
    fs::remove_all(partial);
    fs::create_directories(partial);

    const auto n = static_cast<std::ptrdiff_t>(report.frames.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const FrameRecord& rec = report.frames[static_cast<std::size_t>(i)];
            const RoiFrame roi = crop_roi(source.load(rec.frameIndex), run.pipeline.roiWidth, run.pipeline.roiHeight);
            write_ppm(partial / frame_file_name(rec.frameIndex), annotate_frame(roi.image, rec));
        } catch (...) {
#pragma omp critical(uvcount_cli_annotate)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    fs::remove_all(final);
    fs::rename(partial, final);
}

int cmd_detect(const DetectArgs& a)
{
    const RunConfig run = resolve_run_config(a);
    const FrameDirectory source(a.input);

    VideoReport report = run.mode == "baseline" ? baseline_detect(source, run.baseline())
                                                : run_pipeline(source, run.pipeline);
    auto echo = run.echo();
    for (const auto& kv : report.config)
        if (std::none_of(echo.begin(), echo.end(), [&](const auto& e) { return e.first == kv.first; }))
            echo.push_back(kv);
    echo.emplace_back("input", a.input.lexically_normal().generic_string());
    report.config = std::move(echo);

    fs::create_directories(a.output);
    write_file_atomic(a.output / "report.txt", format_report_text(report));
    write_file_atomic(a.output / "report.json", format_report_json(report));
    if (run.annotate)
        write_annotated(source, report, run, a.output);

    std::size_t detections = 0;
    for (const auto& f : report.frames)
        detections += f.detections.size();
    std::printf("%s: %zu frames, %zu detections, global count %lld\n", run.mode.c_str(), report.frames.size(),
                detections, report.globalCount);
    return 0;
}

std::string plot_data(const PRCurve& curve, const std::string& label)
{
    std::ostringstream out;
    out << "# " << label << " auc " << format_double(curve.auc) << "\n";
    out << "# threshold recall precision tp fp fn\n";
    for (const auto& p : curve.points)
        out << format_double(p.threshold) << " " << format_double(p.recall) << " " << format_double(p.precision)
            << " " << p.tp << " " << p.fp << " " << p.fn << "\n";
    return out.str();
}

int cmd_eval(const EvalArgs& a)
{
    const VideoReport report = load_report(a.report);
    const std::vector<GroundTruthBox> gt = load_ground_truth(a.gt);
    double iouMin = kDefaultIouMin;
    if (a.iouMin)
        iouMin = *a.iouMin;
    else if (auto it = std::find_if(report.config.begin(), report.config.end(),
                                    [](const auto& kv) { return kv.first == "iou-min"; });
             it != report.config.end())
        iouMin = parse_double(it->second, a.report.string() + ": config iou-min");

    const PRCurve curve = pr_curve(report, gt, iouMin);
    const std::string label = a.label.empty() ? report.mode : a.label;
    const fs::path table = a.output.empty() ? a.report.parent_path() / ("pr_" + label + ".txt") : a.output;
    write_file_atomic(table, format_pr_table(curve, label));
    if (!a.plotData.empty())
        write_file_atomic(a.plotData, plot_data(curve, label));

    const PRPoint best = best_f1(curve);
    const double f1 = best.precision + best.recall > 0
                          ? 2 * best.precision * best.recall / (best.precision + best.recall)
                          : 0.0;
    std::printf("%s: auc %.6f best-f1 %.4f (precision %.4f recall %.4f score >= %.3f)\n", label.c_str(), curve.auc,
                f1, best.precision, best.recall, best.threshold);
    return 0;
}

int cmd_synth(const SynthArgs& a)
{
    SceneSpec spec;
    if (!a.spec.empty()) {
        KeyValueFile kv = KeyValueFile::load(a.spec);
        if (a.frames)
            kv.set("frames", std::to_string(*a.frames));
        if (a.seed)
            kv.set("seed", std::to_string(*a.seed));
        if (a.clutter && !kv.has("random-clutter"))
            kv.set("random-clutter", "60");
        spec = SceneSpec::from_key_values(kv);
    } else {
        const int frames = a.frames.value_or(500);
        if (frames <= 0)
            throw std::invalid_argument("frames must be positive");
        spec = SceneSpec::grid_benchmark(static_cast<std::size_t>(frames), a.clutter, a.seed.value_or(7));
    }
    spec.validate();

    if (fs::exists(a.output) && !fs::is_empty(a.output)) {
        if (!a.force)
            throw std::runtime_error(a.output.string() + " exists and is not empty (use --force to replace it)");
        fs::remove_all(a.output);
    }
    fs::path partial = a.output;
    partial += ".partial";
    fs::remove_all(partial);

    const SyntheticVideo video(spec);
    write_benchmark(video, partial);
    if (fs::exists(a.output))
        fs::remove(a.output);
    fs::rename(partial, a.output);
    std::printf("wrote %zu frames, %zu ground-truth boxes, %zu distinct insects to %s\n", video.size(),
                video.ground_truth().size(), video.distinct_insects(), a.output.string().c_str());
    return 0;
}

std::map<std::string, fs::path> files_by_stem(const fs::path& dir, const std::string& ext)
{
    if (!fs::is_directory(dir))
        throw InputError("not a directory: " + dir.string());
    std::map<std::string, fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ext)
            out[e.path().stem().string()] = e.path();
    return out;
}

// Replaces the mu-v line of a config file, keeping every other line and comment.
std::string patch_mu_v(const std::string& text, int muV)
{
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    bool patched = false;
    while (std::getline(in, line)) {
        std::string body = line.substr(0, line.find('#'));
        const auto eq = body.find('=');
        if (eq != std::string::npos && trim(body.substr(0, eq)) == "mu-v") {
            if (patched)
                continue;
            line = "mu-v = " + std::to_string(muV);
            patched = true;
        }
        out << line << "\n";
    }
    if (!patched)
        out << "mu-v = " << muV << "\n";
    return out.str();
}

int cmd_calibrate(const CalibrateArgs& a)
{
    const auto images = files_by_stem(a.images, ".ppm");
    const auto masks = files_by_stem(a.masks, ".pgm");
    for (const auto& [stem, path] : images)
        if (!masks.count(stem))
            throw InputError("image without mask: " + path.string());
    for (const auto& [stem, path] : masks)
        if (!images.count(stem))
            throw InputError("mask without image: " + path.string());
    if (images.empty())
        throw InputError("no calibration images in " + a.images.string());

    std::vector<Frame> frames;
    std::vector<DetectionMask> marks;
    for (const auto& [stem, path] : images) {
        frames.push_back(read_ppm(path));
        const GrayImage m = read_pgm(masks.at(stem));
        if (!m.same_shape(frames.back().width(), frames.back().height()))
            throw InputError("mask size differs from image: " + masks.at(stem).string());
        DetectionMask mask(m.width(), m.height());
        for (std::size_t p = 0; p < m.size(); ++p)
            mask[p] = m[p] != 0;
        marks.push_back(std::move(mask));
    }
    const int muV = calibrate_mu_v(frames, marks);
    std::printf("%d\n", muV);

    if (!a.config.empty()) {
        std::string text;
        if (fs::exists(a.config)) {
            std::ifstream in(a.config, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
            KeyValueFile::parse(text, a.config.string());
        }
        write_file_atomic(a.config, patch_mu_v(text, muV));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Count fluorescent-marked insects in UV-lit night footage"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);

    DetectArgs d;
    auto* detect = app.add_subcommand("detect", "Detect and count insects in a frame directory");
    detect->add_option("-i,--input", d.input, "Frame directory with manifest.txt")->required();
    detect->add_option("-o,--output", d.output, "Output directory for report.txt/report.json")->required();
    detect->add_option("-c,--config", d.config, "Key-value config file")->check(CLI::ExistingFile);
    detect->add_option("--mode", d.mode, "main or baseline");
    detect->add_option("--mu-v", d.muV, "Value floor");
    detect->add_option("--h-ut", d.hut, "Upper hue threshold");
    detect->add_option("--h-lt", d.hlt, "Lower hue threshold");
    detect->add_option("--s-lt", d.slt, "Lower saturation threshold (exclusive)");
    detect->add_option("--s-ut", d.sut, "Upper saturation threshold (inclusive)");
    detect->add_option("--n-p", d.np, "Minimum blob area in pixels");
    detect->add_option("--roi", d.roi, "ROI size, WxH or N");
    detect->add_option("--smooth-radius", d.smoothRadius, "Box smoothing radius before seeding");
    detect->add_option("--seed-floor", d.seedFloor, "Minimum seed intensity (default: mu-v)");
    detect->add_option("--seed-dynamic", d.seedDynamic, "Minimum peak-to-saddle depth of a seed");
    detect->add_flag("--annotate", d.annotate, "Write annotated ROI frames");
    detect->add_flag("--no-watershed", d.noWatershed, "Count thresholded blobs without splitting");

    EvalArgs e;
    auto* eval = app.add_subcommand("eval", "Precision-recall evaluation of a report against ground truth");
    eval->add_option("-r,--report", e.report, "report.txt or report.json")->required()->check(CLI::ExistingFile);
    eval->add_option("-g,--gt", e.gt, "Ground-truth box file")->required()->check(CLI::ExistingFile);
    eval->add_option("--iou-min", e.iouMin, "Minimum IoU for a match (default: report config, else 0.5)");
    eval->add_option("-o,--output", e.output, "PR table path (default: pr_<label>.txt next to the report)");
    eval->add_option("--plot-data", e.plotData, "Also write threshold/recall/precision columns here");
    eval->add_option("--label", e.label, "Method label (default: report mode)");

    SynthArgs s;
    auto* synth = app.add_subcommand("synth", "Render a synthetic benchmark directory");
    synth->add_option("-o,--output", s.output, "Benchmark directory to create")->required();
    synth->add_option("--spec", s.spec, "Scene file (default: 6x6 grid benchmark)")->check(CLI::ExistingFile);
    synth->add_option("--frames", s.frames, "Frame count");
    synth->add_option("--seed", s.seed, "RNG seed");
    synth->add_flag("--clutter", s.clutter, "Scatter violet reflective specks");
    synth->add_flag("--force", s.force, "Replace an existing output directory");

    CalibrateArgs c;
    auto* calibrate = app.add_subcommand("calibrate", "Estimate mu-v from calibration images and insect masks");
    calibrate->add_option("--images", c.images, "Directory of .ppm images")->required();
    calibrate->add_option("--masks", c.masks, "Directory of .pgm masks with matching names")->required();
    calibrate->add_option("--config", c.config, "Config file to patch with the new mu-v");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0)
        omp_set_num_threads(threads);

    try {
        if (detect->parsed())
            return cmd_detect(d);
        if (eval->parsed())
            return cmd_eval(e);
        if (synth->parsed())
            return cmd_synth(s);
        return cmd_calibrate(c);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "uvcount: error: %s\n", ex.what());
        return 1;
    }
}
