#include "uvcount/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "uvcount/keyvalue.hpp"

namespace uvcount {

double iou(const Box& a, const Box& b) noexcept
{
    const long long ix = std::max(0, std::min(a.x + a.width, b.x + b.width) - std::max(a.x, b.x));
    const long long iy = std::max(0, std::min(a.y + a.height, b.y + b.height) - std::max(a.y, b.y));
    const long long inter = ix * iy;
    const long long uni = a.area() + b.area() - inter;
    if (uni <= 0)
        return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

struct Candidate {
    double iou;
    std::size_t det;
    std::size_t gt;
};

bool candidate_order(const Candidate& a, const Candidate& b)
{
    if (a.iou != b.iou)
        return a.iou > b.iou;
    if (a.det != b.det)
        return a.det < b.det;
    return a.gt < b.gt;
}

std::vector<Candidate> candidates(std::span<const Detection> dets, std::span<const GroundTruthBox> gts, double iouMin)
{
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < dets.size(); ++i) {
        for (std::size_t j = 0; j < gts.size(); ++j) {
            const double v = iou(dets[i].box, gts[j].box);
            if (v >= iouMin)
                out.push_back({v, i, j});
        }
    }
    std::sort(out.begin(), out.end(), candidate_order);
    return out;
}

}  // namespace

MatchResult match_frame(std::span<const Detection> dets, std::span<const GroundTruthBox> gts, double iouMin)
{
    if (!(iouMin > 0.0 && iouMin <= 1.0))
        throw std::invalid_argument("iou-min must lie in (0,1]");
    MatchResult r;
    std::vector<std::uint8_t> detUsed(dets.size(), 0), gtUsed(gts.size(), 0);
    for (const Candidate& c : candidates(dets, gts, iouMin)) {
        if (detUsed[c.det] || gtUsed[c.gt])
            continue;
        detUsed[c.det] = gtUsed[c.gt] = 1;
        r.pairs.emplace_back(c.det, c.gt);
    }
    r.tp = static_cast<int>(r.pairs.size());
    r.fp = static_cast<int>(dets.size()) - r.tp;
    r.fn = static_cast<int>(gts.size()) - r.tp;
    return r;
}

double auc_pr(std::span<const PRPoint> points)
{
    if (points.empty())
        return 0.0;
    std::vector<std::pair<double, double>> rp;  // (recall, precision)
    rp.reserve(points.size());
    for (const auto& p : points)
        rp.emplace_back(p.recall, p.precision);
    std::stable_sort(rp.begin(), rp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = rp.size() - 1; i-- > 0;)
        rp[i].second = std::max(rp[i].second, rp[i + 1].second);
    double area = 0.0;
    double prevRecall = 0.0;
    for (const auto& [r, p] : rp) {
        area += (r - prevRecall) * p;
        prevRecall = r;
    }
    return area;
}

PRCurve pr_curve(const VideoReport& report, std::span<const GroundTruthBox> gt, double iouMin)
{
    if (gt.empty())
        throw std::invalid_argument("ground truth is empty");
    if (!(iouMin > 0.0 && iouMin <= 1.0))
        throw std::invalid_argument("iou-min must lie in (0,1]");

    struct FrameData {
        std::vector<Detection> dets;
        std::vector<GroundTruthBox> gts;
        std::vector<Candidate> cands;
    };
    std::map<std::size_t, FrameData> frames;
    std::vector<double> scores;
    for (const auto& rec : report.frames) {
        auto& f = frames[rec.frameIndex];
        f.dets.insert(f.dets.end(), rec.detections.begin(), rec.detections.end());
        for (const auto& d : rec.detections)
            scores.push_back(d.score);
    }
    for (const auto& g : gt)
        frames[g.frameIndex].gts.push_back(g);
    for (auto& [idx, f] : frames)
        f.cands = candidates(f.dets, f.gts, iouMin);

    std::sort(scores.begin(), scores.end());
    scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
    if (scores.empty())
        scores.push_back(-1.0);

    const long long totalGt = static_cast<long long>(gt.size());
    PRCurve curve;
    std::vector<std::uint8_t> detUsed, gtUsed;
    for (const double threshold : scores) {
        long long tp = 0, kept = 0;
        for (const auto& [idx, f] : frames) {
            for (const auto& d : f.dets)
                kept += d.score >= threshold ? 1 : 0;
            detUsed.assign(f.dets.size(), 0);
            gtUsed.assign(f.gts.size(), 0);
            for (const Candidate& c : f.cands) {
                if (f.dets[c.det].score < threshold || detUsed[c.det] || gtUsed[c.gt])
                    continue;
                detUsed[c.det] = gtUsed[c.gt] = 1;
                ++tp;
            }
        }
        PRPoint p;
        p.threshold = threshold;
        p.tp = tp;
        p.fp = kept - tp;
        p.fn = totalGt - tp;
        p.precision = kept == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(kept);
        p.recall = static_cast<double>(tp) / static_cast<double>(totalGt);
        curve.points.push_back(p);
    }
    curve.auc = auc_pr(curve.points);
    return curve;
}

PRPoint best_f1(const PRCurve& curve)
{
    PRPoint best;
    double bestF1 = -1.0;
    for (const auto& p : curve.points) {
        const double denom = p.precision + p.recall;
        const double f1 = denom > 0 ? 2.0 * p.precision * p.recall / denom : 0.0;
        if (f1 > bestF1) {
            bestF1 = f1;
            best = p;
        }
    }
    return best;
}

std::vector<GroundTruthBox> parse_ground_truth(const std::string& text, const std::string& origin)
{
    std::vector<GroundTruthBox> out;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tok;
        std::string t;
        while (fields >> t)
            tok.push_back(t);
        if (tok.empty())
            continue;
        const std::string where = origin + ":" + std::to_string(lineNo);
        if (tok.size() != 5)
            throw ParseError(where + ": expected 'frame x y width height'");
        const int frame = parse_int(tok[0], where + ": frame");
        GroundTruthBox g;
        g.box = {parse_int(tok[1], where + ": x"), parse_int(tok[2], where + ": y"),
                 parse_int(tok[3], where + ": width"), parse_int(tok[4], where + ": height")};
        if (frame < 0)
            throw ParseError(where + ": negative frame index");
        if (g.box.width <= 0 || g.box.height <= 0 || g.box.x < 0 || g.box.y < 0)
            throw ParseError(where + ": box must have positive size and non-negative origin");
        g.frameIndex = static_cast<std::size_t>(frame);
        out.push_back(g);
    }
    return out;
}

std::vector<GroundTruthBox> load_ground_truth(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ground_truth(ss.str(), path.string());
}

std::string format_ground_truth(std::span<const GroundTruthBox> gt)
{
    std::string out = "# frame x y width height\n";
    for (const auto& g : gt)
        out += std::to_string(g.frameIndex) + " " + std::to_string(g.box.x) + " " + std::to_string(g.box.y) + " " +
               std::to_string(g.box.width) + " " + std::to_string(g.box.height) + "\n";
    return out;
}

std::string format_pr_table(const PRCurve& curve, const std::string& label)
{
    std::string out = "# method " + label + "\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "# auc %.6f\n# recall precision\n", curve.auc);
    out += buf;
    for (const auto& p : curve.points) {
        std::snprintf(buf, sizeof buf, "%.6f %.6f\n", p.recall, p.precision);
        out += buf;
    }
    return out;
}

}  // namespace uvcount
