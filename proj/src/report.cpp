#include "uvcount/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uvcount/keyvalue.hpp"

namespace uvcount {

namespace {

std::string score_text(double score)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", score);
    return buf;
}

}  // namespace

std::string format_report_text(const VideoReport& report)
{
    std::ostringstream out;
    out << "# uvcount report v1\n";
    out << "mode " << report.mode << "\n";
    for (const auto& [k, v] : report.config)
        out << "config " << k << " " << v << "\n";
    for (const auto& f : report.frames) {
        out << "frame " << f.frameIndex << " blobs " << f.blobCount << " global " << f.globalCount << "\n";
        for (const auto& d : f.detections)
            out << "det " << d.box.x << " " << d.box.y << " " << d.box.width << " " << d.box.height << " "
                << d.areaPx << " " << score_text(d.score) << "\n";
    }
    out << "total " << report.globalCount << "\n";
    return out.str();
}

VideoReport parse_report_text(const std::string& text, const std::string& origin)
{
    VideoReport report;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    bool sawTotal = false;
    while (std::getline(in, line)) {
        ++lineNo;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#')
            continue;
        std::istringstream fields(trimmed);
        std::vector<std::string> tok;
        std::string t;
        while (fields >> t)
            tok.push_back(t);
        if (tok.empty())
            continue;
        const std::string where = origin + ":" + std::to_string(lineNo);
        const std::string& kind = tok[0];
        if (kind == "mode" && tok.size() == 2) {
            report.mode = tok[1];
        } else if (kind == "config" && tok.size() >= 3) {
            const std::size_t keyEnd = trimmed.find(tok[1], kind.size()) + tok[1].size();
            report.config.emplace_back(tok[1], trim(trimmed.substr(keyEnd)));
        } else if (kind == "frame" && tok.size() == 6 && tok[2] == "blobs" && tok[4] == "global") {
            FrameRecord rec;
            rec.frameIndex = static_cast<std::size_t>(parse_int(tok[1], where + ": frame index"));
            rec.blobCount = parse_int(tok[3], where + ": blobs");
            rec.globalCount = parse_int(tok[5], where + ": global");
            report.frames.push_back(rec);
        } else if (kind == "det" && tok.size() == 7) {
            if (report.frames.empty())
                throw ParseError(where + ": detection before any frame record");
            Detection d;
            d.frameIndex = report.frames.back().frameIndex;
            d.box = {parse_int(tok[1], where + ": x"), parse_int(tok[2], where + ": y"),
                     parse_int(tok[3], where + ": width"), parse_int(tok[4], where + ": height")};
            d.areaPx = parse_int(tok[5], where + ": area");
            d.score = parse_double(tok[6], where + ": score");
            report.frames.back().detections.push_back(d);
        } else if (kind == "total" && tok.size() == 2) {
            report.globalCount = parse_int(tok[1], where + ": total");
            sawTotal = true;
        } else {
            throw ParseError(where + ": unrecognized report record '" + kind + "'");
        }
    }
    if (!sawTotal)
        throw ParseError(origin + ": report has no 'total' record");
    return report;
}

std::string format_report_json(const VideoReport& report)
{
    nlohmann::ordered_json j;
    j["mode"] = report.mode;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.config)
        cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json frames = nlohmann::ordered_json::array();
    for (const auto& f : report.frames) {
        nlohmann::ordered_json jf;
        jf["index"] = f.frameIndex;
        jf["blobs"] = f.blobCount;
        jf["global"] = f.globalCount;
        nlohmann::ordered_json dets = nlohmann::ordered_json::array();
        for (const auto& d : f.detections)
            dets.push_back({{"x", d.box.x}, {"y", d.box.y}, {"width", d.box.width}, {"height", d.box.height},
                            {"area", d.areaPx}, {"score", d.score}});
        jf["detections"] = std::move(dets);
        frames.push_back(std::move(jf));
    }
    j["frames"] = std::move(frames);
    j["globalCount"] = report.globalCount;
    return j.dump(1) + "\n";
}

VideoReport parse_report_json(const std::string& text, const std::string& origin)
{
    VideoReport report;
    try {
        const auto j = nlohmann::ordered_json::parse(text);
        report.mode = j.at("mode").get<std::string>();
        for (const auto& [k, v] : j.at("config").items())
            report.config.emplace_back(k, v.get<std::string>());
        for (const auto& jf : j.at("frames")) {
            FrameRecord rec;
            rec.frameIndex = jf.at("index").get<std::size_t>();
            rec.blobCount = jf.at("blobs").get<int>();
            rec.globalCount = jf.at("global").get<long long>();
            for (const auto& jd : jf.at("detections")) {
                Detection d;
                d.frameIndex = rec.frameIndex;
                d.box = {jd.at("x").get<int>(), jd.at("y").get<int>(), jd.at("width").get<int>(),
                         jd.at("height").get<int>()};
                d.areaPx = jd.at("area").get<int>();
                d.score = jd.at("score").get<double>();
                rec.detections.push_back(d);
            }
            report.frames.push_back(std::move(rec));
        }
        report.globalCount = j.at("globalCount").get<long long>();
    } catch (const nlohmann::ordered_json::exception& e) {
        throw ParseError(origin + ": report schema mismatch: " + e.what());
    }
    return report;
}

VideoReport load_report(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return parse_report_json(text, path.string());
    return parse_report_text(text, path.string());
}

}  // namespace uvcount
