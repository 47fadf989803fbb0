#include "uvcount/run_config.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string_view>

namespace uvcount {

namespace {

constexpr std::array<std::string_view, 14> kKeys = {
    "mode", "mu-v", "h-ut", "h-lt", "s-lt", "s-ut", "n-p", "roi",
    "smooth-radius", "seed-floor", "seed-dynamic", "split", "iou-min", "annotate",
};

}  // namespace

bool parse_bool(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    if (t == "true" || t == "yes" || t == "on" || t == "1")
        return true;
    if (t == "false" || t == "no" || t == "off" || t == "0")
        return false;
    throw ParseError(what + ": not a boolean: '" + text + "'");
}

void RunConfig::apply(const KeyValueFile& kv)
{
    for (const auto& e : kv.entries()) {
        const std::string where = kv.origin() + ":" + std::to_string(e.line) + ": " + e.key;
        if (std::find(kKeys.begin(), kKeys.end(), e.key) == kKeys.end())
            throw ParseError(where + ": unknown setting");

        if (e.key == "mode")
            mode = e.value;
        else if (e.key == "mu-v")
            pipeline.threshold.muV = parse_int(e.value, where);
        else if (e.key == "h-ut")
            pipeline.threshold.hueUpper = parse_int(e.value, where);
        else if (e.key == "h-lt")
            pipeline.threshold.hueLower = parse_int(e.value, where);
        else if (e.key == "s-lt")
            pipeline.threshold.satLower = parse_int(e.value, where);
        else if (e.key == "s-ut")
            pipeline.threshold.satUpper = parse_int(e.value, where);
        else if (e.key == "n-p")
            pipeline.minBlobArea = parse_int(e.value, where);
        else if (e.key == "roi")
            std::tie(pipeline.roiWidth, pipeline.roiHeight) = parse_dims(e.value, where);
        else if (e.key == "smooth-radius")
            pipeline.smoothRadius = parse_int(e.value, where);
        else if (e.key == "seed-floor")
            pipeline.seedFloor = parse_int(e.value, where);
        else if (e.key == "seed-dynamic")
            pipeline.seedDynamic = parse_int(e.value, where);
        else if (e.key == "split") {
            if (e.value != "watershed" && e.value != "none")
                throw ParseError(where + ": expected 'watershed' or 'none'");
            pipeline.splitTouching = e.value == "watershed";
        } else if (e.key == "iou-min")
            iouMin = parse_double(e.value, where);
        else if (e.key == "annotate")
            annotate = parse_bool(e.value, where);
    }
}

void RunConfig::validate() const
{
    if (mode != "main" && mode != "baseline")
        throw std::invalid_argument("mode must be 'main' or 'baseline', got '" + mode + "'");
    pipeline.validate();
    if (!(iouMin > 0.0 && iouMin <= 1.0))
        throw std::invalid_argument("iou-min must lie in (0,1]");
}

BaselineParams RunConfig::baseline() const
{
    return {pipeline.roiWidth, pipeline.roiHeight, pipeline.minBlobArea};
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const
{
    std::vector<std::pair<std::string, std::string>> out{{"mode", mode}};
    for (auto& kv : describe(pipeline))
        out.push_back(std::move(kv));
    out.emplace_back("iou-min", format_double(iouMin));
    out.emplace_back("annotate", annotate ? "true" : "false");
    return out;
}

KeyValueFile RunConfig::to_key_values() const
{
    KeyValueFile kv;
    for (const auto& [k, v] : echo())
        kv.add(k, v);
    return kv;
}

}  // namespace uvcount
