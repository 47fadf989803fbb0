#include <fstream>

#include <gtest/gtest.h>

#include "support.hpp"
#include "uvcount/keyvalue.hpp"
#include "uvcount/report.hpp"

using namespace uvcount;
using uvcount::testing::TempDir;

namespace {

VideoReport sample_report()
{
    VideoReport r;
    r.mode = "baseline";
    r.config = {{"mu-v", "40"}, {"roi", "720x720"}, {"input", "/data/run 1"}};
    FrameRecord a;
    a.frameIndex = 0;
    a.blobCount = 2;
    a.globalCount = 2;
    a.detections = {{0, {1, 2, 3, 4}, 11, 100.5}, {0, {10, 20, 5, 6}, 25, 61.25}};
    FrameRecord b;
    b.frameIndex = 1;
    b.blobCount = 0;
    b.globalCount = 2;
    r.frames = {a, b};
    r.globalCount = 2;
    return r;
}

}  // namespace

TEST(ReportText, RoundTrip)
{
    const VideoReport r = sample_report();
    const std::string text = format_report_text(r);
    EXPECT_EQ(text.rfind("# uvcount report v1\nmode baseline\n", 0), 0u) << text;
    EXPECT_NE(text.find("det 1 2 3 4 11 100.500000\n"), std::string::npos) << text;
    EXPECT_EQ(parse_report_text(text), r);
}

TEST(ReportJson, RoundTrip)
{
    const VideoReport r = sample_report();
    EXPECT_EQ(parse_report_json(format_report_json(r)), r);
}

TEST(ReportText, ParseErrorsNameTheLine)
{
    const std::string detFirst = "# uvcount report v1\nmode main\ndet 1 2 3 4 5 6\ntotal 0\n";
    try {
        parse_report_text(detFirst, "r.txt");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("r.txt:3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_report_text("mode main\nbogus 1\ntotal 0\n"), ParseError);
    EXPECT_THROW(parse_report_text("mode main\nframe 0 blobs 1 global 1\n"), ParseError);
}

TEST(ReportJson, SchemaErrors)
{
    EXPECT_THROW(parse_report_json("{"), ParseError);
    EXPECT_THROW(parse_report_json("{\"mode\": \"main\"}"), ParseError);
}

TEST(LoadReport, DetectsFormat)
{
    TempDir dir;
    const VideoReport r = sample_report();
    std::ofstream(dir.path() / "a.txt") << format_report_text(r);
    std::ofstream(dir.path() / "a.json") << format_report_json(r);
    EXPECT_EQ(load_report(dir.path() / "a.txt"), r);
    EXPECT_EQ(load_report(dir.path() / "a.json"), r);
    EXPECT_THROW(load_report(dir.path() / "missing.txt"), ParseError);
}
