#include "uvcount/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uvcount/keyvalue.hpp"

namespace uvcount {

namespace {

std::string read_binary(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct PnmHeader {
    int width = 0;
    int height = 0;
    std::size_t dataOffset = 0;
};

PnmHeader parse_pnm_header(const std::string& bytes, const char* magic)
{
    if (bytes.size() < 2 || bytes[0] != magic[0] || bytes[1] != magic[1])
        throw InputError(std::string("not a binary ") + magic + " raster");
    std::size_t pos = 2;
    int fields[3] = {0, 0, 0};
    for (int& f : fields) {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
            throw InputError("truncated raster header");
        long v = 0;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1'000'000)
                throw InputError("raster header value out of range");
            ++pos;
        }
        f = static_cast<int>(v);
    }
    if (fields[2] != 255)
        throw InputError("only 8-bit rasters (maxval 255) are supported");
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw InputError("malformed raster header");
    return {fields[0], fields[1], pos + 1};
}

}  // namespace

std::string encode_ppm(const Frame& frame)
{
    std::string out = "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n255\n";
    out.append(reinterpret_cast<const char*>(frame.data().data()), frame.data().size());
    return out;
}

std::string encode_pgm(const GrayImage& image)
{
    std::string out = "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.data().data()), image.size());
    return out;
}

Frame decode_ppm(const std::string& bytes)
{
    const PnmHeader h = parse_pnm_header(bytes, "P6");
    Frame f(h.width, h.height);
    if (bytes.size() - h.dataOffset < f.data().size())
        throw InputError("truncated PPM pixel data");
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(h.dataOffset), f.data().size(), f.data().begin());
    return f;
}

GrayImage decode_pgm(const std::string& bytes)
{
    const PnmHeader h = parse_pnm_header(bytes, "P5");
    GrayImage g(h.width, h.height);
    if (bytes.size() - h.dataOffset < g.size())
        throw InputError("truncated PGM pixel data");
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(h.dataOffset), g.size(), g.data().begin());
    return g;
}

Frame read_ppm(const std::filesystem::path& path)
{
    try {
        return decode_ppm(read_binary(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

GrayImage read_pgm(const std::filesystem::path& path)
{
    try {
        return decode_pgm(read_binary(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_ppm(const std::filesystem::path& path, const Frame& frame)
{
    write_file_atomic(path, encode_ppm(frame));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image)
{
    write_file_atomic(path, encode_pgm(image));
}

std::string frame_file_name(std::size_t index)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%06zu.ppm", index);
    return buf;
}

Manifest Manifest::load(const std::filesystem::path& dir)
{
    const auto path = dir / "manifest.txt";
    if (!std::filesystem::exists(path))
        throw InputError("missing manifest: " + path.string());
    KeyValueFile kv;
    try {
        kv = KeyValueFile::load(path);
    } catch (const ParseError& e) {
        throw InputError(std::string("corrupt manifest: ") + e.what());
    }
    Manifest m;
    try {
        m.fps = kv.get_double("fps", 24.0);
        m.width = kv.get_int("width", 0);
        m.height = kv.get_int("height", 0);
        const int count = kv.get_int("frame-count", -1);
        if (count < 0)
            throw InputError("manifest lacks frame-count");
        m.frameCount = static_cast<std::size_t>(count);
    } catch (const ParseError& e) {
        throw InputError(std::string("corrupt manifest: ") + e.what());
    }
    m.format = kv.get_string("format", "ppm");
    if (m.format != "ppm")
        throw InputError("unsupported frame format '" + m.format + "'");
    if (m.width <= 0 || m.height <= 0)
        throw InputError("manifest must give positive width and height");
    for (const auto& e : kv.entries())
        if (e.key != "fps" && e.key != "width" && e.key != "height" && e.key != "frame-count" && e.key != "format")
            m.extra.emplace_back(e.key, e.value);
    return m;
}

void Manifest::save(const std::filesystem::path& dir) const
{
    KeyValueFile kv;
    std::ostringstream fpsText;
    fpsText << fps;
    kv.add("fps", fpsText.str());
    kv.add("width", std::to_string(width));
    kv.add("height", std::to_string(height));
    kv.add("frame-count", std::to_string(frameCount));
    kv.add("format", format);
    for (const auto& [k, v] : extra)
        kv.add(k, v);
    write_file_atomic(dir / "manifest.txt", kv.to_string());
}

FrameDirectory::FrameDirectory(std::filesystem::path dir) : dir_(std::move(dir))
{
    if (!std::filesystem::is_directory(dir_))
        throw InputError("not a directory: " + dir_.string());
    manifest_ = Manifest::load(dir_);
    if (manifest_.frameCount == 0)
        throw InputError("empty input: manifest lists zero frames");
}

Frame FrameDirectory::load(std::size_t i) const
{
    if (i >= manifest_.frameCount)
        throw InputError("frame index " + std::to_string(i) + " out of range");
    Frame f;
    try {
        f = read_ppm(dir_ / frame_file_name(i));
    } catch (const InputError& e) {
        throw InputError("frame " + std::to_string(i) + ": " + e.what());
    }
    if (f.width() != manifest_.width || f.height() != manifest_.height)
        throw InputError("frame " + std::to_string(i) + ": size differs from manifest");
    f.set_index(i);
    return f;
}

Frame InMemoryFrames::load(std::size_t i) const
{
    Frame f = frames_.at(i);
    f.set_index(i);
    return f;
}

}  // namespace uvcount
