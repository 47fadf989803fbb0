#pragma once

// Frame directories: binary PPM/PGM rasters plus a key-value manifest.
//
//   <dir>/manifest.txt       fps, width, height, frame-count, format
//   <dir>/frame_000000.ppm   8-bit RGB, P6
//   ...

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "uvcount/core.hpp"

namespace uvcount {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string encode_ppm(const Frame& frame);
std::string encode_pgm(const GrayImage& image);
Frame decode_ppm(const std::string& bytes);
GrayImage decode_pgm(const std::string& bytes);

Frame read_ppm(const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Frame& frame);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

std::string frame_file_name(std::size_t index);

struct Manifest {
    double fps = 24.0;
    int width = 0;
    int height = 0;
    std::size_t frameCount = 0;
    std::string format = "ppm";
    // Free-form provenance lines (generator, seed, rng) preserved verbatim.
    std::vector<std::pair<std::string, std::string>> extra;

    static Manifest load(const std::filesystem::path& dir);
    void save(const std::filesystem::path& dir) const;
};

/// Random-access, thread-safe source of frames. `load` must be callable concurrently.
class FrameSource {
public:
    virtual ~FrameSource() = default;
    virtual std::size_t size() const = 0;
    virtual Frame load(std::size_t i) const = 0;
};

class FrameDirectory final : public FrameSource {
public:
    explicit FrameDirectory(std::filesystem::path dir);

    std::size_t size() const override { return manifest_.frameCount; }
    Frame load(std::size_t i) const override;
    const Manifest& manifest() const noexcept { return manifest_; }

private:
    std::filesystem::path dir_;
    Manifest manifest_;
};

class InMemoryFrames final : public FrameSource {
public:
    explicit InMemoryFrames(std::vector<Frame> frames) : frames_(std::move(frames)) {}

    std::size_t size() const override { return frames_.size(); }
    Frame load(std::size_t i) const override;

private:
    std::vector<Frame> frames_;
};

}  // namespace uvcount
