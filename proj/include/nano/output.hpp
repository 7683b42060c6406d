#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nano {

/// One captured raster: class_index holds 0 for vacant sites and the
/// 1-based agent class index for occupied ones, row-major (y * width + x).
struct Frame {
    double time = 0.0;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> class_index;
};

class FrameSink {
public:
    virtual ~FrameSink() = default;
    virtual void on_frame(const Frame& frame) = 0;
};

/// Grey levels spread the class indices over [0, 255]: vacant is black,
/// class k of n maps to 255*k/n. Binary (P5) output.
void write_pgm(const Frame& frame, std::ostream& os, int num_classes);
void write_pgm_file(const Frame& frame, const std::filesystem::path& path,
                    int num_classes);

/// frame_000042.pgm; frames are captured at integer times.
std::string frame_filename(double time);

/// Writes each frame as dir/frame_<time>.pgm.
class PgmDirectorySink final : public FrameSink {
public:
    PgmDirectorySink(std::filesystem::path dir, int num_classes);
    void on_frame(const Frame& frame) override;
    std::size_t frames_written() const { return frames_written_; }

private:
    std::filesystem::path dir_;
    int num_classes_;
    std::size_t frames_written_ = 0;
};

/// Keeps frames in memory; test instrumentation.
class CollectingSink final : public FrameSink {
public:
    void on_frame(const Frame& frame) override { frames.push_back(frame); }
    std::vector<Frame> frames;
};

struct RunSummary {
    double final_time = 0.0;
    std::uint64_t events_executed = 0;
    std::uint64_t agents_alive = 0;
    std::uint64_t agents_absorbed = 0;

    bool operator==(const RunSummary&) const = default;
};

std::string summary_text(const RunSummary& summary);
std::string summary_json(const RunSummary& summary);

}  // namespace nano
