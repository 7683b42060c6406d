#include "nano/output.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nano {

void write_pgm(const Frame& frame, std::ostream& os, int num_classes) {
    if (num_classes < 1) num_classes = 1;
    os << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    std::vector<char> row(frame.class_index.size());
    for (std::size_t i = 0; i < frame.class_index.size(); ++i) {
        const int idx = frame.class_index[i];
        const int grey = idx == 0 ? 0 : (255 * idx) / num_classes;
        row[i] = static_cast<char>(grey > 255 ? 255 : grey);
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
}

void write_pgm_file(const Frame& frame, const std::filesystem::path& path,
                    int num_classes) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_pgm(frame, os, num_classes);
}

std::string frame_filename(double time) {
    const long long t = std::llround(time);
    std::string digits = std::to_string(t < 0 ? 0 : t);
    if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
    return "frame_" + digits + ".pgm";
}

PgmDirectorySink::PgmDirectorySink(std::filesystem::path dir, int num_classes)
    : dir_(std::move(dir)), num_classes_(num_classes) {
    std::filesystem::create_directories(dir_);
}

void PgmDirectorySink::on_frame(const Frame& frame) {
    write_pgm_file(frame, dir_ / frame_filename(frame.time), num_classes_);
    ++frames_written_;
}

std::string summary_text(const RunSummary& summary) {
    std::ostringstream os;
    os << "final time      " << summary.final_time << "\n"
       << "events executed " << summary.events_executed << "\n"
       << "agents alive    " << summary.agents_alive << "\n"
       << "agents absorbed " << summary.agents_absorbed << "\n";
    return std::move(os).str();
}

std::string summary_json(const RunSummary& summary) {
    nlohmann::json doc;
    doc["final_time"] = summary.final_time;
    doc["events_executed"] = summary.events_executed;
    doc["agents_alive"] = summary.agents_alive;
    doc["agents_absorbed"] = summary.agents_absorbed;
    return doc.dump(2);
}

}  // namespace nano
