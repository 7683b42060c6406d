#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nano/compile.hpp"
#include "nano/registry.hpp"

namespace testutil {

/// The shipped component library, built once per process.
inline const nano::Registry& library() {
    static const nano::Registry registry = nano::seed_registry();
    return registry;
}

inline std::filesystem::path models_dir() {
    return std::filesystem::path(NANO_MODELS_DIR);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

inline std::string read_model(const std::string& name) {
    return read_file(models_dir() / name);
}

inline nano::CompiledModel compile_text(std::string_view source) {
    return nano::compile_source(source, library());
}

inline nano::CompiledModel compile_model_file(const std::string& name) {
    return compile_text(read_model(name));
}

/// A fresh directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("nanoccs_test_" + tag + "_" + std::to_string(counter++) + "_" +
                std::to_string(::getpid()));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace testutil
