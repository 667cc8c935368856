#pragma once

#include <filesystem>
#include <random>
#include <string>

namespace moodloom::testing {

inline std::string data_path(const std::string& rel) { return std::string(MOODLOOM_DATA_DIR) + "/" + rel; }
inline std::string fixture_path(const std::string& rel) {
  return std::string(MOODLOOM_FIXTURE_DIR) + "/" + rel;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("moodloom-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace moodloom::testing
