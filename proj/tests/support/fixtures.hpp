#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fca/context_io.hpp"

namespace fca::testkit {

inline std::filesystem::path data_path(const std::string& name) { return std::filesystem::path(FCA_TEST_DATA_DIR) / name; }

inline FormalContext fixture(const std::string& name) { return load_context(data_path(name)); }

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fca::testkit
