#pragma once
// Shared test utilities.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string data_path(const std::string& relative) {
  return std::string(DFLOG_DATA_DIR) + "/" + relative;
}

inline std::string read_data_file(const std::string& relative) {
  std::string path = std::string(DFLOG_DATA_DIR) + "/" + relative;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing data file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
