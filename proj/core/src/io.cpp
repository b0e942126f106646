#include "pwdirac/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pwdirac {

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("atomic_write_file: cannot open " + tmp);
    os << content;
    if (!os) throw std::runtime_error("atomic_write_file: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void ensure_directory(const std::string& path) {
  std::filesystem::create_directories(path);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_file: cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace pwdirac
