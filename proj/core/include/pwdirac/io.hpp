#pragma once

#include <string>

namespace pwdirac {

/// Atomic file write: writes to <path>.tmp then renames over <path>.
void atomic_write_file(const std::string& path, const std::string& content);

void ensure_directory(const std::string& path);

std::string read_file(const std::string& path);

/// Round-trip formatting for reproducible CSV output.
std::string fmt_double(double v);

}  // namespace pwdirac
