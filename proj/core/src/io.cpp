#include "edes/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edes {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trace_to_csv(const FunctionalTrace& trace) {
  std::string out = "t,F,F1,support_radius,max_norm\n";
  for (const auto& s : trace.samples) {
    out += format_double(s.t);
    out += ',';
    out += format_double(s.F);
    out += ',';
    out += format_double(s.F1);
    out += ',';
    out += format_double(s.support_radius);
    out += ',';
    out += format_double(s.max_norm);
    out += '\n';
  }
  return out;
}

}  // namespace edes
