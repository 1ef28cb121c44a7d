#ifndef EDES_IO_HPP
#define EDES_IO_HPP

#include <string>

#include "edes/trace.hpp"

namespace edes {

/// 17 significant digits; round-trips a double exactly.
std::string format_double(double v);

/// Write-temp-then-rename; the destination never holds a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// Pinned trace columns: t,F,F1,support_radius,max_norm.
std::string trace_to_csv(const FunctionalTrace& trace);

}  // namespace edes

#endif
