#pragma once

#include <string>
#include <vector>

#include "wqed/errors.hpp"

namespace wqed {

/// Fixed %.12e rendering used by every emitter, so identical inputs give
/// byte-identical files.
std::string format_number(double value);

/// CSV with a comma-separated header line and %.12e cells.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Whitespace-separated columns with a leading '#' header line.
void write_gnuplot_dat(const std::string& path,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& content);

/// WQED_CACHE_DIR override, else ".wqed-cache".
std::string cache_dir();

} // namespace wqed
