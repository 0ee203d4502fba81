#include "wqed/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wqed {

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12e", value);
    return buffer;
}

namespace {

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows,
                         const char* head_prefix, const char* sep) {
    std::ostringstream out;
    out << head_prefix;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << sep;
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw SizeMismatch("row width differs from the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << sep;
            out << format_number(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    write_text(path, render_table(header, rows, "", ","));
}

void write_gnuplot_dat(const std::string& path,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    write_text(path, render_table(header, rows, "# ", " "));
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoFailure("short write to " + path);
}

std::string cache_dir() {
    if (const char* env = std::getenv("WQED_CACHE_DIR")) return env;
    return ".wqed-cache";
}

} // namespace wqed
