#pragma once

#include <string>
#include <vector>

namespace adrcpid {

/// Column-major numeric table written as CSV: one header row, comma
/// separated, every value with 17 significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    void add(std::string name, std::vector<double> values);
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }

    std::string to_text() const;
    static CsvTable parse(const std::string& text);
};

/// Writes the file in binary mode; throws std::ios_base::failure on error.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

/// Replace samples from the first one with |v| >= limit (or non-finite)
/// onwards by +/-limit, keeping the sign at the point of divergence.
std::vector<double> cap_diverging(std::vector<double> v, double limit = 1e6);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct PlotPanel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
};

/// Minimal SVG line chart: panels laid out in a grid of `columns`.
/// Non-finite and (on log axes) non-positive points are skipped.
std::string render_svg(const std::vector<PlotPanel>& panels, int columns, const std::string& title);

}  // namespace adrcpid
