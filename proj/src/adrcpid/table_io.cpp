#include "adrcpid/table_io.hpp"

#include "adrcpid/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace adrcpid {

void CsvTable::add(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) throw std::invalid_argument("CSV column length mismatch");
    header.push_back(std::move(name));
    columns.push_back(std::move(values));
}

std::string CsvTable::to_text() const {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable t;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("empty CSV");
    {
        std::stringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) {
            t.header.push_back(cell);
            t.columns.emplace_back();
        }
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream rs(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(rs, cell, ',')) {
            if (c >= t.columns.size()) throw std::invalid_argument("CSV row has too many cells");
            t.columns[c++].push_back(parse_double(cell, "CSV cell"));
        }
        if (c != t.columns.size()) throw std::invalid_argument("CSV row has too few cells");
    }
    return t;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::ios_base::failure("cannot write " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> cap_diverging(std::vector<double> v, double limit) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::isfinite(v[i]) && std::abs(v[i]) < limit) continue;
        const double capped = std::signbit(v[i]) ? -limit : limit;
        std::fill(v.begin() + static_cast<std::ptrdiff_t>(i), v.end(), capped);
        break;
    }
    return v;
}

namespace {

constexpr double kPanelWidth = 520.0;
constexpr double kPanelHeight = 340.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 45.0;
constexpr std::size_t kMaxPoints = 1500;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    double map(double v) const { return log ? std::log10(v) : v; }
    double frac(double v) const { return (map(v) - lo) / (hi - lo); }
};

Axis make_axis(const std::vector<const std::vector<double>*>& data, bool log) {
    Axis a{log, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto* d : data)
        for (double v : *d)
            if (a.usable(v)) {
                a.lo = std::min(a.lo, a.map(v));
                a.hi = std::max(a.hi, a.map(v));
            }
    if (!(a.lo <= a.hi)) {
        a.lo = 0.0;
        a.hi = 1.0;
    }
    if (a.hi - a.lo < 1e-12) {
        a.lo -= 0.5;
        a.hi += 0.5;
    }
    if (log) {
        a.lo = std::floor(a.lo);
        a.hi = std::ceil(a.hi);
    } else {
        const double pad = 0.05 * (a.hi - a.lo);
        a.lo -= pad;
        a.hi += pad;
    }
    return a;
}

std::vector<double> ticks(const Axis& a) {
    std::vector<double> t;
    if (a.log) {
        const int step = std::max(1, static_cast<int>((a.hi - a.lo) / 8.0) + 1);
        for (int e = static_cast<int>(a.lo); e <= static_cast<int>(a.hi); e += step) t.push_back(std::pow(10.0, e));
        return t;
    }
    const double raw = (a.hi - a.lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * step; v += step)
        t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

void render_panel(std::ostringstream& os, const PlotPanel& p, double ox, double oy) {
    const double w = kPanelWidth - kLeft - kRight;
    const double h = kPanelHeight - kTop - kBottom;
    std::vector<const std::vector<double>*> xs, ys;
    for (const auto& s : p.series) {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    const Axis ax = make_axis(xs, p.log_x);
    const Axis ay = make_axis(ys, p.log_y);
    const double x0 = ox + kLeft;
    const double y0 = oy + kTop;

    os << "<g>\n";
    os << "<text x=\"" << fmt(x0 + w / 2) << "\" y=\"" << fmt(oy + 18) << "\" text-anchor=\"middle\" font-size=\"13\">"
       << escape(p.title) << "</text>\n";
    os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
       << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (double t : ticks(ax)) {
        const double x = x0 + w * ax.frac(t);
        if (x < x0 - 0.01 || x > x0 + w + 0.01) continue;
        os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(y0 + h)
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y0 + h + 14) << "\" text-anchor=\"middle\" font-size=\"10\">"
           << tick_label(t) << "</text>\n";
    }
    for (double t : ticks(ay)) {
        const double y = y0 + h * (1.0 - ay.frac(t));
        if (y < y0 - 0.01 || y > y0 + h + 0.01) continue;
        os << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(x0 + w) << "\" y2=\"" << fmt(y)
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << fmt(x0 - 4) << "\" y=\"" << fmt(y + 3) << "\" text-anchor=\"end\" font-size=\"10\">"
           << tick_label(t) << "</text>\n";
    }
    os << "<text x=\"" << fmt(x0 + w / 2) << "\" y=\"" << fmt(y0 + h + 32) << "\" text-anchor=\"middle\" font-size=\"11\">"
       << escape(p.x_label) << "</text>\n";
    os << "<text x=\"" << fmt(ox + 14) << "\" y=\"" << fmt(y0 + h / 2) << "\" text-anchor=\"middle\" font-size=\"11\" "
       << "transform=\"rotate(-90 " << fmt(ox + 14) << ' ' << fmt(y0 + h / 2) << ")\">" << escape(p.y_label)
       << "</text>\n";

    for (std::size_t i = 0; i < p.series.size(); ++i) {
        const Series& s = p.series[i];
        const char* color = kPalette[i % std::size(kPalette)];
        const std::size_t stride = std::max<std::size_t>(1, (s.x.size() + kMaxPoints - 1) / kMaxPoints);
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\""
           << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
        bool first = true;
        for (std::size_t k = 0; k < s.x.size(); k += stride) {
            if (!ax.usable(s.x[k]) || !ay.usable(s.y[k])) continue;
            const double fx = std::clamp(ax.frac(s.x[k]), -0.05, 1.05);
            const double fy = std::clamp(ay.frac(s.y[k]), -0.05, 1.05);
            if (!first) os << ' ';
            os << fmt(x0 + w * fx) << ',' << fmt(y0 + h * (1.0 - fy));
            first = false;
        }
        os << "\"/>\n";
        const double ly = y0 + 10 + 14 * static_cast<double>(i);
        os << "<line x1=\"" << fmt(x0 + w + 8) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(x0 + w + 26) << "\" y2=\""
           << fmt(ly) << "\" stroke=\"" << color << "\"" << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>\n";
        os << "<text x=\"" << fmt(x0 + w + 30) << "\" y=\"" << fmt(ly + 3) << "\" font-size=\"9\">" << escape(s.label)
           << "</text>\n";
    }
    os << "</g>\n";
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels, int columns, const std::string& title) {
    columns = std::max(1, columns);
    const int rows = (static_cast<int>(panels.size()) + columns - 1) / columns;
    const double width = kPanelWidth * columns;
    const double height = kPanelHeight * rows + 30.0;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" font-family=\"sans-serif\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    os << "<text x=\"" << fmt(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
       << "</text>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = kPanelWidth * static_cast<double>(static_cast<int>(i) % columns);
        const double oy = 30.0 + kPanelHeight * static_cast<double>(static_cast<int>(i) / columns);
        render_panel(os, panels[i], ox, oy);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace adrcpid
