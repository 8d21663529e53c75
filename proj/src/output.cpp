#include "dispersive/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dispersive/errors.hpp"

namespace dispersive {

namespace {

void put(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v, int digits = 6) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

}  // namespace

void write_text_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << text;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

std::string format_csv(const GridFunction& u) {
    std::ostringstream os;
    os << "x,u\n";
    for (std::size_t i = 0; i < u.size(); ++i) {
        put(os, u.grid().node(i));
        os << ',';
        put(os, u[i]);
        os << '\n';
    }
    return os.str();
}

std::string format_csv(const Trajectory& tr) {
    std::ostringstream os;
    os << "t,x,u\n";
    for (std::size_t n = 0; n < tr.states.size(); ++n) {
        const GridFunction& u = tr.states[n];
        for (std::size_t i = 0; i < u.size(); ++i) {
            put(os, tr.times[n]);
            os << ',';
            put(os, u.grid().node(i));
            os << ',';
            put(os, u[i]);
            os << '\n';
        }
    }
    return os.str();
}

void write_csv(const GridFunction& u, const std::string& path) { write_text_atomic(path, format_csv(u)); }
void write_csv(const Trajectory& tr, const std::string& path) { write_text_atomic(path, format_csv(tr)); }

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        if (first) {
            while (std::getline(cells, cell, ',')) t.header.push_back(cell);
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(cells, cell, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size()) throw ValidationError("malformed CSV cell '" + cell + "'");
            row.push_back(v);
        }
        if (row.size() != t.header.size()) throw ValidationError("CSV row width differs from the header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_csv(text.str());
}

std::string render_svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                            const std::string& y_label) {
    if (series.empty()) throw ValidationError("nothing to plot");
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const Series& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size()) {
            throw ValidationError("series '" + s.name + "' is empty or has mismatched x/y lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                throw ValidationError("series '" + s.name + "' contains non-finite values");
            }
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (x1 == x0) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (y1 == y0) {
        const double pad = y0 == 0.0 ? 1.0 : 0.05 * std::abs(y0);
        y0 -= pad;
        y1 += pad;
    }

    constexpr double W = 640, H = 420, left = 80, right = 20, top = 40, bottom = 60;
    const double pw = W - left - right;
    const double ph = H - top - bottom;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!title.empty()) {
        os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
           << "</text>\n";
    }
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
       << "\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
    os << "</g>\n";
    constexpr int kTicks = 5;
    for (int t = 0; t <= kTicks; ++t) {
        const double xv = x0 + (x1 - x0) * t / kTicks;
        const double yv = y0 + (y1 - y0) * t / kTicks;
        os << "<text x=\"" << fmt(sx(xv), 8) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
           << fmt(xv, 4) << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << fmt(sy(yv) + 4, 8) << "\" text-anchor=\"end\">" << fmt(yv, 4)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">" << escape_xml(x_label)
       << "</text>\n";
    if (!y_label.empty()) {
        os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
           << top + ph / 2 << ")\">" << escape_xml(y_label) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const Series& s = series[k];
        const char* colour = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            os << (i ? " " : "") << fmt(sx(s.x[i]), 8) << ',' << fmt(sy(s.y[i]), 8);
        }
        os << "\"/>\n";
        const double ly = top + 14 + 16.0 * static_cast<double>(k);
        os << "<line x1=\"" << left + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << left + pw - 126 << "\" y2=\"" << ly
           << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw - 120 << "\" y=\"" << ly + 4 << "\">" << escape_xml(s.name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg_plot(const std::vector<Series>& series, const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label) {
    write_text_atomic(path, render_svg_plot(series, title, x_label, y_label));
}

}  // namespace dispersive
