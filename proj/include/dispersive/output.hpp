#pragma once

#include <string>
#include <vector>

#include "dispersive/evolution.hpp"
#include "dispersive/grid.hpp"

namespace dispersive {

/// Writes through a sibling temp file and renames it into place. Throws IoError.
void write_text_atomic(const std::string& path, const std::string& text);

/// Header `x,u`, one row per node, 17 significant digits.
std::string format_csv(const GridFunction& u);
/// Header `t,x,u`, step-major.
std::string format_csv(const Trajectory& tr);

void write_csv(const GridFunction& u, const std::string& path);
void write_csv(const Trajectory& tr, const std::string& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Line chart with axes, tick labels and a legend. Throws ValidationError on empty input.
std::string render_svg_plot(const std::vector<Series>& series, const std::string& title = "",
                            const std::string& x_label = "x", const std::string& y_label = "");
void write_svg_plot(const std::vector<Series>& series, const std::string& path, const std::string& title = "",
                    const std::string& x_label = "x", const std::string& y_label = "");

}  // namespace dispersive
