#pragma once

#include <string>
#include <string_view>

#include "critx/io/csv.hpp"

namespace critx::io {

enum class PlotStyle { fig1, fig2, generic };

PlotStyle parse_plot_style(std::string_view s);

/// SVG with one polyline per L. fig1 and fig2 add an inset with the derivative of each
/// curve (monotone-cubic interpolant). Output depends only on the input rows.
std::string render_svg(const SeriesFile& file, PlotStyle style);

}  // namespace critx::io
