#pragma once

#include "sema/affinity.hpp"
#include "sema/phate.hpp"

#include <string>
#include <vector>

namespace sema {

class chart_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ChartFormat { svg, png, pdf };

ChartFormat parse_chart_format(const std::string& name);
const char* chart_extension(ChartFormat format);

/// Two-line SA overlay, anchored by fractional offsets from the chart's
/// top-right corner (measured to the legend box's top-right corner).
struct SALegend {
    std::string line1;  // SA(cos)=x.xxx +/- x.xxx
    std::string line2;  // SA(eucl)=x.xxx +/- x.xxx
    double anchor_x = 0.09;
    double anchor_y = 0.09;
};

/// "SA(cos)=%.3f ± %.3f" / "SA(eucl)=%.3f ± %.3f", rounded at 3 decimals.
SALegend format_sa_legend(const AffinityResult& result);

struct ChartSpec {
    const PhateLayout* layout = nullptr;
    SALegend legend;
    std::string title;
    // language -> hex color, ordered; defaults to red for the first language
    // and blue for the second
    std::vector<std::pair<std::string, std::string>> palette;
    int width = 800;
    int height = 800;
    ChartFormat format = ChartFormat::svg;
    double marker_radius = 3.0;
    double marker_opacity = 0.8;
};

/// Fill spec.palette (red, blue, then a fixed cycle) for every language
/// appearing in the layout, preserving first-appearance order.
void assign_default_palette(ChartSpec& spec);

/// Deterministic scatter chart; one circle per point, uniform x/y scaling.
std::string render_scatter_svg(const ChartSpec& spec);

/// Dispatch to the backend named by spec.format.
std::vector<unsigned char> render_scatter(const ChartSpec& spec);

/// 2x2 grid of four charts (row-major) as one SVG.
std::string render_grid_svg(const std::vector<ChartSpec>& specs);

struct HeatmapSpec {
    std::vector<std::string> models;    // rows
    std::vector<std::string> datasets;  // columns
    std::vector<std::vector<double>> sa;  // models x datasets; NaN for missing
    std::string title;
};

/// Model x dataset SA heatmap, red->yellow->green ramp over [0.4, 0.8].
std::string render_heatmap_svg(const HeatmapSpec& spec);

struct TierBarEntry {
    std::string model;
    double avg_sa = 0.0;
    Tier tier = Tier::tier3;
};

/// Horizontal Avg-SA bars colored by tier, sorted descending by the caller.
std::string render_tier_bars_svg(const std::vector<TierBarEntry>& entries,
                                 const std::string& title);

// Backends shared by render_scatter (implemented in raster.cpp / pdf.cpp).
std::vector<unsigned char> render_scatter_png(const ChartSpec& spec);
std::vector<unsigned char> render_scatter_pdf(const ChartSpec& spec);

}  // namespace sema
