#include "sema/chart.hpp"

#include "chart_geometry.hpp"

#include <cmath>
#include <sstream>

namespace sema {
namespace {

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

void append_scatter_body(std::ostringstream& svg, const ChartSpec& spec,
                         const detail::ChartGeometry& g) {
    using detail::fixed2;
    svg << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" fill=\"#ffffff\"/>\n";
    if (!spec.title.empty()) {
        svg << "<text x=\"" << fixed2(g.title_x) << "\" y=\"" << fixed2(g.title_y)
            << "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
            << escape_xml(spec.title) << "</text>\n";
    }
    for (const auto& m : g.markers) {
        svg << "<circle cx=\"" << fixed2(m.x) << "\" cy=\"" << fixed2(m.y) << "\" r=\""
            << fixed2(spec.marker_radius) << "\" fill=\"" << g.colors[m.color_index]
            << "\" fill-opacity=\"" << fixed2(spec.marker_opacity) << "\"/>\n";
    }
    for (const auto& k : g.key) {
        svg << "<circle cx=\"" << fixed2(k.x) << "\" cy=\"" << fixed2(k.y - 4.0)
            << "\" r=\"5\" fill=\"" << k.color << "\"/>\n";
        svg << "<text x=\"" << fixed2(k.x + 10.0) << "\" y=\"" << fixed2(k.y)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(k.language)
            << "</text>\n";
    }
    svg << "<text x=\"" << fixed2(g.legend_x) << "\" y=\"" << fixed2(g.legend_y1)
        << "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"end\">"
        << escape_xml(spec.legend.line1) << "</text>\n";
    svg << "<text x=\"" << fixed2(g.legend_x) << "\" y=\"" << fixed2(g.legend_y2)
        << "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"end\">"
        << escape_xml(spec.legend.line2) << "</text>\n";
}

std::array<double, 3> ramp_color(double sa) {
    // red -> yellow -> green over SA in [0.4, 0.8]
    double t = (sa - 0.4) / 0.4;
    t = std::min(1.0, std::max(0.0, t));
    const std::array<double, 3> red{0.84, 0.15, 0.16};
    const std::array<double, 3> yellow{0.99, 0.85, 0.21};
    const std::array<double, 3> green{0.17, 0.63, 0.17};
    auto lerp = [](const std::array<double, 3>& a, const std::array<double, 3>& b, double u) {
        return std::array<double, 3>{a[0] + (b[0] - a[0]) * u, a[1] + (b[1] - a[1]) * u,
                                     a[2] + (b[2] - a[2]) * u};
    };
    return t < 0.5 ? lerp(red, yellow, t * 2.0) : lerp(yellow, green, (t - 0.5) * 2.0);
}

std::string hex_color(const std::array<double, 3>& rgb) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(std::lround(rgb[0] * 255.0)),
                  int(std::lround(rgb[1] * 255.0)), int(std::lround(rgb[2] * 255.0)));
    return buf;
}

const char* kPaletteCycle[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

void assign_default_palette(ChartSpec& spec) {
    if (!spec.layout) throw chart_error("assign_default_palette: no layout");
    spec.palette.clear();
    std::vector<std::string> seen;
    for (const auto& [lang, word] : spec.layout->labels) {
        (void)word;
        if (std::find(seen.begin(), seen.end(), lang) == seen.end()) seen.push_back(lang);
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        spec.palette.emplace_back(seen[i], kPaletteCycle[i % std::size(kPaletteCycle)]);
    }
}

std::string render_scatter_svg(const ChartSpec& spec) {
    auto g = detail::compute_geometry(spec);
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
        << spec.height << "\">\n";
    append_scatter_body(svg, spec, g);
    svg << "</svg>\n";
    return svg.str();
}

std::string render_grid_svg(const std::vector<ChartSpec>& specs) {
    if (specs.size() != 4) {
        throw chart_error("grid export expects exactly 4 charts, got " +
                          std::to_string(specs.size()));
    }
    const int w = specs.front().width, h = specs.front().height;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * w << "\" height=\""
        << 2 * h << "\" viewBox=\"0 0 " << 2 * w << " " << 2 * h << "\">\n";
    for (std::size_t i = 0; i < 4; ++i) {
        const int tx = int(i % 2) * w;
        const int ty = int(i / 2) * h;
        svg << "<g transform=\"translate(" << tx << "," << ty << ")\">\n";
        auto g = detail::compute_geometry(specs[i]);
        append_scatter_body(svg, specs[i], g);
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_heatmap_svg(const HeatmapSpec& spec) {
    using detail::fixed2;
    const double cell_w = 90.0, cell_h = 34.0;
    const double left = 150.0, top = 70.0;
    const int width = int(left + cell_w * double(spec.datasets.size()) + 40.0);
    const int height = int(top + cell_h * double(spec.models.size()) + 40.0);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";
    if (!spec.title.empty()) {
        svg << "<text x=\"" << fixed2(width / 2.0)
            << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
               "text-anchor=\"middle\">"
            << escape_xml(spec.title) << "</text>\n";
    }
    for (std::size_t c = 0; c < spec.datasets.size(); ++c) {
        svg << "<text x=\"" << fixed2(left + cell_w * (double(c) + 0.5)) << "\" y=\""
            << fixed2(top - 10.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
            << escape_xml(spec.datasets[c]) << "</text>\n";
    }
    for (std::size_t r = 0; r < spec.models.size(); ++r) {
        svg << "<text x=\"" << fixed2(left - 8.0) << "\" y=\""
            << fixed2(top + cell_h * (double(r) + 0.62))
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
            << escape_xml(spec.models[r]) << "</text>\n";
        for (std::size_t c = 0; c < spec.datasets.size(); ++c) {
            const double sa = spec.sa[r][c];
            const double x = left + cell_w * double(c);
            const double y = top + cell_h * double(r);
            if (std::isnan(sa)) {
                svg << "<rect x=\"" << fixed2(x) << "\" y=\"" << fixed2(y) << "\" width=\""
                    << fixed2(cell_w - 2) << "\" height=\"" << fixed2(cell_h - 2)
                    << "\" fill=\"#eeeeee\"/>\n";
                continue;
            }
            svg << "<rect x=\"" << fixed2(x) << "\" y=\"" << fixed2(y) << "\" width=\""
                << fixed2(cell_w - 2) << "\" height=\"" << fixed2(cell_h - 2) << "\" fill=\""
                << hex_color(ramp_color(sa)) << "\"/>\n";
            char label[16];
            std::snprintf(label, sizeof label, "%.3f", sa);
            svg << "<text x=\"" << fixed2(x + (cell_w - 2) / 2.0) << "\" y=\""
                << fixed2(y + cell_h * 0.62)
                << "\" font-family=\"sans-serif\" font-size=\"12\" "
                   "text-anchor=\"middle\">"
                << label << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_tier_bars_svg(const std::vector<TierBarEntry>& entries,
                                 const std::string& title) {
    using detail::fixed2;
    const double bar_h = 26.0, left = 150.0, top = 60.0, full_w = 400.0;
    const int width = int(left + full_w + 90.0);
    const int height = int(top + bar_h * double(entries.size()) + 30.0);

    auto tier_color = [](Tier t) {
        switch (t) {
            case Tier::tier1: return "#2ca02c";
            case Tier::tier2: return "#fdd835";
            case Tier::tier3: return "#d62728";
        }
        return "#7f7f7f";
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";
    if (!title.empty()) {
        svg << "<text x=\"" << fixed2(width / 2.0)
            << "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
               "text-anchor=\"middle\">"
            << escape_xml(title) << "</text>\n";
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const double y = top + bar_h * double(i);
        svg << "<text x=\"" << fixed2(left - 8.0) << "\" y=\"" << fixed2(y + bar_h * 0.66)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
            << escape_xml(e.model) << "</text>\n";
        svg << "<rect x=\"" << fixed2(left) << "\" y=\"" << fixed2(y + 3.0) << "\" width=\""
            << fixed2(full_w * std::min(1.0, std::max(0.0, e.avg_sa))) << "\" height=\""
            << fixed2(bar_h - 6.0) << "\" fill=\"" << tier_color(e.tier) << "\"/>\n";
        char label[32];
        std::snprintf(label, sizeof label, "%.3f (%s)", e.avg_sa, to_string(e.tier));
        svg << "<text x=\"" << fixed2(left + full_w * std::min(1.0, std::max(0.0, e.avg_sa)) + 6.0)
            << "\" y=\"" << fixed2(y + bar_h * 0.66)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sema
