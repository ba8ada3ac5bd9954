#pragma once

// Shared scatter-chart geometry so the SVG, PNG and PDF backends place
// identical content. Internal to the chart implementation.

#include "sema/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace sema::detail {

struct Marker {
    double x = 0.0;
    double y = 0.0;
    std::size_t color_index = 0;
};

struct KeyEntry {
    std::string language;
    std::string color;
    double x = 0.0;
    double y = 0.0;
};

struct ChartGeometry {
    std::vector<Marker> markers;
    std::vector<std::string> colors;  // indexed by Marker::color_index
    std::vector<KeyEntry> key;
    double title_x = 0.0, title_y = 0.0;
    double legend_x = 0.0;  // right edge of the legend text
    double legend_y1 = 0.0, legend_y2 = 0.0;
};

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline ChartGeometry compute_geometry(const ChartSpec& spec) {
    if (!spec.layout || spec.layout->coordinates.rows() == 0) {
        throw chart_error("render_scatter: empty layout");
    }
    const auto& coords = spec.layout->coordinates;
    if (coords.cols() < 2) throw chart_error("render_scatter: layout is not 2D");

    ChartGeometry g;
    const double margin = 50.0;
    const double avail_w = spec.width - 2.0 * margin;
    const double avail_h = spec.height - 2.0 * margin;

    double min_x = coords.col(0).minCoeff(), max_x = coords.col(0).maxCoeff();
    double min_y = coords.col(1).minCoeff(), max_y = coords.col(1).maxCoeff();
    const double range = std::max(max_x - min_x, max_y - min_y);
    // uniform scale in x and y keeps the manifold's aspect ratio
    const double scale = range > 0.0 ? std::min(avail_w, avail_h) / range : 0.0;
    const double cx = (min_x + max_x) / 2.0, cy = (min_y + max_y) / 2.0;

    std::vector<std::string> langs;
    for (const auto& [lang, color] : spec.palette) {
        langs.push_back(lang);
        g.colors.push_back(color);
    }
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        const auto& lang = spec.layout->labels[std::size_t(i)].first;
        auto it = std::find(langs.begin(), langs.end(), lang);
        if (it == langs.end()) throw chart_error("no palette entry for language " + lang);
        Marker m;
        m.color_index = std::size_t(it - langs.begin());
        m.x = spec.width / 2.0 + (coords(i, 0) - cx) * scale;
        m.y = spec.height / 2.0 - (coords(i, 1) - cy) * scale;
        g.markers.push_back(m);
    }

    g.title_x = spec.width / 2.0;
    g.title_y = 24.0;
    g.legend_x = spec.width * (1.0 - spec.legend.anchor_x);
    g.legend_y1 = spec.height * spec.legend.anchor_y + 13.0;  // + font ascent
    g.legend_y2 = g.legend_y1 + 17.0;

    for (std::size_t l = 0; l < langs.size(); ++l) {
        KeyEntry e;
        e.language = langs[l];
        e.color = g.colors[l];
        e.x = margin;
        e.y = margin + 16.0 * double(l);
        g.key.push_back(e);
    }
    return g;
}

}  // namespace sema::detail
