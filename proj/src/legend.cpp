#include "sema/chart.hpp"

#include <cstdio>

namespace sema {

ChartFormat parse_chart_format(const std::string& name) {
    if (name == "svg") return ChartFormat::svg;
    if (name == "png") return ChartFormat::png;
    if (name == "pdf") return ChartFormat::pdf;
    throw chart_error("unsupported chart format: " + name);
}

const char* chart_extension(ChartFormat format) {
    switch (format) {
        case ChartFormat::svg: return "svg";
        case ChartFormat::png: return "png";
        case ChartFormat::pdf: return "pdf";
    }
    return "?";
}

SALegend format_sa_legend(const AffinityResult& result) {
    // %.3f is correctly rounded to nearest; exact decimal ties cannot occur
    // for binary doubles at 3 places, so this matches half-up rounding.
    char buf[96];
    SALegend legend;
    std::snprintf(buf, sizeof buf, "SA(cos)=%.3f ± %.3f", result.sa_cosine,
                  result.sem_cosine);
    legend.line1 = buf;
    std::snprintf(buf, sizeof buf, "SA(eucl)=%.3f ± %.3f", result.sa_euclidean,
                  result.sem_euclidean);
    legend.line2 = buf;
    return legend;
}

std::vector<unsigned char> render_scatter(const ChartSpec& spec) {
    switch (spec.format) {
        case ChartFormat::svg: {
            auto s = render_scatter_svg(spec);
            return {s.begin(), s.end()};
        }
        case ChartFormat::png: return render_scatter_png(spec);
        case ChartFormat::pdf: return render_scatter_pdf(spec);
    }
    throw chart_error("unsupported chart format");
}

}  // namespace sema
