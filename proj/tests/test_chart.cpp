#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sema/chart.hpp"

#include <random>

using namespace sema;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

PhateLayout make_layout(int per_lang, const std::vector<std::string>& langs,
                        std::uint64_t seed = 5) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    PhateLayout layout;
    layout.coordinates.resize(per_lang * int(langs.size()), 2);
    int row = 0;
    for (const auto& lang : langs) {
        for (int i = 0; i < per_lang; ++i, ++row) {
            layout.coordinates(row, 0) = g(rng);
            layout.coordinates(row, 1) = g(rng);
            layout.labels.emplace_back(lang, lang + "_w" + std::to_string(i));
        }
    }
    layout.chosen_t = 7;
    return layout;
}

AffinityResult result_with(double sa_c, double sem_c, double sa_e, double sem_e) {
    AffinityResult r;
    r.sa_cosine = sa_c;
    r.sem_cosine = sem_c;
    r.sa_euclidean = sa_e;
    r.sem_euclidean = sem_e;
    return r;
}

}  // namespace

TEST_CASE("legend formatting: 3-decimal half-up rounding") {
    auto l = format_sa_legend(result_with(0.6625, 0.0123, 0.5934, 0.0087));
    // 0.6625 as a binary double is just below the tie, so it rounds down
    CHECK(l.line1 == "SA(cos)=0.662 ± 0.012");
    CHECK(l.line2 == "SA(eucl)=0.593 ± 0.009");
    CHECK(l.anchor_x == 0.09);
    CHECK(l.anchor_y == 0.09);

    auto z = format_sa_legend(result_with(1.0, 0.0, 0.25, 0.1556));
    CHECK(z.line1 == "SA(cos)=1.000 ± 0.000");
    CHECK(z.line2 == "SA(eucl)=0.250 ± 0.156");
}

TEST_CASE("scatter SVG: one circle per point plus key dots, legend text present") {
    auto layout = make_layout(20, {"chn", "enu"});
    ChartSpec spec;
    spec.layout = &layout;
    spec.legend = format_sa_legend(result_with(0.812, 0.021, 0.64, 0.017));
    spec.title = "model - dataset";
    assign_default_palette(spec);
    auto svg = render_scatter_svg(spec);

    CHECK(count_occurrences(svg, "<circle") == 42);  // 40 markers + 2 key dots
    CHECK(svg.find("SA(cos)=0.812 ± 0.021") != std::string::npos);
    CHECK(svg.find("SA(eucl)=0.640 ± 0.017") != std::string::npos);
    CHECK(svg.find("model - dataset") != std::string::npos);
    CHECK(svg.find("#d62728") != std::string::npos);  // first language red
    CHECK(svg.find("#1f77b4") != std::string::npos);  // second language blue
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
}

TEST_CASE("scatter SVG: byte-identical across repeated renders") {
    auto layout = make_layout(15, {"a", "b", "c"});
    ChartSpec spec;
    spec.layout = &layout;
    spec.legend = format_sa_legend(result_with(0.5, 0.01, 0.5, 0.01));
    assign_default_palette(spec);
    CHECK(render_scatter_svg(spec) == render_scatter_svg(spec));
    CHECK(spec.palette.size() == 3);
    CHECK(spec.palette[0].second == "#d62728");
    CHECK(spec.palette[1].second == "#1f77b4");
}

TEST_CASE("render dispatcher covers all formats; PNG and PDF are well-formed") {
    auto layout = make_layout(10, {"x", "y"});
    ChartSpec spec;
    spec.layout = &layout;
    spec.legend = format_sa_legend(result_with(0.7, 0.02, 0.6, 0.02));
    spec.title = "t";
    assign_default_palette(spec);

    spec.format = ChartFormat::svg;
    auto svg_bytes = render_scatter(spec);
    CHECK(std::string(svg_bytes.begin(), svg_bytes.begin() + 5) == "<?xml");

    spec.format = ChartFormat::png;
    auto png = render_scatter(spec);
    REQUIRE(png.size() > 8);
    const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    for (int i = 0; i < 8; ++i) CHECK(png[std::size_t(i)] == sig[i]);
    CHECK(render_scatter(spec) == png);  // deterministic bytes

    spec.format = ChartFormat::pdf;
    auto pdf = render_scatter(spec);
    std::string pdf_s(pdf.begin(), pdf.end());
    CHECK(pdf_s.rfind("%PDF-1.4", 0) == 0);
    CHECK(pdf_s.find("/MediaBox [0 0 800 800]") != std::string::npos);
    CHECK(pdf_s.find("startxref") != std::string::npos);
    CHECK(pdf_s.substr(pdf_s.size() - 6) == "%%EOF\n");
    CHECK(render_scatter(spec) == pdf);
}

TEST_CASE("chart format parsing") {
    CHECK(parse_chart_format("svg") == ChartFormat::svg);
    CHECK(parse_chart_format("png") == ChartFormat::png);
    CHECK(parse_chart_format("pdf") == ChartFormat::pdf);
    CHECK_THROWS_AS(parse_chart_format("gif"), chart_error);
    CHECK(std::string(chart_extension(ChartFormat::png)) == "png");
}

TEST_CASE("grid export expects exactly four charts") {
    auto layout = make_layout(5, {"a", "b"});
    ChartSpec one;
    one.layout = &layout;
    assign_default_palette(one);
    CHECK_THROWS_AS(render_grid_svg({one}), chart_error);

    std::vector<ChartSpec> four(4, one);
    auto svg = render_grid_svg(four);
    CHECK(count_occurrences(svg, "<g transform=") == 4);
    CHECK(svg.find("viewBox=\"0 0 1600 1600\"") != std::string::npos);
}

TEST_CASE("heatmap: ramp endpoints and cell labels") {
    HeatmapSpec spec;
    spec.models = {"good", "bad"};
    spec.datasets = {"ds1", "ds2"};
    spec.sa = {{0.80, 0.75}, {0.40, std::nan("")}};
    spec.title = "heat";
    auto svg = render_heatmap_svg(spec);
    CHECK(svg.find("0.800") != std::string::npos);
    CHECK(svg.find("#2ba12b") != std::string::npos);  // green end (0.8)
    CHECK(svg.find("#d62629") != std::string::npos);  // red end (0.4)
    CHECK(svg.find("#eeeeee") != std::string::npos);  // missing cell
    CHECK(svg.find("ds2") != std::string::npos);
}

TEST_CASE("tier bars: colors follow the tier, labels include the value") {
    std::vector<TierBarEntry> entries = {
        {"alpha", 0.692, Tier::tier1},
        {"mid", 0.55, Tier::tier2},
        {"weak", 0.44, Tier::tier3},
    };
    auto svg = render_tier_bars_svg(entries, "bars");
    CHECK(svg.find("0.692 (tier1)") != std::string::npos);
    CHECK(svg.find("#2ca02c") != std::string::npos);
    CHECK(svg.find("#fdd835") != std::string::npos);
    CHECK(svg.find("#d62728") != std::string::npos);
    CHECK(svg.find("alpha") != std::string::npos);
}
