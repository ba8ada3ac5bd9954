#include "sema/diagnostics.hpp"

#include <algorithm>
#include <cstdio>

namespace sema {
namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

int severity(MagnitudeFinding f) {
    switch (f) {
        case MagnitudeFinding::healthy: return 0;
        case MagnitudeFinding::poor_normalization: return 1;
        case MagnitudeFinding::near_collapse: return 2;
    }
    return 0;
}

MagnitudeFinding classify_one_magnitude(double v) {
    if (v < 1.0) return MagnitudeFinding::near_collapse;
    if (v > 50.0) return MagnitudeFinding::poor_normalization;
    return MagnitudeFinding::healthy;
}

}  // namespace

const char* to_string(Stage1Decision d) {
    switch (d) {
        case Stage1Decision::deploy: return "deploy";
        case Stage1Decision::task_dependent: return "task_dependent";
        case Stage1Decision::investigate: return "investigate";
    }
    return "?";
}

const char* to_string(MagnitudeFinding f) {
    switch (f) {
        case MagnitudeFinding::healthy: return "healthy";
        case MagnitudeFinding::poor_normalization: return "poor_normalization";
        case MagnitudeFinding::near_collapse: return "near_collapse";
    }
    return "?";
}

const char* to_string(VarianceFinding f) {
    return f == VarianceFinding::stable ? "stable" : "inconsistent";
}

const char* to_string(SeparationFinding f) {
    switch (f) {
        case SeparationFinding::co_location: return "co_location";
        case SeparationFinding::partial: return "partial";
        case SeparationFinding::active_separation: return "active_separation";
    }
    return "?";
}

Stage1Decision stage1_assess(const AffinityResult& result) {
    if (result.sa_cosine >= 0.60) return Stage1Decision::deploy;
    if (result.sa_cosine >= 0.50) return Stage1Decision::task_dependent;
    return Stage1Decision::investigate;
}

MagnitudeFinding classify_magnitude(double euclidean_inter, double euclidean_intra) {
    // thresholds apply to both magnitudes; the stricter finding wins
    auto a = classify_one_magnitude(euclidean_inter);
    auto b = classify_one_magnitude(euclidean_intra);
    return severity(a) >= severity(b) ? a : b;
}

SeparationFinding classify_separation(double ratio) {
    if (ratio > 1.0) return SeparationFinding::active_separation;
    if (ratio < 0.5) return SeparationFinding::co_location;
    return SeparationFinding::partial;
}

VarianceFinding classify_variance(double max_min_ratio, bool* note) {
    if (note) *note = false;
    if (max_min_ratio > 3.0) return VarianceFinding::inconsistent;
    if (max_min_ratio < 2.0) return VarianceFinding::stable;
    // open band between the <2x and >3x rules
    if (note) *note = true;
    return VarianceFinding::stable;
}

DiagnosticReport stage2_diagnose(const std::vector<AffinityResult>& results,
                                 const std::vector<std::string>& chart_paths) {
    if (results.empty()) throw affinity_error("stage2_diagnose: empty result list");

    DiagnosticReport rep;
    rep.model_id = results.front().model_id;

    double mean_sa = 0.0, mean_inter = 0.0, mean_intra = 0.0;
    for (const auto& r : results) {
        if (r.model_id != rep.model_id) {
            throw affinity_error("stage2_diagnose: results span multiple models");
        }
        mean_sa += r.sa_cosine;
        mean_inter += r.cosine_spreads.inter;
        mean_intra += r.cosine_spreads.intra;
    }
    mean_sa /= double(results.size());
    mean_inter /= double(results.size());
    mean_intra /= double(results.size());
    rep.inter_intra_ratio_cosine = mean_intra > 0.0 ? mean_inter / mean_intra : 0.0;

    if (mean_sa >= 0.60) rep.stage1_decision = Stage1Decision::deploy;
    else if (mean_sa >= 0.50) rep.stage1_decision = Stage1Decision::task_dependent;
    else rep.stage1_decision = Stage1Decision::investigate;

    if (rep.stage1_decision == Stage1Decision::deploy) {
        rep.recommendation = "Deploy with confidence for cross-lingual tasks.";
        return rep;
    }

    // magnitude: most severe finding across datasets
    MagnitudeFinding worst = MagnitudeFinding::healthy;
    double worst_inter = results.front().euclidean_spreads.inter;
    double worst_intra = results.front().euclidean_spreads.intra;
    for (const auto& r : results) {
        auto f = classify_magnitude(r.euclidean_spreads.inter, r.euclidean_spreads.intra);
        if (severity(f) >= severity(worst)) {
            worst = f;
            worst_inter = r.euclidean_spreads.inter;
            worst_intra = r.euclidean_spreads.intra;
        }
    }
    rep.magnitude_finding = worst;
    switch (worst) {
        case MagnitudeFinding::near_collapse:
            rep.narrative.push_back(fmt(
                "near-collapsed embedding space: euclidean inter=%.4g, intra=%.4g (magnitudes < 1)",
                worst_inter, worst_intra));
            break;
        case MagnitudeFinding::poor_normalization:
            rep.narrative.push_back(fmt(
                "poor embedding normalization: euclidean inter=%.4g, intra=%.4g (magnitudes > 50)",
                worst_inter, worst_intra));
            break;
        case MagnitudeFinding::healthy:
            rep.narrative.push_back(fmt("healthy euclidean magnitudes: inter=%.4g, intra=%.4g",
                                        worst_inter, worst_intra));
            break;
    }

    // cross-dataset variance of the euclidean inter spread
    double lo = results.front().euclidean_spreads.inter;
    double hi = lo;
    for (const auto& r : results) {
        lo = std::min(lo, r.euclidean_spreads.inter);
        hi = std::max(hi, r.euclidean_spreads.inter);
    }
    const double spread_ratio = lo > 0.0 ? hi / lo : 1.0;
    bool note = false;
    rep.variance_finding = classify_variance(spread_ratio, &note);
    rep.variance_note = note;
    if (*rep.variance_finding == VarianceFinding::inconsistent) {
        rep.narrative.push_back(
            fmt("inconsistent embedding quality across datasets: euclidean inter max/min=%.3g (> 3x)",
                spread_ratio));
    } else if (note) {
        rep.narrative.push_back(
            fmt("cross-dataset euclidean inter max/min=%.3g falls in the open 2x-3x band; "
                "treated as stable",
                spread_ratio));
    } else {
        rep.narrative.push_back(
            fmt("stable euclidean inter across datasets: max/min=%.3g (< 2x)", spread_ratio));
    }

    rep.separation_finding = classify_separation(rep.inter_intra_ratio_cosine);
    switch (*rep.separation_finding) {
        case SeparationFinding::active_separation:
            rep.narrative.push_back(
                fmt("active language separation: cosine inter/intra=%.3g (translations are "
                    "farther apart than random same-language pairs)",
                    rep.inter_intra_ratio_cosine));
            break;
        case SeparationFinding::co_location:
            rep.narrative.push_back(fmt("translation co-location: cosine inter/intra=%.3g",
                                        rep.inter_intra_ratio_cosine));
            break;
        case SeparationFinding::partial:
            rep.narrative.push_back(fmt("partial alignment: cosine inter/intra=%.3g",
                                        rep.inter_intra_ratio_cosine));
            break;
    }

    for (const auto& p : chart_paths) {
        rep.narrative.push_back("visual check: inspect manifold chart " + p);
    }

    if (rep.stage1_decision == Stage1Decision::task_dependent) {
        rep.recommendation =
            "Task-dependent suitability; verify alignment quality on the target vocabulary.";
    } else {
        rep.recommendation =
            "Avoid for applications requiring genuine cross-lingual understanding; prefer "
            "models trained with explicit translation-pair supervision.";
    }
    return rep;
}

}  // namespace sema
