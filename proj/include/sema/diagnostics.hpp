#pragma once

#include "sema/affinity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sema {

enum class Stage1Decision { deploy, task_dependent, investigate };
enum class MagnitudeFinding { healthy, poor_normalization, near_collapse };
enum class VarianceFinding { stable, inconsistent };
enum class SeparationFinding { co_location, partial, active_separation };

const char* to_string(Stage1Decision d);
const char* to_string(MagnitudeFinding f);
const char* to_string(VarianceFinding f);
const char* to_string(SeparationFinding f);

/// Two-stage diagnosis for one model: primary decision from cosine SA, then
/// pathology findings from Euclidean magnitudes, cross-dataset variance and
/// cosine separation direction. Stage-2 findings are populated only when the
/// stage-1 decision is not deploy.
struct DiagnosticReport {
    std::string model_id;
    Stage1Decision stage1_decision = Stage1Decision::investigate;
    std::optional<MagnitudeFinding> magnitude_finding;
    std::optional<VarianceFinding> variance_finding;
    bool variance_note = false;  // set for the open 2x-3x band (stable-with-note)
    std::optional<SeparationFinding> separation_finding;
    double inter_intra_ratio_cosine = 0.0;
    std::vector<std::string> narrative;
    std::string recommendation;
};

/// deploy iff sa >= 0.60, task_dependent iff 0.50 <= sa < 0.60, else investigate.
Stage1Decision stage1_assess(const AffinityResult& result);

// Stage-2 classification rules, exposed for direct use on raw spread values.
MagnitudeFinding classify_magnitude(double euclidean_inter, double euclidean_intra);
SeparationFinding classify_separation(double cosine_inter_intra_ratio);
VarianceFinding classify_variance(double max_min_ratio, bool* note = nullptr);

/// Full workflow over one model's results across datasets. `chart_paths`
/// are appended to the narrative as the visual-check pointers.
DiagnosticReport stage2_diagnose(const std::vector<AffinityResult>& results,
                                 const std::vector<std::string>& chart_paths = {});

}  // namespace sema
