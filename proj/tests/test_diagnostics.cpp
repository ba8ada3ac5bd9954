#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sema/diagnostics.hpp"

#include <cmath>

using namespace sema;

namespace {

AffinityResult make_result(const std::string& model, const std::string& dataset,
                           double cos_intra, double cos_inter, double euc_intra,
                           double euc_inter) {
    AffinityResult r;
    r.model_id = model;
    r.dataset_id = dataset;
    r.sa_cosine = semantic_affinity(cos_intra, cos_inter);
    r.sa_euclidean = semantic_affinity(euc_intra, euc_inter);
    r.cosine_spreads.metric = MetricKind::cosine;
    r.cosine_spreads.intra = cos_intra;
    r.cosine_spreads.inter = cos_inter;
    r.euclidean_spreads.metric = MetricKind::euclidean;
    r.euclidean_spreads.intra = euc_intra;
    r.euclidean_spreads.inter = euc_inter;
    r.tier = classify_tier(r.sa_cosine);
    return r;
}

}  // namespace

TEST_CASE("stage1 thresholds") {
    AffinityResult r;
    r.sa_cosine = 0.61;
    CHECK(stage1_assess(r) == Stage1Decision::deploy);
    r.sa_cosine = 0.60;
    CHECK(stage1_assess(r) == Stage1Decision::deploy);
    r.sa_cosine = 0.55;
    CHECK(stage1_assess(r) == Stage1Decision::task_dependent);
    r.sa_cosine = 0.50;
    CHECK(stage1_assess(r) == Stage1Decision::task_dependent);
    r.sa_cosine = 0.49;
    CHECK(stage1_assess(r) == Stage1Decision::investigate);
}

TEST_CASE("magnitude rules") {
    CHECK(classify_magnitude(6.20, 12.17) == MagnitudeFinding::healthy);
    CHECK(classify_magnitude(0.106, 0.095) == MagnitudeFinding::near_collapse);
    CHECK(classify_magnitude(80.0, 60.0) == MagnitudeFinding::poor_normalization);
    // stricter finding wins when the two magnitudes disagree
    CHECK(classify_magnitude(0.5, 60.0) == MagnitudeFinding::near_collapse);
    CHECK(classify_magnitude(60.0, 10.0) == MagnitudeFinding::poor_normalization);
}

TEST_CASE("separation rules") {
    CHECK(classify_separation(1.30) == SeparationFinding::active_separation);
    CHECK(classify_separation(0.090 / 0.379) == SeparationFinding::co_location);
    CHECK(classify_separation(0.7) == SeparationFinding::partial);
    CHECK(classify_separation(1.0) == SeparationFinding::partial);
    CHECK(classify_separation(0.5) == SeparationFinding::partial);
}

TEST_CASE("variance rules including the open 2x-3x band") {
    bool note = true;
    CHECK(classify_variance(1.5, &note) == VarianceFinding::stable);
    CHECK_FALSE(note);
    CHECK(classify_variance(3.5, &note) == VarianceFinding::inconsistent);
    CHECK_FALSE(note);
    CHECK(classify_variance(2.5, &note) == VarianceFinding::stable);
    CHECK(note);
}

TEST_CASE("published workflow: weak-alignment model is flagged for investigation") {
    // cosine intra 0.0046 / inter 0.0060 (SA 0.433); tiny euclidean magnitudes
    // with a cross-dataset inter range 0.098..0.109
    std::vector<AffinityResult> results = {
        make_result("xlmr", "ds1", 0.0046, 0.0060, 0.095, 0.106),
        make_result("xlmr", "ds2", 0.0046, 0.0060, 0.095, 0.105),
        make_result("xlmr", "ds3", 0.0046, 0.0060, 0.095, 0.109),
        make_result("xlmr", "ds4", 0.0046, 0.0060, 0.095, 0.098),
    };
    auto rep = stage2_diagnose(results, {"out/xlmr-ds1-phate.svg"});
    CHECK(rep.stage1_decision == Stage1Decision::investigate);
    REQUIRE(rep.magnitude_finding.has_value());
    CHECK(*rep.magnitude_finding == MagnitudeFinding::near_collapse);
    REQUIRE(rep.variance_finding.has_value());
    CHECK(*rep.variance_finding == VarianceFinding::stable);
    REQUIRE(rep.separation_finding.has_value());
    CHECK(*rep.separation_finding == SeparationFinding::active_separation);
    CHECK(std::abs(rep.inter_intra_ratio_cosine - 1.30) < 0.01);
    CHECK_FALSE(rep.narrative.empty());
    bool has_visual = false;
    for (const auto& line : rep.narrative) {
        if (line.find("xlmr-ds1-phate.svg") != std::string::npos) has_visual = true;
    }
    CHECK(has_visual);
    CHECK_FALSE(rep.recommendation.empty());
}

TEST_CASE("published workflow: strong-alignment model deploys with no pathology narrative") {
    // cosine intra 0.379 / inter 0.090 (SA 0.807)
    std::vector<AffinityResult> results = {
        make_result("labse", "ds1", 0.379, 0.090, 12.17, 6.20),
    };
    auto rep = stage2_diagnose(results, {"out/labse-ds1-phate.svg"});
    CHECK(rep.stage1_decision == Stage1Decision::deploy);
    CHECK_FALSE(rep.magnitude_finding.has_value());
    CHECK_FALSE(rep.variance_finding.has_value());
    CHECK_FALSE(rep.separation_finding.has_value());
    CHECK(rep.narrative.empty());
    CHECK_FALSE(rep.recommendation.empty());
    // the underlying rules are still independently checkable on its spreads
    CHECK(classify_magnitude(6.20, 12.17) == MagnitudeFinding::healthy);
    CHECK(classify_separation(0.090 / 0.379) == SeparationFinding::co_location);
}

TEST_CASE("task_dependent band produces stage-2 findings and a distinct recommendation") {
    std::vector<AffinityResult> results = {
        make_result("mid", "ds1", 0.55, 0.45, 10.0, 8.0),
        make_result("mid", "ds2", 0.55, 0.45, 10.0, 30.0),
    };
    auto rep = stage2_diagnose(results);
    CHECK(rep.stage1_decision == Stage1Decision::task_dependent);
    REQUIRE(rep.variance_finding.has_value());
    CHECK(*rep.variance_finding == VarianceFinding::inconsistent);  // 30/8 > 3
    CHECK(rep.recommendation.find("Task-dependent") != std::string::npos);
}

TEST_CASE("stage2_diagnose input validation") {
    CHECK_THROWS_AS(stage2_diagnose({}), affinity_error);
    std::vector<AffinityResult> mixed = {
        make_result("a", "ds1", 0.3, 0.4, 5.0, 5.0),
        make_result("b", "ds1", 0.3, 0.4, 5.0, 5.0),
    };
    CHECK_THROWS_AS(stage2_diagnose(mixed), affinity_error);
}
