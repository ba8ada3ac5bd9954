#pragma once

#include "sema/embedding_set.hpp"
#include "sema/lexicon.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sema {

class affinity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MetricKind { cosine, euclidean };

enum class Tier { tier1, tier2, tier3 };

const char* to_string(Tier tier);
const char* to_string(MetricKind metric);

/// Intra- and inter-lingual spreads under one metric. Cosine aggregates by
/// arithmetic mean; Euclidean aggregates by per-group RMS.
struct SpreadPair {
    MetricKind metric = MetricKind::cosine;
    double intra = 0.0;
    double inter = 0.0;
    std::map<std::string, double> per_language_intra;
    std::map<std::string, std::size_t> num_intra_pairs;  // N_l per language
    std::size_t num_inter_pairs = 0;                     // M'
    std::size_t num_language_pairs = 0;                  // K = L(L-1)/2
};

struct BootstrapEstimate {
    double mean = 0.0;
    double sem = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
};

struct AffinityResult {
    std::string model_id;
    std::string dataset_id;
    std::string language_pair;  // language codes joined with '-'

    double sa_cosine = 0.0;
    double sem_cosine = 0.0;
    double bootstrap_mean_cosine = 0.0;
    double sa_euclidean = 0.0;
    double sem_euclidean = 0.0;
    double bootstrap_mean_euclidean = 0.0;

    SpreadPair cosine_spreads;
    SpreadPair euclidean_spreads;

    int bootstrap_iterations = 0;
    std::uint64_t bootstrap_seed = 0;

    Tier tier = Tier::tier3;
    std::map<std::string, bool> collapse_flags;
    std::map<std::string, double> collapse_max_distance;
    int chosen_t = 0;  // filled in by the pipeline when PHATE runs
};

/// 1 - cos(u, v), in [0, 2]. Zero vectors are an error.
double cosine_distance(std::span<const float> u, std::span<const float> v);

double euclidean_distance(std::span<const float> u, std::span<const float> v);

/// intra / (intra + inter); requires intra > 0.
double semantic_affinity(double intra, double inter);

/// tier1 iff sa >= 0.60, tier2 iff 0.50 <= sa < 0.60, tier3 otherwise.
Tier classify_tier(double sa_cosine);

/// Mean (cosine) or RMS (euclidean) of all unordered distinct-word pairs per
/// language, then mean across languages. Distinct-word means the deduplicated
/// vocabulary; duplicate surface forms never contribute zero-distance pairs.
SpreadPair intra_spread(const TranslationLexicon& lexicon,
                        const std::map<std::string, LanguageEmbeddingSet>& sets,
                        MetricKind metric);

/// Per expanded tuple: mean (cosine) or RMS (euclidean) over the K language
/// pairs, then mean over the M' tuples.
SpreadPair inter_spread(const TranslationLexicon& lexicon,
                        const std::map<std::string, LanguageEmbeddingSet>& sets,
                        MetricKind metric);

/// Combined intra + inter under one metric (single pass over precomputed
/// distances; same values as the two calls above).
SpreadPair compute_spreads(const TranslationLexicon& lexicon,
                           const std::map<std::string, LanguageEmbeddingSet>& sets,
                           MetricKind metric);

struct BootstrapConfig {
    int iterations = 1000;
    std::uint64_t seed = 42;
    int max_redraws = 100;  // per iteration, when a resample degenerates
};

/// Concept-level resampling with replacement: each iteration resamples M
/// concepts, recomputes both spreads on the induced word multiset (intra over
/// per-language deduplicated words, inter over the resampled tuples) and the
/// SA ratio. Deterministic for a fixed seed.
BootstrapEstimate bootstrap_sem(const TranslationLexicon& lexicon,
                                const std::map<std::string, LanguageEmbeddingSet>& sets,
                                MetricKind metric, const BootstrapConfig& config);

struct AffinityConfig {
    int bootstrap_iterations = 1000;
    std::uint64_t seed = 42;
};

/// Full experiment for one model x dataset: both spreads under both metrics,
/// both SA values, bootstrap SEMs, collapse flags, tier from cosine SA.
AffinityResult run_affinity(const TranslationLexicon& lexicon,
                            const std::map<std::string, LanguageEmbeddingSet>& sets,
                            const AffinityConfig& config);

}  // namespace sema
