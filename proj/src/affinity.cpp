#include "sema/affinity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace sema {

const char* to_string(Tier tier) {
    switch (tier) {
        case Tier::tier1: return "tier1";
        case Tier::tier2: return "tier2";
        case Tier::tier3: return "tier3";
    }
    return "?";
}

const char* to_string(MetricKind metric) {
    return metric == MetricKind::cosine ? "cosine" : "euclidean";
}

double cosine_distance(std::span<const float> u, std::span<const float> v) {
    if (u.size() != v.size()) throw affinity_error("cosine_distance: dimension mismatch");
    double nu = 0.0, nv = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        nu += double(u[k]) * double(u[k]);
        nv += double(v[k]) * double(v[k]);
    }
    if (nu == 0.0 || nv == 0.0) throw affinity_error("cosine_distance: zero vector");
    // 0.5 * ||u/|u| - v/|v|||^2 == 1 - cos(u, v), but exactly 0 for u == v
    const double su = std::sqrt(nu), sv = std::sqrt(nv);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = double(u[k]) / su - double(v[k]) / sv;
        s += d * d;
    }
    return 0.5 * s;
}

double euclidean_distance(std::span<const float> u, std::span<const float> v) {
    if (u.size() != v.size()) throw affinity_error("euclidean_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = double(u[k]) - double(v[k]);
        s += d * d;
    }
    return std::sqrt(s);
}

double semantic_affinity(double intra, double inter) {
    if (!(intra > 0.0)) {
        throw affinity_error("semantic_affinity: intra spread must be positive, got " +
                             std::to_string(intra));
    }
    if (inter < 0.0) throw affinity_error("semantic_affinity: negative inter spread");
    return intra / (intra + inter);
}

Tier classify_tier(double sa_cosine) {
    if (sa_cosine >= 0.60) return Tier::tier1;
    if (sa_cosine >= 0.50) return Tier::tier2;
    return Tier::tier3;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Precomputed pairwise distances over the deduplicated per-language
// vocabularies plus per-tuple inter distances; full-sample spreads and every
// bootstrap iteration are sums over these tables.
class Experiment {
public:
    Experiment(const TranslationLexicon& lexicon,
               const std::map<std::string, LanguageEmbeddingSet>& sets, bool need_cosine,
               bool need_euclidean)
        : lexicon_(lexicon), need_cos_(need_cosine), need_eucl_(need_euclidean) {
        const auto& lang_codes = lexicon.languages;
        const std::size_t nl = lang_codes.size();
        k_pairs_ = nl * (nl - 1) / 2;

        langs_.resize(nl);
        for (std::size_t l = 0; l < nl; ++l) {
            auto& lang = langs_[l];
            lang.code = lang_codes[l];
            auto it = sets.find(lang.code);
            if (it == sets.end()) {
                throw affinity_error("no embedding set for language " + lang.code);
            }
            lang.vocab = unique_words(lexicon, lang.code);
            if (lang.vocab.size() < 2) {
                throw affinity_error("insufficient vocabulary: language " + lang.code +
                                     " has fewer than 2 distinct words");
            }
            const auto& set = it->second;
            const std::size_t v = lang.vocab.size();
            const std::size_t d = set.dimension();
            lang.points.resize(v, d);
            for (std::size_t i = 0; i < v; ++i) {
                auto vec = set.vector(lang.vocab[i]);  // throws if missing
                for (std::size_t k = 0; k < d; ++k) lang.points(i, k) = vec[k];
                lang.index.emplace(lang.vocab[i], i);
            }
            lang.norms = lang.points.rowwise().norm();
            if (need_cos_) {
                for (std::size_t i = 0; i < v; ++i) {
                    if (lang.norms(i) == 0.0) {
                        throw affinity_error("zero vector for word \"" + lang.vocab[i] +
                                             "\" in language " + lang.code);
                    }
                }
            }
            if (need_cos_) {
                // normalized-difference form: exact 0 for identical vectors
                lang.unit = lang.points.array().colwise() / lang.norms.array();
                lang.cos.resize(v, v);
                for (std::size_t i = 0; i < v; ++i)
                    for (std::size_t j = 0; j < v; ++j)
                        lang.cos(i, j) =
                            0.5 * (lang.unit.row(i) - lang.unit.row(j)).squaredNorm();
            }
            if (need_eucl_) {
                lang.sq.resize(v, v);
                for (std::size_t i = 0; i < v; ++i)
                    for (std::size_t j = 0; j < v; ++j)
                        lang.sq(i, j) =
                            (lang.points.row(i) - lang.points.row(j)).squaredNorm();
            }
        }

        // cross-language distance tables per unordered language pair
        cross_cos_.resize(nl * nl);
        cross_sq_.resize(nl * nl);
        for (std::size_t a = 0; a < nl; ++a) {
            for (std::size_t b = a + 1; b < nl; ++b) {
                if (need_cos_) {
                    Eigen::MatrixXd m(langs_[a].vocab.size(), langs_[b].vocab.size());
                    for (Eigen::Index i = 0; i < m.rows(); ++i)
                        for (Eigen::Index j = 0; j < m.cols(); ++j)
                            m(i, j) = 0.5 * (langs_[a].unit.row(i) - langs_[b].unit.row(j))
                                                .squaredNorm();
                    cross_cos_[a * nl + b] = std::move(m);
                }
                if (need_eucl_) {
                    Eigen::MatrixXd m(langs_[a].vocab.size(), langs_[b].vocab.size());
                    for (Eigen::Index i = 0; i < m.rows(); ++i)
                        for (Eigen::Index j = 0; j < m.cols(); ++j)
                            m(i, j) = (langs_[a].points.row(i) - langs_[b].points.row(j))
                                          .squaredNorm();
                    cross_sq_[a * nl + b] = std::move(m);
                }
            }
        }

        // per-concept variant vocab indices and per-tuple inter distances
        const std::size_t m = lexicon.entries.size();
        concept_words_.resize(m);
        concept_tuples_.resize(m);
        for (std::size_t c = 0; c < m; ++c) {
            const auto& entry = lexicon.entries[c];
            auto& words = concept_words_[c];
            words.resize(nl);
            for (std::size_t l = 0; l < nl; ++l) {
                for (const auto& w : entry.forms.at(lang_codes[l])) {
                    words[l].push_back(langs_[l].index.at(w));
                }
            }
            // odometer over variant indices = all-language tuples
            std::vector<std::size_t> idx(nl, 0);
            for (;;) {
                TupleDist t{0.0, 0.0};
                for (std::size_t a = 0; a < nl; ++a) {
                    for (std::size_t b = a + 1; b < nl; ++b) {
                        const std::size_t ia = words[a][idx[a]];
                        const std::size_t ib = words[b][idx[b]];
                        if (need_cos_) t.cos_sum += cross_cos_[a * nl + b](ia, ib);
                        if (need_eucl_) t.sq_sum += cross_sq_[a * nl + b](ia, ib);
                    }
                }
                concept_tuples_[c].push_back(
                    {t.cos_sum / double(k_pairs_),
                     std::sqrt(t.sq_sum / double(k_pairs_))});
                std::size_t l = 0;
                while (l < nl) {
                    if (++idx[l] < words[l].size()) break;
                    idx[l] = 0;
                    ++l;
                }
                if (l == nl) break;
            }
        }
    }

    std::size_t language_count() const { return langs_.size(); }
    std::size_t concept_count() const { return lexicon_.entries.size(); }

    SpreadPair full_spreads(MetricKind metric) const {
        std::vector<std::size_t> all(concept_count());
        std::iota(all.begin(), all.end(), 0);
        return spreads_for_sample(all, metric, /*dedup_needed=*/false);
    }

    // intra + inter for one concept multiset; duplicates contribute once to
    // intra (per-language word dedup) and multiply to inter (resampled pairs)
    SpreadPair spreads_for_sample(const std::vector<std::size_t>& concepts,
                                  MetricKind metric, bool dedup_needed) const {
        SpreadPair sp;
        sp.metric = metric;
        sp.num_language_pairs = k_pairs_;

        const bool cosine = metric == MetricKind::cosine;
        double intra_total = 0.0;
        for (std::size_t l = 0; l < langs_.size(); ++l) {
            const auto& lang = langs_[l];
            std::vector<std::size_t> present;
            if (dedup_needed) {
                std::vector<char> mask(lang.vocab.size(), 0);
                for (std::size_t c : concepts)
                    for (std::size_t w : concept_words_[c][l]) mask[w] = 1;
                for (std::size_t i = 0; i < mask.size(); ++i)
                    if (mask[i]) present.push_back(i);
            } else {
                present.resize(lang.vocab.size());
                std::iota(present.begin(), present.end(), 0);
            }
            if (present.size() < 2) {
                throw affinity_error("insufficient vocabulary: language " + lang.code +
                                     " has fewer than 2 distinct words in sample");
            }
            const Eigen::MatrixXd& table = cosine ? lang.cos : lang.sq;
            double sum = 0.0;
            for (std::size_t i = 0; i < present.size(); ++i)
                for (std::size_t j = i + 1; j < present.size(); ++j)
                    sum += table(present[i], present[j]);
            const double n_pairs = double(present.size()) * double(present.size() - 1) / 2.0;
            const double value = cosine ? sum / n_pairs : std::sqrt(sum / n_pairs);
            sp.per_language_intra[lang.code] = value;
            sp.num_intra_pairs[lang.code] = std::size_t(n_pairs);
            intra_total += value;
        }
        sp.intra = intra_total / double(langs_.size());

        double inter_sum = 0.0;
        std::size_t tuple_count = 0;
        for (std::size_t c : concepts) {
            for (const auto& t : concept_tuples_[c]) {
                inter_sum += cosine ? t.cos_mean : t.eucl_rms;
            }
            tuple_count += concept_tuples_[c].size();
        }
        sp.num_inter_pairs = tuple_count;
        sp.inter = inter_sum / double(tuple_count);
        return sp;
    }

    std::pair<BootstrapEstimate, BootstrapEstimate> bootstrap_both(
        const BootstrapConfig& config) const {
        if (config.iterations < 2) {
            throw affinity_error("bootstrap requires at least 2 iterations");
        }
        const std::size_t m = concept_count();
        std::vector<double> sa_cos(config.iterations), sa_eucl(config.iterations);
        std::vector<std::size_t> sample(m);
        for (int it = 0; it < config.iterations; ++it) {
            std::uint64_t state = splitmix64(config.seed ^ (0x5851F42D4C957F2DULL * (it + 1)));
            bool ok = false;
            for (int redraw = 0; redraw < config.max_redraws && !ok; ++redraw) {
                for (std::size_t i = 0; i < m; ++i) {
                    state = splitmix64(state);
                    sample[i] = state % m;
                }
                try {
                    if (need_cos_) {
                        auto sc = spreads_for_sample(sample, MetricKind::cosine, true);
                        sa_cos[it] = semantic_affinity(sc.intra, sc.inter);
                    }
                    if (need_eucl_) {
                        auto se = spreads_for_sample(sample, MetricKind::euclidean, true);
                        sa_eucl[it] = semantic_affinity(se.intra, se.inter);
                    }
                    ok = true;
                } catch (const affinity_error&) {
                    ok = false;
                }
            }
            if (!ok) {
                throw affinity_error(
                    "bootstrap iteration could not draw a usable resample after " +
                    std::to_string(config.max_redraws) + " attempts");
            }
        }
        auto estimate = [&](const std::vector<double>& xs) {
            BootstrapEstimate e;
            e.iterations = config.iterations;
            e.seed = config.seed;
            e.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
            double ss = 0.0;
            for (double x : xs) ss += (x - e.mean) * (x - e.mean);
            e.sem = std::sqrt(ss / double(xs.size() - 1));
            return e;
        };
        return {estimate(sa_cos), estimate(sa_eucl)};
    }

private:
    struct TupleDist {
        double cos_sum;
        double sq_sum;
    };
    struct PrecomputedTuple {
        double cos_mean;
        double eucl_rms;
    };
    struct Lang {
        std::string code;
        std::vector<std::string> vocab;
        std::unordered_map<std::string, std::size_t> index;
        Eigen::MatrixXd points;
        Eigen::MatrixXd unit;  // rows normalized; only built for the cosine path
        Eigen::VectorXd norms;
        Eigen::MatrixXd cos;  // cosine distance, vocab x vocab
        Eigen::MatrixXd sq;   // squared euclidean distance
    };

    const TranslationLexicon& lexicon_;
    bool need_cos_;
    bool need_eucl_;
    std::size_t k_pairs_ = 0;
    std::vector<Lang> langs_;
    std::vector<Eigen::MatrixXd> cross_cos_;  // indexed a * L + b, a < b
    std::vector<Eigen::MatrixXd> cross_sq_;
    std::vector<std::vector<std::vector<std::size_t>>> concept_words_;
    std::vector<std::vector<PrecomputedTuple>> concept_tuples_;
};

}  // namespace

SpreadPair intra_spread(const TranslationLexicon& lexicon,
                        const std::map<std::string, LanguageEmbeddingSet>& sets,
                        MetricKind metric) {
    Experiment ex(lexicon, sets, metric == MetricKind::cosine,
                  metric == MetricKind::euclidean);
    auto sp = ex.full_spreads(metric);
    sp.inter = 0.0;
    sp.num_inter_pairs = 0;
    return sp;
}

SpreadPair inter_spread(const TranslationLexicon& lexicon,
                        const std::map<std::string, LanguageEmbeddingSet>& sets,
                        MetricKind metric) {
    Experiment ex(lexicon, sets, metric == MetricKind::cosine,
                  metric == MetricKind::euclidean);
    auto sp = ex.full_spreads(metric);
    sp.intra = 0.0;
    sp.per_language_intra.clear();
    sp.num_intra_pairs.clear();
    return sp;
}

SpreadPair compute_spreads(const TranslationLexicon& lexicon,
                           const std::map<std::string, LanguageEmbeddingSet>& sets,
                           MetricKind metric) {
    Experiment ex(lexicon, sets, metric == MetricKind::cosine,
                  metric == MetricKind::euclidean);
    return ex.full_spreads(metric);
}

BootstrapEstimate bootstrap_sem(const TranslationLexicon& lexicon,
                                const std::map<std::string, LanguageEmbeddingSet>& sets,
                                MetricKind metric, const BootstrapConfig& config) {
    Experiment ex(lexicon, sets, metric == MetricKind::cosine,
                  metric == MetricKind::euclidean);
    auto [cos_est, eucl_est] = ex.bootstrap_both(config);
    return metric == MetricKind::cosine ? cos_est : eucl_est;
}

AffinityResult run_affinity(const TranslationLexicon& lexicon,
                            const std::map<std::string, LanguageEmbeddingSet>& sets,
                            const AffinityConfig& config) {
    Experiment ex(lexicon, sets, true, true);

    AffinityResult r;
    r.dataset_id = lexicon.dataset_id;
    for (std::size_t l = 0; l < lexicon.languages.size(); ++l) {
        if (l) r.language_pair += '-';
        r.language_pair += lexicon.languages[l];
    }

    r.cosine_spreads = ex.full_spreads(MetricKind::cosine);
    r.euclidean_spreads = ex.full_spreads(MetricKind::euclidean);
    r.sa_cosine = semantic_affinity(r.cosine_spreads.intra, r.cosine_spreads.inter);
    r.sa_euclidean = semantic_affinity(r.euclidean_spreads.intra, r.euclidean_spreads.inter);
    r.tier = classify_tier(r.sa_cosine);

    BootstrapConfig bc;
    bc.iterations = config.bootstrap_iterations;
    bc.seed = config.seed;
    auto [cos_est, eucl_est] = ex.bootstrap_both(bc);
    r.bootstrap_mean_cosine = cos_est.mean;
    r.sem_cosine = cos_est.sem;
    r.bootstrap_mean_euclidean = eucl_est.mean;
    r.sem_euclidean = eucl_est.sem;
    r.bootstrap_iterations = bc.iterations;
    r.bootstrap_seed = bc.seed;

    for (const auto& [lang, set] : sets) {
        auto check = detect_collapse(set);
        r.collapse_flags[lang] = check.collapsed;
        r.collapse_max_distance[lang] = check.max_distance;
        r.model_id = set.model_id();
    }
    return r;
}

}  // namespace sema
