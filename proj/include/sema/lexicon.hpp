#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sema {

/// Raised for malformed dataset files and misaligned lexicons.
class lexicon_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The `|`-split surface forms of one concept in one language.
using VariantList = std::vector<std::string>;

struct ConceptEntry {
    std::size_t concept_index = 0;
    // language code -> variants, order preserved from the source file
    std::map<std::string, VariantList> forms;
};

struct TranslationLexicon {
    std::string dataset_id;
    std::vector<std::string> languages;  // ordered, size L >= 2
    std::vector<ConceptEntry> entries;   // size M, aligned by line number

    std::size_t concept_count() const { return entries.size(); }
    std::size_t language_count() const { return languages.size(); }
};

struct ExpandedPair {
    std::string language_i;
    std::string word_i;
    std::string language_j;
    std::string word_j;
    std::size_t concept_index = 0;
};

/// One variant per language (aligned with TranslationLexicon::languages).
struct ExpandedTuple {
    std::vector<std::string> words;
    std::size_t concept_index = 0;
};

struct ExpandedPairSet {
    // full cross-product of variants per unordered language pair
    std::vector<ExpandedPair> pairs;
    // cross-product across all L languages; for L=2 this mirrors `pairs`
    std::vector<ExpandedTuple> tuples;
    // M' per unordered language pair (keys ordered as in the lexicon)
    std::map<std::pair<std::string, std::string>, std::size_t> pair_counts;
};

/// Parse one dataset file: one concept per line, variants separated by `|`,
/// surrounding ASCII whitespace trimmed. Blank lines and empty variants are
/// rejected with the 1-based line number.
std::vector<VariantList> parse_language_file(const std::filesystem::path& path,
                                             const std::string& language);

/// Zip per-language variant lists by line index. Language order is the input
/// order; a line-count mismatch or duplicate language code is an error.
TranslationLexicon align_lexicon(
    const std::vector<std::pair<std::string, std::vector<VariantList>>>& per_language_lists,
    const std::string& dataset_id);

/// Expand every concept's multi-meaning variants into the full cross-product
/// per language pair (and the all-language tuple view used by the metrics).
ExpandedPairSet expand_meaning_variants(const TranslationLexicon& lexicon);

/// Flattened, deduplicated vocabulary for one language; first-occurrence
/// order is preserved so downstream cache keys and seeds are reproducible.
std::vector<std::string> unique_words(const TranslationLexicon& lexicon,
                                      const std::string& language);

/// Serialize one language back to the dataset file format (round-trip aid).
std::string serialize_language(const TranslationLexicon& lexicon,
                               const std::string& language);

}  // namespace sema
