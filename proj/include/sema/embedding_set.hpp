#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sema {

class embedding_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable set of per-word vectors for one (model, language). All vectors
/// share dimension d >= 2 and are finite; words keep their request order.
class LanguageEmbeddingSet {
public:
    LanguageEmbeddingSet(std::string model_id, std::string language,
                         std::vector<std::string> words,
                         std::vector<std::vector<float>> vectors);

    const std::string& model_id() const { return model_id_; }
    const std::string& language() const { return language_; }
    std::size_t size() const { return words_.size(); }
    std::size_t dimension() const { return dimension_; }
    const std::vector<std::string>& words() const { return words_; }

    bool contains(const std::string& word) const { return index_.count(word) != 0; }
    std::span<const float> vector(const std::string& word) const;
    std::span<const float> vector_at(std::size_t i) const;

private:
    std::string model_id_;
    std::string language_;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<float> data_;  // row-major, size() x dimension()
    std::size_t dimension_ = 0;
};

struct CollapseCheck {
    bool collapsed = false;
    double max_distance = 0.0;
};

/// Degenerate-set check: flagged iff the maximum pairwise Euclidean distance
/// is strictly below 1e-6. Requires at least 2 vectors.
CollapseCheck detect_collapse(const LanguageEmbeddingSet& set);

}  // namespace sema
