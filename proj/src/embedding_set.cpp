#include "sema/embedding_set.hpp"

#include <cmath>

namespace sema {

LanguageEmbeddingSet::LanguageEmbeddingSet(std::string model_id, std::string language,
                                           std::vector<std::string> words,
                                           std::vector<std::vector<float>> vectors)
    : model_id_(std::move(model_id)),
      language_(std::move(language)),
      words_(std::move(words)) {
    if (words_.size() != vectors.size()) {
        throw embedding_error("word/vector count mismatch: " + std::to_string(words_.size()) +
                              " words, " + std::to_string(vectors.size()) + " vectors");
    }
    if (words_.empty()) {
        throw embedding_error("empty embedding set for " + model_id_ + "/" + language_);
    }
    dimension_ = vectors.front().size();
    if (dimension_ < 2) {
        throw embedding_error("embedding dimension must be >= 2, got " +
                              std::to_string(dimension_));
    }
    data_.reserve(words_.size() * dimension_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (vectors[i].size() != dimension_) {
            throw embedding_error("ragged dimensions: word \"" + words_[i] + "\" has " +
                                  std::to_string(vectors[i].size()) + ", expected " +
                                  std::to_string(dimension_));
        }
        for (float x : vectors[i]) {
            if (!std::isfinite(x)) {
                throw embedding_error("non-finite value in embedding of \"" + words_[i] + "\"");
            }
        }
        if (!index_.emplace(words_[i], i).second) {
            throw embedding_error("duplicate word in embedding set: \"" + words_[i] + "\"");
        }
        data_.insert(data_.end(), vectors[i].begin(), vectors[i].end());
    }
}

std::span<const float> LanguageEmbeddingSet::vector(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) {
        throw embedding_error("no embedding for word \"" + word + "\" in " + model_id_ + "/" +
                              language_);
    }
    return vector_at(it->second);
}

std::span<const float> LanguageEmbeddingSet::vector_at(std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
}

CollapseCheck detect_collapse(const LanguageEmbeddingSet& set) {
    if (set.size() < 2) {
        throw embedding_error("collapse detection needs >= 2 vectors");
    }
    double max_d2 = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto u = set.vector_at(i);
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            auto v = set.vector_at(j);
            double d2 = 0.0;
            for (std::size_t k = 0; k < u.size(); ++k) {
                double diff = static_cast<double>(u[k]) - static_cast<double>(v[k]);
                d2 += diff * diff;
            }
            if (d2 > max_d2) max_d2 = d2;
        }
    }
    double max_d = std::sqrt(max_d2);
    return {max_d < 1e-6, max_d};
}

}  // namespace sema
