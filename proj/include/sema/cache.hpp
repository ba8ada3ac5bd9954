#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sema {

/// Persistent per-(model, word) embedding store. One binary record per key
/// under a content-addressed path; writes go through a temp file and rename
/// so concurrent fetches of disjoint word sets cannot corrupt entries.
class EmbeddingCache {
public:
    explicit EmbeddingCache(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    std::optional<std::vector<float>> lookup(const std::string& model_id,
                                             const std::string& word) const;

    void store(const std::string& model_id, const std::string& word,
               std::span<const float> vector, const std::string& provider_meta) const;

    /// Number of records on disk (all models).
    std::size_t entry_count() const;

    /// Remove every record. Returns the number removed.
    std::size_t clear() const;

private:
    std::filesystem::path record_path(const std::string& model_id,
                                      const std::string& word) const;
    std::filesystem::path root_;
};

}  // namespace sema
