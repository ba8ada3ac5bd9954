#pragma once

#include "sema/cache.hpp"
#include "sema/embedding_set.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sema {

class provider_error : public embedding_error {
public:
    using embedding_error::embedding_error;
};

struct ModelSpec {
    enum class Kind { http_api, file_import };

    std::string model_id;
    Kind kind = Kind::http_api;
    // http_api: OpenAI-compatible embeddings endpoint, e.g.
    // https://host/v1/embeddings; credential read from auth_env_var.
    std::string endpoint;
    std::string auth_env_var;
    // file_import: path or template with a {lang} placeholder.
    std::string source_path;
    std::optional<int> dimension_hint;

    int batch_size = 64;
    int max_attempts = 3;
    double backoff_initial_s = 1.0;

    std::filesystem::path resolve_source(const std::string& language) const;
};

struct FetchStats {
    std::size_t cache_hits = 0;
    std::size_t fetched = 0;
    std::size_t requests = 0;
};

/// Resolve each word from the cache or a batched POST against the endpoint;
/// response vectors are re-matched to request order by index. Newly fetched
/// vectors are written back to the cache.
LanguageEmbeddingSet fetch_embeddings(const ModelSpec& spec,
                                      const std::vector<std::string>& words,
                                      const std::string& language,
                                      const EmbeddingCache& cache,
                                      FetchStats* stats = nullptr);

/// Load a line-record embedding file: word, TAB, comma-separated floats.
/// When `required_words` is given the result is restricted to exactly that
/// vocabulary and any missing word is an error.
LanguageEmbeddingSet import_embeddings(const std::filesystem::path& path,
                                       const std::string& model_id,
                                       const std::string& language,
                                       const std::vector<std::string>* required_words = nullptr);

/// Dispatch on spec.kind; the single entry point used by the pipeline.
LanguageEmbeddingSet acquire_embeddings(const ModelSpec& spec,
                                        const std::vector<std::string>& words,
                                        const std::string& language,
                                        const EmbeddingCache& cache,
                                        FetchStats* stats = nullptr);

}  // namespace sema
