#include "sema/providers.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <unordered_map>

namespace sema {
namespace {

using nlohmann::json;

struct ParsedUrl {
    std::string base;  // scheme://host[:port]
    std::string path;
};

ParsedUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw provider_error("endpoint is not a URL: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::vector<std::vector<float>> post_batch(const ModelSpec& spec,
                                           const std::vector<std::string>& batch,
                                           const std::string& credential) {
    const auto url = split_url(spec.endpoint);
    json body = {{"model", spec.model_id}, {"input", batch}};

    std::string last_error;
    for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
        if (attempt > 0) {
            auto delay = spec.backoff_initial_s * std::pow(2.0, attempt - 1);
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        }
        httplib::Client client(url.base);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (!credential.empty()) headers.emplace("Authorization", "Bearer " + credential);
        auto res = client.Post(url.path, headers, body.dump(), "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status) + ": " + res->body;
            continue;
        }
        json parsed;
        try {
            parsed = json::parse(res->body);
        } catch (const json::exception& e) {
            last_error = std::string("bad JSON response: ") + e.what();
            continue;
        }
        if (!parsed.contains("data") || !parsed["data"].is_array()) {
            last_error = "response missing data array";
            continue;
        }
        // re-match response order to request order by index
        std::vector<std::vector<float>> vectors(batch.size());
        std::vector<bool> filled(batch.size(), false);
        for (const auto& item : parsed["data"]) {
            std::size_t idx = item.at("index").get<std::size_t>();
            if (idx >= batch.size()) {
                throw provider_error("provider returned out-of-range index " +
                                     std::to_string(idx));
            }
            vectors[idx] = item.at("embedding").get<std::vector<float>>();
            filled[idx] = true;
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (!filled[i]) {
                throw provider_error("incomplete batch: provider returned " +
                                     std::to_string(parsed["data"].size()) +
                                     " vectors for " + std::to_string(batch.size()) +
                                     " inputs (missing \"" + batch[i] + "\")");
            }
        }
        return vectors;
    }
    throw provider_error("embedding request failed after " +
                         std::to_string(spec.max_attempts) + " attempts: " + last_error);
}

}  // namespace

std::filesystem::path ModelSpec::resolve_source(const std::string& language) const {
    std::string p = source_path;
    auto pos = p.find("{lang}");
    if (pos != std::string::npos) p.replace(pos, 6, language);
    return p;
}

LanguageEmbeddingSet fetch_embeddings(const ModelSpec& spec,
                                      const std::vector<std::string>& words,
                                      const std::string& language,
                                      const EmbeddingCache& cache, FetchStats* stats) {
    if (words.empty()) throw provider_error("fetch_embeddings: empty word set");
    std::string credential;
    if (!spec.auth_env_var.empty()) {
        const char* v = std::getenv(spec.auth_env_var.c_str());
        if (!v) {
            throw provider_error("credential environment variable not set: " +
                                 spec.auth_env_var);
        }
        credential = v;
    }

    std::vector<std::vector<float>> vectors(words.size());
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (auto hit = cache.lookup(spec.model_id, words[i])) {
            vectors[i] = std::move(*hit);
            if (stats) ++stats->cache_hits;
        } else {
            missing.push_back(i);
        }
    }

    const std::size_t batch_size = spec.batch_size > 0 ? std::size_t(spec.batch_size) : 64;
    for (std::size_t start = 0; start < missing.size(); start += batch_size) {
        const std::size_t end = std::min(missing.size(), start + batch_size);
        std::vector<std::string> batch;
        for (std::size_t k = start; k < end; ++k) batch.push_back(words[missing[k]]);
        auto fetched = post_batch(spec, batch, credential);
        if (stats) ++stats->requests;
        for (std::size_t k = start; k < end; ++k) {
            auto& vec = fetched[k - start];
            cache.store(spec.model_id, words[missing[k]], vec, spec.endpoint);
            vectors[missing[k]] = std::move(vec);
            if (stats) ++stats->fetched;
        }
    }

    auto set = LanguageEmbeddingSet(spec.model_id, language, words, std::move(vectors));
    if (spec.dimension_hint && std::size_t(*spec.dimension_hint) != set.dimension()) {
        throw provider_error("dimension mismatch: provider returned " +
                             std::to_string(set.dimension()) + ", expected " +
                             std::to_string(*spec.dimension_hint));
    }
    return set;
}

LanguageEmbeddingSet import_embeddings(const std::filesystem::path& path,
                                       const std::string& model_id,
                                       const std::string& language,
                                       const std::vector<std::string>* required_words) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw provider_error("cannot open embedding file: " + path.string());

    std::unordered_map<std::string, std::vector<float>> records;
    std::vector<std::string> order;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            throw provider_error(path.string() + " line " + std::to_string(line_no) +
                                 ": malformed record (expected word<TAB>floats)");
        }
        std::string word = line.substr(0, tab);
        std::vector<float> vec;
        const char* p = line.data() + tab + 1;
        const char* lend = line.data() + line.size();
        while (p < lend) {
            float v;
            auto [next, ec] = std::from_chars(p, lend, v);
            if (ec != std::errc()) {
                throw provider_error(path.string() + " line " + std::to_string(line_no) +
                                     ": malformed float");
            }
            vec.push_back(v);
            p = next;
            if (p < lend) {
                if (*p != ',') {
                    throw provider_error(path.string() + " line " + std::to_string(line_no) +
                                         ": expected ',' between floats");
                }
                ++p;
            }
        }
        if (vec.empty()) {
            throw provider_error(path.string() + " line " + std::to_string(line_no) +
                                 ": record has no vector");
        }
        auto it = records.find(word);
        if (it != records.end()) {
            if (it->second != vec) {
                throw provider_error(path.string() + " line " + std::to_string(line_no) +
                                     ": duplicate word \"" + word +
                                     "\" with differing vectors");
            }
            continue;  // identical duplicate, deduplicated
        }
        records.emplace(word, std::move(vec));
        order.push_back(word);
    }
    if (records.empty()) throw provider_error("empty embedding file: " + path.string());

    const std::vector<std::string>& vocab = required_words ? *required_words : order;
    std::vector<std::vector<float>> vectors;
    vectors.reserve(vocab.size());
    for (const auto& w : vocab) {
        auto it = records.find(w);
        if (it == records.end()) {
            throw provider_error("no embedding for word \"" + w + "\" in " + path.string());
        }
        vectors.push_back(it->second);
    }
    return LanguageEmbeddingSet(model_id, language, vocab, std::move(vectors));
}

LanguageEmbeddingSet acquire_embeddings(const ModelSpec& spec,
                                        const std::vector<std::string>& words,
                                        const std::string& language,
                                        const EmbeddingCache& cache, FetchStats* stats) {
    if (spec.kind == ModelSpec::Kind::file_import) {
        return import_embeddings(spec.resolve_source(language), spec.model_id, language,
                                 &words);
    }
    return fetch_embeddings(spec, words, language, cache, stats);
}

}  // namespace sema
