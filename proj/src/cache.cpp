#include "sema/cache.hpp"

#include "sema/embedding_set.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <thread>

namespace sema {
namespace {

constexpr char kMagic[4] = {'S', 'E', 'M', 'B'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

std::uint64_t get_u64(const char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

}  // namespace

EmbeddingCache::EmbeddingCache(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
}

std::filesystem::path EmbeddingCache::record_path(const std::string& model_id,
                                                  const std::string& word) const {
    const std::string key = model_id + '\n' + word;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(key)));
    std::string name(hex, 16);
    return root_ / name.substr(0, 2) / (name + ".emb");
}

std::optional<std::vector<float>> EmbeddingCache::lookup(const std::string& model_id,
                                                         const std::string& word) const {
    const auto path = record_path(model_id, word);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    // layout: magic, version, dim, model_len, model, word_len, word,
    //         meta_len, meta, timestamp, dim x f32 (little-endian)
    if (buf.size() < 12 || std::memcmp(buf.data(), kMagic, 4) != 0) return std::nullopt;
    if (get_u32(buf.data() + 4) != kVersion) return std::nullopt;
    std::uint32_t dim = get_u32(buf.data() + 8);
    std::size_t off = 12;
    auto read_str = [&](std::string& out) -> bool {
        if (off + 8 > buf.size()) return false;
        std::uint64_t len = get_u64(buf.data() + off);
        off += 8;
        if (off + len > buf.size()) return false;
        out.assign(buf.data() + off, len);
        off += len;
        return true;
    };
    std::string stored_model, stored_word, meta;
    if (!read_str(stored_model) || !read_str(stored_word) || !read_str(meta)) return std::nullopt;
    if (stored_model != model_id || stored_word != word) return std::nullopt;  // hash collision
    off += 8;  // timestamp
    if (off + std::size_t(dim) * 4 > buf.size()) return std::nullopt;
    std::vector<float> vec(dim);
    static_assert(sizeof(float) == 4);
    std::memcpy(vec.data(), buf.data() + off, std::size_t(dim) * 4);
    return vec;
}

void EmbeddingCache::store(const std::string& model_id, const std::string& word,
                           std::span<const float> vector,
                           const std::string& provider_meta) const {
    const auto path = record_path(model_id, word);
    std::filesystem::create_directories(path.parent_path());

    std::string buf;
    buf.append(kMagic, 4);
    put_u32(buf, kVersion);
    put_u32(buf, static_cast<std::uint32_t>(vector.size()));
    put_u64(buf, model_id.size());
    buf += model_id;
    put_u64(buf, word.size());
    buf += word;
    put_u64(buf, provider_meta.size());
    buf += provider_meta;
    put_u64(buf, static_cast<std::uint64_t>(
                     std::chrono::duration_cast<std::chrono::seconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count()));
    buf.append(reinterpret_cast<const char*>(vector.data()), vector.size() * 4);

    // unique temp name per thread/process, then atomic rename
    auto tmp = path;
    tmp += ".tmp" + std::to_string(
        std::hash<std::thread::id>{}(std::this_thread::get_id()) & 0xFFFF);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw embedding_error("cannot write cache record: " + tmp.string());
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    std::filesystem::rename(tmp, path);
}

std::size_t EmbeddingCache::entry_count() const {
    std::size_t n = 0;
    if (!std::filesystem::exists(root_)) return 0;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root_)) {
        if (e.is_regular_file() && e.path().extension() == ".emb") ++n;
    }
    return n;
}

std::size_t EmbeddingCache::clear() const {
    std::size_t n = 0;
    if (!std::filesystem::exists(root_)) return 0;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root_)) {
        if (e.is_regular_file() && e.path().extension() == ".emb") {
            std::filesystem::remove(e.path());
            ++n;
        }
    }
    return n;
}

}  // namespace sema
