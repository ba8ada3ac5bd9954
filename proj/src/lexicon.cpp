#include "sema/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace sema {
namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

bool valid_utf8(const std::string& s) {
    std::size_t i = 0;
    const auto n = s.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra;
        unsigned min_cp;
        if (c < 0x80) { ++i; continue; }
        else if ((c & 0xE0) == 0xC0) { extra = 1; min_cp = 0x80; }
        else if ((c & 0xF0) == 0xE0) { extra = 2; min_cp = 0x800; }
        else if ((c & 0xF8) == 0xF0) { extra = 3; min_cp = 0x10000; }
        else return false;
        unsigned cp = c & (0x3F >> extra);
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= n) return false;
            unsigned char cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += extra + 1;
    }
    return true;
}

VariantList split_variants(const std::string& line, std::size_t line_no,
                           const std::string& language) {
    VariantList out;
    std::string current;
    std::stringstream ss(line);
    while (std::getline(ss, current, '|')) {
        std::string v = trim(current);
        if (v.empty()) {
            throw lexicon_error(language + " line " + std::to_string(line_no) +
                                ": empty variant after trim");
        }
        out.push_back(std::move(v));
    }
    if (!line.empty() && line.back() == '|') {
        throw lexicon_error(language + " line " + std::to_string(line_no) +
                            ": empty variant after trim");
    }
    return out;
}

}  // namespace

std::vector<VariantList> parse_language_file(const std::filesystem::path& path,
                                             const std::string& language) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw lexicon_error("cannot open dataset file: " + path.string());
    }
    std::vector<VariantList> lists;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF
        if (!valid_utf8(line)) {
            throw lexicon_error(path.string() + " line " + std::to_string(line_no) +
                                ": invalid UTF-8");
        }
        if (trim(line).empty()) {
            throw lexicon_error(path.string() + " line " + std::to_string(line_no) +
                                ": blank line");
        }
        lists.push_back(split_variants(line, line_no, language));
    }
    return lists;
}

TranslationLexicon align_lexicon(
    const std::vector<std::pair<std::string, std::vector<VariantList>>>& per_language_lists,
    const std::string& dataset_id) {
    if (per_language_lists.size() < 2) {
        throw lexicon_error("align_lexicon requires at least 2 languages, got " +
                            std::to_string(per_language_lists.size()));
    }
    TranslationLexicon lex;
    lex.dataset_id = dataset_id;
    std::unordered_set<std::string> seen;
    const std::size_t m = per_language_lists.front().second.size();
    for (const auto& [lang, lists] : per_language_lists) {
        if (!seen.insert(lang).second) {
            throw lexicon_error("duplicate language code: " + lang);
        }
        if (lists.size() != m) {
            throw lexicon_error("line-count mismatch: " + per_language_lists.front().first +
                                " has " + std::to_string(m) + " lines, " + lang + " has " +
                                std::to_string(lists.size()));
        }
        lex.languages.push_back(lang);
    }
    lex.entries.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        lex.entries[i].concept_index = i;
        for (const auto& [lang, lists] : per_language_lists) {
            lex.entries[i].forms[lang] = lists[i];
        }
    }
    return lex;
}

ExpandedPairSet expand_meaning_variants(const TranslationLexicon& lexicon) {
    ExpandedPairSet out;
    const auto& langs = lexicon.languages;
    for (const auto& entry : lexicon.entries) {
        // pairwise cross-products per unordered language pair
        for (std::size_t a = 0; a < langs.size(); ++a) {
            for (std::size_t b = a + 1; b < langs.size(); ++b) {
                const auto& va = entry.forms.at(langs[a]);
                const auto& vb = entry.forms.at(langs[b]);
                for (const auto& wa : va) {
                    for (const auto& wb : vb) {
                        out.pairs.push_back({langs[a], wa, langs[b], wb, entry.concept_index});
                    }
                }
                out.pair_counts[{langs[a], langs[b]}] += va.size() * vb.size();
            }
        }
        // all-language tuples (odometer over variant indices)
        std::vector<std::size_t> idx(langs.size(), 0);
        for (;;) {
            ExpandedTuple t;
            t.concept_index = entry.concept_index;
            for (std::size_t l = 0; l < langs.size(); ++l) {
                t.words.push_back(entry.forms.at(langs[l])[idx[l]]);
            }
            out.tuples.push_back(std::move(t));
            std::size_t l = 0;
            while (l < langs.size()) {
                if (++idx[l] < entry.forms.at(langs[l]).size()) break;
                idx[l] = 0;
                ++l;
            }
            if (l == langs.size()) break;
        }
    }
    return out;
}

std::vector<std::string> unique_words(const TranslationLexicon& lexicon,
                                      const std::string& language) {
    if (std::find(lexicon.languages.begin(), lexicon.languages.end(), language) ==
        lexicon.languages.end()) {
        throw lexicon_error("unknown language code: " + language);
    }
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& entry : lexicon.entries) {
        for (const auto& w : entry.forms.at(language)) {
            if (seen.insert(w).second) out.push_back(w);
        }
    }
    return out;
}

std::string serialize_language(const TranslationLexicon& lexicon,
                               const std::string& language) {
    std::string out;
    for (const auto& entry : lexicon.entries) {
        const auto& vs = entry.forms.at(language);
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i) out += '|';
            out += vs[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace sema
