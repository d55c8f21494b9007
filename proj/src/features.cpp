#include "moodbench/features.hpp"

#include <istream>
#include <ostream>

#include "moodbench/errors.hpp"

namespace moodbench::features {

Vocabulary::Vocabulary(std::vector<std::string> sorted_tokens, std::uint32_t min_df)
    : tokens_(std::move(sorted_tokens)), min_df_(min_df) {
    for (std::uint32_t id = 0; id < tokens_.size(); ++id) index_[tokens_[id]] = id;
}

std::optional<std::uint32_t> Vocabulary::id_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t SparseVector::count_at(std::uint32_t id) const {
    for (const auto& [fid, count] : pairs)
        if (fid == id) return count;
    return 0;
}

std::uint64_t SparseVector::total_count() const {
    std::uint64_t total = 0;
    for (const auto& [fid, count] : pairs) total += count;
    return total;
}

Vocabulary build_vocabulary(const std::vector<textpipe::Document>& docs, std::uint32_t min_df) {
    if (min_df < 1) throw Error("min_df must be >= 1");
    std::map<std::string, std::uint32_t> doc_freq;
    for (const auto& doc : docs) {
        std::set<std::string> unique(doc.tokens.begin(), doc.tokens.end());
        for (const auto& token : unique) ++doc_freq[token];
    }
    std::vector<std::string> retained;  // std::map iterates lexicographically
    for (const auto& [token, df] : doc_freq)
        if (df >= min_df) retained.push_back(token);
    if (retained.empty()) throw EmptyVocabulary();
    return Vocabulary(std::move(retained), min_df);
}

SparseVector vectorize(const textpipe::Document& doc, const Vocabulary& vocab) {
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const auto& token : doc.tokens)
        if (auto id = vocab.id_of(token)) ++counts[*id];
    SparseVector vec;
    vec.dim = vocab.size();
    vec.pairs.assign(counts.begin(), counts.end());
    return vec;
}

std::vector<SparseVector> vectorize_corpus(const std::vector<textpipe::Document>& docs,
                                           const Vocabulary& vocab) {
    std::vector<SparseVector> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) out.push_back(vectorize(doc, vocab));
    return out;
}

void serialize_vocabulary(const Vocabulary& vocab, std::ostream& out) {
    for (std::uint32_t id = 0; id < vocab.size(); ++id)
        out << vocab.token_at(id) << '\t' << id << '\n';
}

Vocabulary parse_vocabulary(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw Error("bad vocabulary line: " + line);
        tokens.push_back(line.substr(0, tab));
    }
    return Vocabulary(std::move(tokens));
}

}  // namespace moodbench::features
