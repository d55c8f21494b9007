#ifndef MOODBENCH_FEATURES_HPP
#define MOODBENCH_FEATURES_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moodbench/textpipe.hpp"

namespace moodbench::features {

// Token -> feature id, ids contiguous in lexicographic token order.
// Built from training documents only.
class Vocabulary {
  public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<std::string> sorted_tokens, std::uint32_t min_df = 1);

    std::uint32_t size() const { return static_cast<std::uint32_t>(tokens_.size()); }
    std::optional<std::uint32_t> id_of(const std::string& token) const;
    const std::string& token_at(std::uint32_t id) const { return tokens_[id]; }
    const std::vector<std::string>& tokens() const { return tokens_; }
    std::uint32_t min_df() const { return min_df_; }

    bool operator==(const Vocabulary&) const = default;

  private:
    std::vector<std::string> tokens_;              // id -> token
    std::map<std::string, std::uint32_t> index_;   // token -> id
    std::uint32_t min_df_ = 1;
};

// Word counts, (id, count) pairs with strictly increasing ids.
struct SparseVector {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::uint32_t dim = 0;

    std::uint32_t count_at(std::uint32_t id) const;
    std::uint64_t total_count() const;
    bool operator==(const SparseVector&) const = default;
};

// Retains tokens whose document frequency is >= min_df.
Vocabulary build_vocabulary(const std::vector<textpipe::Document>& docs, std::uint32_t min_df = 1);

SparseVector vectorize(const textpipe::Document& doc, const Vocabulary& vocab);
std::vector<SparseVector> vectorize_corpus(const std::vector<textpipe::Document>& docs,
                                           const Vocabulary& vocab);

// token<TAB>id lines, sorted by id.
void serialize_vocabulary(const Vocabulary& vocab, std::ostream& out);
Vocabulary parse_vocabulary(std::istream& in);

}  // namespace moodbench::features

#endif
