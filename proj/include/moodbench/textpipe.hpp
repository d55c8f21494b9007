#ifndef MOODBENCH_TEXTPIPE_HPP
#define MOODBENCH_TEXTPIPE_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace moodbench::textpipe {

// Coarse tagset: the only downstream consumer is the lemmatizer.
enum class PosTag { Noun = 0, Verb = 1, Adj = 2, Adv = 3, Other = 4 };

const char* tag_name(PosTag tag);

struct TaggedToken {
    std::string text;
    PosTag tag;
    bool operator==(const TaggedToken&) const = default;
};

// Pipeline output: normalized tokens in source order, stopwords removed.
struct Document {
    std::vector<std::string> tokens;
    std::string source_id;
};

// Exact (surface, tag) lookup table, regular entries and irregular
// exceptions merged. File format: surface<TAB>TAG<TAB>lemma, '#' comments.
class LemmaDict {
  public:
    static LemmaDict builtin();
    static LemmaDict load(const std::string& path);  // throws DictUnavailable

    const std::string* find(const std::string& surface, PosTag tag) const;
    const std::map<std::pair<std::string, PosTag>, std::string>& entries() const {
        return entries_;
    }

  private:
    std::map<std::pair<std::string, PosTag>, std::string> entries_;
};

enum class Normalizer { Lemmatize, Stem, None };

const char* normalizer_name(Normalizer n);
Normalizer normalizer_from_name(const std::string& name);  // throws Error

const std::set<std::string>& default_stopwords();
std::set<std::string> load_stopwords(const std::string& path);  // throws IoError

struct PipelineConfig {
    Normalizer normalizer = Normalizer::Lemmatize;
    std::set<std::string> stopwords = default_stopwords();
    std::string lemma_dict_path;  // empty = bundled dictionary
};

// Splits on anything that is not a letter, digit, or letter-flanked
// apostrophe; lowercases. Never emits an empty token.
std::vector<std::string> tokenize(const std::string& text);

// Closed-class lookup first, then suffix rules in fixed priority order,
// fallback Noun. Length- and order-preserving.
std::vector<TaggedToken> pos_tag(const std::vector<std::string>& tokens);

std::vector<TaggedToken> remove_stopwords(const std::vector<TaggedToken>& tagged,
                                          const std::set<std::string>& stopwords);

// Porter suffix stripping, original rule set. Tokens shorter than three
// characters are returned unchanged.
std::string stem(const std::string& token);

// Dictionary lookup first, then tag-conditioned rules, fallback unchanged.
std::string lemmatize(const std::string& token, PosTag tag, const LemmaDict& dict);

// Immutable once constructed; safe to share across threads.
class Pipeline {
  public:
    explicit Pipeline(PipelineConfig config);
    Pipeline() : Pipeline(PipelineConfig{}) {}

    Document preprocess(const std::string& text, std::string source_id = "") const;
    std::string normalize(const std::string& token, PosTag tag) const;

    const PipelineConfig& config() const { return config_; }
    const std::set<std::string>& stopwords() const { return config_.stopwords; }
    const LemmaDict& dict() const { return dict_; }

  private:
    PipelineConfig config_;
    LemmaDict dict_;
};

}  // namespace moodbench::textpipe

#endif
