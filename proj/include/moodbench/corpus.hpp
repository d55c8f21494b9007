#ifndef MOODBENCH_CORPUS_HPP
#define MOODBENCH_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "moodbench/textpipe.hpp"

namespace moodbench::corpus {

struct Post {
    std::string id;
    std::string subreddit;
    std::string title;
    std::string body;
    std::int64_t created_utc = 0;
    std::int64_t score = 0;
    bool operator==(const Post&) const = default;
};

enum class Label { Depressive = 0, NonDepressive = 1 };

enum class LabelSource { LexiconMatch, SubredditGroundTruth, Manual };

const char* label_name(Label label);              // "depression" / "non-depression"
Label label_from_name(const std::string& name);   // throws Error
const char* label_source_name(LabelSource source);
LabelSource label_source_from_name(const std::string& name);

struct LabeledPost {
    Post post;
    Label label;
    LabelSource source;
    bool operator==(const LabeledPost&) const = default;
};

// Lowercase lemma set; membership is exact match.
struct Lexicon {
    std::set<std::string> entries;
    std::string name;
    std::string version;

    bool contains(const std::string& lemma) const { return entries.count(lemma) > 0; }
};

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 42;
};

// JSONL ingestion. Required field: id. Records missing optional fields get
// defaults; duplicate ids are rejected.
std::vector<Post> parse_posts(const std::string& path);
std::vector<Post> parse_posts(std::istream& in);
void serialize_posts(const std::vector<Post>& posts, std::ostream& out);
void serialize_posts(const std::vector<Post>& posts, const std::string& path);

std::vector<LabeledPost> parse_labeled(const std::string& path);
std::vector<LabeledPost> parse_labeled(std::istream& in);
void serialize_labeled(const std::vector<LabeledPost>& posts, std::ostream& out);
void serialize_labeled(const std::vector<LabeledPost>& posts, const std::string& path);

// One lemma per line, '#' comments; entries are lemma-normalized through the
// pipeline so matching happens in the same space as preprocessed posts.
Lexicon load_lexicon(const std::string& path, const textpipe::Pipeline& pipeline);
Lexicon make_lexicon(const std::vector<std::string>& raw_words, std::string name,
                     std::string version, const textpipe::Pipeline& pipeline);
Lexicon builtin_lexicon(const textpipe::Pipeline& pipeline);

struct LabelResult {
    Label label;
    std::vector<std::string> matched;  // first-occurrence order, deduplicated
};

// Depressive iff at least `threshold` distinct lexicon lemmas occur in
// title + " " + body after preprocessing.
LabelResult label_post(const Post& post, const Lexicon& lexicon,
                       const textpipe::Pipeline& pipeline, std::size_t threshold = 1);

// Applies label_post to each post; posts from r/Happy are trusted as
// non-depressive ground truth regardless of lexicon hits.
std::vector<LabeledPost> label_corpus(const std::vector<Post>& posts, const Lexicon& lexicon,
                                      const textpipe::Pipeline& pipeline,
                                      std::size_t threshold = 1);

// Per label: deterministic shuffle, floor(count * train_fraction) to train.
std::pair<std::vector<LabeledPost>, std::vector<LabeledPost>> stratified_split(
    const std::vector<LabeledPost>& corpus, const SplitSpec& spec);

// Desk-scale stand-in corpus. Every depressive post receives 1-4 lexicon
// keywords; with probability `noise` a post carries the other class's signal
// words instead, so perfect accuracy is impossible. Pure function of its
// arguments.
std::vector<LabeledPost> generate_synthetic(std::size_t n_dep, std::size_t n_nondep,
                                            double noise, std::uint64_t seed,
                                            const Lexicon& lexicon,
                                            const textpipe::Pipeline& pipeline);

}  // namespace moodbench::corpus

#endif
