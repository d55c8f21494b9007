#include "moodbench/corpus.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "moodbench/errors.hpp"
#include "moodbench/rng.hpp"
#include "builtin_data.hpp"

namespace moodbench::corpus {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string basename_of(const std::string& path) {
    std::size_t pos = path.find_last_of("/\\");
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

Post post_from_json(const json& j, std::size_t line_no) {
    if (!j.is_object()) throw MalformedRecord(line_no, "not a JSON object");
    if (!j.contains("id") || !j.at("id").is_string() || j.at("id").get<std::string>().empty())
        throw MalformedRecord(line_no, "missing id");
    if (!j.contains("title") && !j.contains("selftext"))
        throw MalformedRecord(line_no, "needs title or selftext");

    Post post;
    post.id = j.at("id").get<std::string>();
    auto read_string = [&](const char* key, std::string& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_string()) throw MalformedRecord(line_no, std::string(key) + " not a string");
        out = j.at(key).get<std::string>();
    };
    auto read_int = [&](const char* key, std::int64_t& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number_integer() && !j.at(key).is_number_unsigned())
            throw MalformedRecord(line_no, std::string(key) + " not an integer");
        out = j.at(key).get<std::int64_t>();
    };
    read_string("subreddit", post.subreddit);
    read_string("title", post.title);
    read_string("selftext", post.body);
    read_int("created_utc", post.created_utc);
    read_int("score", post.score);
    if (post.created_utc < 0) throw MalformedRecord(line_no, "created_utc < 0");
    return post;
}

ordered_json post_to_json(const Post& post) {
    ordered_json j;
    j["id"] = post.id;
    j["subreddit"] = post.subreddit;
    j["title"] = post.title;
    j["selftext"] = post.body;
    j["created_utc"] = post.created_utc;
    j["score"] = post.score;
    return j;
}

template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded()) throw MalformedRecord(line_no, "invalid JSON");
        fn(j, line_no);
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream create_or_throw(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

// Word pools for the synthetic corpus. None of these normalizes into the
// bundled lexicon; the depressive signal comes from injected keywords plus
// the flavored background.
constexpr std::array<std::string_view, 50> kNeutralPool = {
    "today",   "morning", "week",     "month",   "coffee",   "school",
    "work",    "office",  "music",    "game",    "movie",    "book",
    "phone",   "computer","city",     "street",  "road",     "weather",
    "window",  "garden",  "kitchen",  "train",   "bus",      "paper",
    "room",    "light",   "water",    "table",   "chair",    "store",
    "market",  "walk",    "plan",     "idea",    "update",   "note",
    "post",    "photo",   "video",    "question","answer",   "thread",
    "topic",   "news",    "weekend",  "dinner",  "lunch",    "breakfast",
    "team",    "project",
};

constexpr std::array<std::string_view, 30> kDepressiveFlavor = {
    "night",    "dark",     "bed",        "silence",  "rain",     "winter",
    "shadow",   "ceiling",  "pillow",     "struggle", "therapy",  "doctor",
    "medication","appointment","mess",    "pressure", "deadline", "bills",
    "debt",     "argument", "breakup",    "funeral",  "hospital", "pain",
    "headache", "fatigue",  "burnout",    "isolation","regret",   "failure",
};

constexpr std::array<std::string_view, 30> kNonDepressiveFlavor = {
    "sunshine", "friends",  "celebration", "wedding",  "vacation",  "laughing",
    "smile",    "party",    "success",     "proud",    "excited",   "grateful",
    "beautiful","wonderful","amazing",     "fantastic","joy",       "love",
    "family",   "puppy",    "beach",       "achievement","promotion","victory",
    "cheerful", "delighted","thrilled",    "blessed",  "awesome",   "graduation",
};

constexpr std::array<std::string_view, 8> kGlue = {
    "the", "and", "i", "to", "of", "it", "was", "on",
};

// Stream-space tags keep the per-label and per-post rng streams disjoint
// from other modules that derive from the same user seed.
constexpr std::uint64_t kSplitStream = 0x73706c6900000000ULL;  // "spli"
constexpr std::uint64_t kSynthStream = 0x73796e7400000000ULL;  // "synt"

}  // namespace

const char* label_name(Label label) {
    return label == Label::Depressive ? "depression" : "non-depression";
}

Label label_from_name(const std::string& name) {
    if (name == "depression") return Label::Depressive;
    if (name == "non-depression") return Label::NonDepressive;
    throw Error("unknown label: " + name);
}

const char* label_source_name(LabelSource source) {
    switch (source) {
        case LabelSource::LexiconMatch: return "lexicon_match";
        case LabelSource::SubredditGroundTruth: return "subreddit_ground_truth";
        case LabelSource::Manual: return "manual";
    }
    return "manual";
}

LabelSource label_source_from_name(const std::string& name) {
    if (name == "lexicon_match") return LabelSource::LexiconMatch;
    if (name == "subreddit_ground_truth") return LabelSource::SubredditGroundTruth;
    if (name == "manual") return LabelSource::Manual;
    throw Error("unknown label source: " + name);
}

std::vector<Post> parse_posts(std::istream& in) {
    std::vector<Post> posts;
    std::set<std::string> seen;
    for_each_record(in, [&](const json& j, std::size_t line_no) {
        Post post = post_from_json(j, line_no);
        if (!seen.insert(post.id).second) throw DuplicateId(post.id);
        posts.push_back(std::move(post));
    });
    return posts;
}

std::vector<Post> parse_posts(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_posts(in);
}

void serialize_posts(const std::vector<Post>& posts, std::ostream& out) {
    for (const Post& post : posts) out << post_to_json(post).dump() << '\n';
}

void serialize_posts(const std::vector<Post>& posts, const std::string& path) {
    std::ofstream out = create_or_throw(path);
    serialize_posts(posts, out);
}

std::vector<LabeledPost> parse_labeled(std::istream& in) {
    std::vector<LabeledPost> posts;
    std::set<std::string> seen;
    for_each_record(in, [&](const json& j, std::size_t line_no) {
        LabeledPost lp;
        lp.post = post_from_json(j, line_no);
        if (!seen.insert(lp.post.id).second) throw DuplicateId(lp.post.id);
        if (!j.contains("label") || !j.at("label").is_string())
            throw MalformedRecord(line_no, "missing label");
        lp.label = label_from_name(j.at("label").get<std::string>());
        lp.source = LabelSource::Manual;
        if (j.contains("label_source"))
            lp.source = label_source_from_name(j.at("label_source").get<std::string>());
        posts.push_back(std::move(lp));
    });
    return posts;
}

std::vector<LabeledPost> parse_labeled(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_labeled(in);
}

void serialize_labeled(const std::vector<LabeledPost>& posts, std::ostream& out) {
    for (const LabeledPost& lp : posts) {
        ordered_json j = post_to_json(lp.post);
        j["label"] = label_name(lp.label);
        j["label_source"] = label_source_name(lp.source);
        out << j.dump() << '\n';
    }
}

void serialize_labeled(const std::vector<LabeledPost>& posts, const std::string& path) {
    std::ofstream out = create_or_throw(path);
    serialize_labeled(posts, out);
}

Lexicon make_lexicon(const std::vector<std::string>& raw_words, std::string name,
                     std::string version, const textpipe::Pipeline& pipeline) {
    Lexicon lex;
    lex.name = std::move(name);
    lex.version = std::move(version);
    for (const std::string& word : raw_words) {
        for (const auto& tagged : textpipe::pos_tag(textpipe::tokenize(word))) {
            std::string entry = pipeline.normalize(tagged.text, tagged.tag);
            if (!entry.empty()) lex.entries.insert(std::move(entry));
        }
    }
    if (lex.entries.empty()) throw EmptyLexicon();
    return lex;
}

Lexicon load_lexicon(const std::string& path, const textpipe::Pipeline& pipeline) {
    std::ifstream in = open_or_throw(path);
    std::ostringstream raw;
    raw << in.rdbuf();
    std::string content = raw.str();

    std::vector<std::string> words;
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.push_back(line);
    }
    return make_lexicon(words, basename_of(path),
                        hex64(fnv1a64(content.data(), content.size())), pipeline);
}

Lexicon builtin_lexicon(const textpipe::Pipeline& pipeline) {
    std::vector<std::string> words;
    std::istringstream lines(detail::kLexiconText);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        words.push_back(line);
    }
    std::string_view text = detail::kLexiconText;
    return make_lexicon(words, "builtin", hex64(fnv1a64(text.data(), text.size())), pipeline);
}

LabelResult label_post(const Post& post, const Lexicon& lexicon,
                       const textpipe::Pipeline& pipeline, std::size_t threshold) {
    if (lexicon.entries.empty()) throw EmptyLexicon();
    textpipe::Document doc = pipeline.preprocess(post.title + " " + post.body, post.id);
    LabelResult result;
    std::set<std::string> seen;
    for (const std::string& lemma : doc.tokens) {
        if (lexicon.contains(lemma) && seen.insert(lemma).second)
            result.matched.push_back(lemma);
    }
    result.label = result.matched.size() >= threshold ? Label::Depressive
                                                      : Label::NonDepressive;
    return result;
}

std::vector<LabeledPost> label_corpus(const std::vector<Post>& posts, const Lexicon& lexicon,
                                      const textpipe::Pipeline& pipeline,
                                      std::size_t threshold) {
    std::vector<LabeledPost> out;
    out.reserve(posts.size());
    for (const Post& post : posts) {
        if (post.subreddit == "Happy") {
            out.push_back({post, Label::NonDepressive, LabelSource::SubredditGroundTruth});
        } else {
            LabelResult r = label_post(post, lexicon, pipeline, threshold);
            out.push_back({post, r.label, LabelSource::LexiconMatch});
        }
    }
    return out;
}

std::pair<std::vector<LabeledPost>, std::vector<LabeledPost>> stratified_split(
    const std::vector<LabeledPost>& corpus, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw Error("train_fraction must be in (0,1)");

    std::array<std::vector<std::size_t>, 2> by_label;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        by_label[static_cast<int>(corpus[i].label)].push_back(i);
    if (by_label[0].empty()) throw MissingClass(label_name(Label::Depressive));
    if (by_label[1].empty()) throw MissingClass(label_name(Label::NonDepressive));

    std::vector<LabeledPost> train, test;
    for (int c = 0; c < 2; ++c) {
        auto& idx = by_label[c];
        Rng rng = Rng::derive(spec.seed, kSplitStream | static_cast<std::uint64_t>(c));
        rng.shuffle(idx);
        auto n_train = static_cast<std::size_t>(
            std::floor(static_cast<double>(idx.size()) * spec.train_fraction));
        for (std::size_t k = 0; k < idx.size(); ++k)
            (k < n_train ? train : test).push_back(corpus[idx[k]]);
    }
    return {std::move(train), std::move(test)};
}

std::vector<LabeledPost> generate_synthetic(std::size_t n_dep, std::size_t n_nondep,
                                            double noise, std::uint64_t seed,
                                            const Lexicon& lexicon,
                                            const textpipe::Pipeline& pipeline) {
    if (n_dep < 1 || n_nondep < 1) throw Error("synthetic class counts must be >= 1");
    if (lexicon.entries.empty()) throw EmptyLexicon();

    // Only keywords that survive re-normalization can guarantee a lexicon hit.
    std::vector<std::string> keywords;
    for (const std::string& entry : lexicon.entries) {
        for (const auto& tagged : textpipe::pos_tag(textpipe::tokenize(entry))) {
            if (lexicon.contains(pipeline.normalize(tagged.text, tagged.tag))) {
                keywords.push_back(entry);
                break;
            }
        }
    }
    if (keywords.empty()) throw EmptyLexicon();

    const std::size_t total = n_dep + n_nondep;
    std::vector<LabeledPost> out;
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        const Label label = i < n_dep ? Label::Depressive : Label::NonDepressive;
        Rng rng = Rng::derive(seed, kSynthStream | i);

        const bool noised = rng.unit() < noise;
        const bool dep_signal = (label == Label::Depressive) != noised;
        const std::span<const std::string_view> flavor =
            dep_signal ? std::span<const std::string_view>(kDepressiveFlavor)
                       : std::span<const std::string_view>(kNonDepressiveFlavor);

        auto draw_word = [&]() -> std::string {
            double r = rng.unit();
            if (r < 0.5) return std::string(kNeutralPool[rng.index(kNeutralPool.size())]);
            if (r < 0.8) return std::string(flavor[rng.index(flavor.size())]);
            return std::string(kGlue[rng.index(kGlue.size())]);
        };

        std::vector<std::string> words;
        const std::size_t body_len = 25 + rng.index(36);
        for (std::size_t k = 0; k < body_len; ++k) words.push_back(draw_word());
        if (dep_signal) {
            const std::size_t n_keywords = 1 + rng.index(4);
            for (std::size_t k = 0; k < n_keywords; ++k) {
                std::size_t pos = rng.index(words.size() + 1);
                words.insert(words.begin() + static_cast<std::ptrdiff_t>(pos),
                             keywords[rng.index(keywords.size())]);
            }
        }

        std::string body;
        std::size_t sentence_break = 6 + rng.index(6);
        for (std::size_t k = 0; k < words.size(); ++k) {
            if (!body.empty()) body += ' ';
            body += words[k];
            if (k + 1 == sentence_break && k + 1 < words.size()) {
                body += '.';
                sentence_break += 6 + rng.index(6);
            }
        }
        body += '.';

        std::string title;
        const std::size_t title_len = 3 + rng.index(5);
        for (std::size_t k = 0; k < title_len; ++k) {
            if (!title.empty()) title += ' ';
            title += draw_word();
        }

        char idbuf[32];
        std::snprintf(idbuf, sizeof idbuf, "synth-%06zu", i);

        Post post;
        post.id = idbuf;
        post.subreddit = "synthetic";
        post.title = std::move(title);
        post.body = std::move(body);
        post.created_utc = 1640995200 + static_cast<std::int64_t>(i) * 3600;
        post.score = static_cast<std::int64_t>(rng.below(5000));
        out.push_back({std::move(post), label, LabelSource::Manual});
    }
    return out;
}

}  // namespace moodbench::corpus
