#include "moodbench/textpipe.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string_view>

#include "moodbench/errors.hpp"
#include "builtin_data.hpp"

namespace moodbench::textpipe {

namespace {

// --- minimal UTF-8 handling -------------------------------------------------

struct Decoded {
    std::uint32_t cp;
    int len;
};

Decoded decode_utf8(const std::string& s, std::size_t i) {
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) return {b0, 1};
    auto cont = [&](std::size_t k) {
        return k < s.size() && (byte(k) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1))
        return {static_cast<std::uint32_t>((b0 & 0x1Fu) << 6 | (byte(i + 1) & 0x3Fu)), 2};
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2))
        return {static_cast<std::uint32_t>((b0 & 0x0Fu) << 12 | (byte(i + 1) & 0x3Fu) << 6 |
                                           (byte(i + 2) & 0x3Fu)),
                3};
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3))
        return {static_cast<std::uint32_t>((b0 & 0x07u) << 18 | (byte(i + 1) & 0x3Fu) << 12 |
                                           (byte(i + 2) & 0x3Fu) << 6 | (byte(i + 3) & 0x3Fu)),
                4};
    return {0xFFFD, 1};  // invalid byte: acts as a separator
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_ascii_letter(std::uint32_t cp) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

bool is_letter_cp(std::uint32_t cp) {
    if (is_ascii_letter(cp)) return true;
    if (cp < 0x80) return false;
    if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
    if (cp >= 0x0370 && cp <= 0x03FF) return true;   // Greek
    if (cp >= 0x0400 && cp <= 0x04FF) return true;   // Cyrillic
    if (cp >= 0x0530 && cp <= 0x1FFF) return true;   // broad alphabetic area
    if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols
    if (cp >= 0x2C00 && cp <= 0xD7FF) return true;   // CJK, Hangul, ...
    if (cp >= 0xF900 && cp <= 0xFAFF) return true;
    if (cp >= 0x1F000) return false;                 // emoji and friends
    return cp >= 0x10000 && cp < 0x1F000;
}

bool is_digit_cp(std::uint32_t cp) { return cp >= '0' && cp <= '9'; }

// Simple (one-to-one) case folding for the ranges above.
std::uint32_t fold_cp(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    if (cp == 0x0178) return 0x00FF;
    if ((cp >= 0x0100 && cp <= 0x0137) || (cp >= 0x014A && cp <= 0x0177))
        return (cp % 2 == 0) ? cp + 1 : cp;
    if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E))
        return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 0x20;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
    return cp;
}

// --- lemmatizer rule helpers ------------------------------------------------

bool rule_is_consonant(const std::string& w, std::size_t i) {
    char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !rule_is_consonant(w, i - 1);
    return true;
}

int rule_measure(const std::string& w) {
    std::size_t n = w.size(), i = 0;
    while (i < n && rule_is_consonant(w, i)) ++i;
    int m = 0;
    for (;;) {
        while (i < n && !rule_is_consonant(w, i)) ++i;
        if (i >= n) return m;
        ++m;
        while (i < n && rule_is_consonant(w, i)) ++i;
        if (i >= n) return m;
    }
}

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Collapse a doubled final consonant (running -> runn -> run) or restore a
// silent e (hoping -> hop -> hope). The measure()==1 condition keeps
// multi-syllable bases untouched (visited -> visit, not visite).
std::string adjust_stripped_base(std::string base) {
    std::size_t n = base.size();
    if (n >= 2 && base[n - 1] == base[n - 2] && rule_is_consonant(base, n - 1)) {
        char c = base[n - 1];
        if (c != 'l' && c != 's' && c != 'z') return base.substr(0, n - 1);
        return base;
    }
    if (n >= 2 && rule_measure(base) == 1) {
        char last = base[n - 1];
        bool cvc = rule_is_consonant(base, n - 1) && last != 'w' && last != 'x' &&
                   last != 'y' && !rule_is_consonant(base, n - 2) &&
                   (n == 2 || rule_is_consonant(base, n - 3));
        if (cvc) return base + "e";
    }
    return base;
}

std::string verb_rules(const std::string& t) {
    if (ends_with(t, "ied") && t.size() >= 5) return t.substr(0, t.size() - 3) + "y";
    if (ends_with(t, "ing") && t.size() >= 5)
        return adjust_stripped_base(t.substr(0, t.size() - 3));
    if (ends_with(t, "ed") && t.size() >= 4)
        return adjust_stripped_base(t.substr(0, t.size() - 2));
    return t;
}

std::string noun_rules(const std::string& t) {
    if (ends_with(t, "ies") && t.size() >= 5) return t.substr(0, t.size() - 3) + "y";
    if (ends_with(t, "es") && t.size() >= 4) {
        std::string base = t.substr(0, t.size() - 2);
        if (ends_with(base, "s") || ends_with(base, "x") || ends_with(base, "z") ||
            ends_with(base, "ch") || ends_with(base, "sh"))
            return base;
    }
    if (ends_with(t, "s") && t.size() >= 3 && !ends_with(t, "ss") &&
        !ends_with(t, "us") && !ends_with(t, "is"))
        return t.substr(0, t.size() - 1);
    return t;
}

std::string adj_rules(const std::string& t) {
    if (ends_with(t, "iest") && t.size() >= 6) return t.substr(0, t.size() - 4) + "y";
    if (ends_with(t, "ier") && t.size() >= 5) return t.substr(0, t.size() - 3) + "y";
    if (ends_with(t, "est") && t.size() >= 5)
        return adjust_stripped_base(t.substr(0, t.size() - 3));
    if (ends_with(t, "er") && t.size() >= 4)
        return adjust_stripped_base(t.substr(0, t.size() - 2));
    return t;
}

PosTag tag_from_name(const std::string& name) {
    if (name == "NOUN") return PosTag::Noun;
    if (name == "VERB") return PosTag::Verb;
    if (name == "ADJ") return PosTag::Adj;
    if (name == "ADV") return PosTag::Adv;
    throw Error("unknown tag in lemma dictionary: " + name);
}

std::map<std::pair<std::string, PosTag>, std::string> parse_lemma_entries(
    std::istream& in, const std::string& origin) {
    std::map<std::pair<std::string, PosTag>, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw DictUnavailable(origin + " (bad line " + std::to_string(line_no) + ")");
        std::string surface = line.substr(0, t1);
        std::string tag = line.substr(t1 + 1, t2 - t1 - 1);
        std::string lemma = line.substr(t2 + 1);
        if (surface.empty() || lemma.empty())
            throw DictUnavailable(origin + " (bad line " + std::to_string(line_no) + ")");
        entries[{surface, tag_from_name(tag)}] = lemma;
    }
    return entries;
}

}  // namespace

const char* tag_name(PosTag tag) {
    switch (tag) {
        case PosTag::Noun: return "NOUN";
        case PosTag::Verb: return "VERB";
        case PosTag::Adj: return "ADJ";
        case PosTag::Adv: return "ADV";
        case PosTag::Other: return "OTHER";
    }
    return "OTHER";
}

const char* normalizer_name(Normalizer n) {
    switch (n) {
        case Normalizer::Lemmatize: return "lemmatize";
        case Normalizer::Stem: return "stem";
        case Normalizer::None: return "none";
    }
    return "lemmatize";
}

Normalizer normalizer_from_name(const std::string& name) {
    if (name == "lemmatize") return Normalizer::Lemmatize;
    if (name == "stem") return Normalizer::Stem;
    if (name == "none") return Normalizer::None;
    throw Error("unknown normalizer: " + name);
}

std::vector<std::string> tokenize(const std::string& text) {
    // Decode once so the apostrophe rule can look one codepoint ahead.
    std::vector<std::uint32_t> cps;
    cps.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        Decoded d = decode_utf8(text, i);
        cps.push_back(d.cp);
        i += d.len;
    }

    std::vector<std::string> tokens;
    std::string current;
    bool last_was_letter = false;
    auto flush = [&] {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
        last_was_letter = false;
    };
    for (std::size_t i = 0; i < cps.size(); ++i) {
        std::uint32_t cp = cps[i];
        if (cp == 0x2019) cp = '\'';  // curly apostrophe
        if (is_letter_cp(cp)) {
            append_utf8(current, fold_cp(cp));
            last_was_letter = true;
        } else if (is_digit_cp(cp)) {
            current.push_back(static_cast<char>(cp));
            last_was_letter = false;
        } else if (cp == '\'' && last_was_letter && i + 1 < cps.size() &&
                   is_letter_cp(cps[i + 1])) {
            current.push_back('\'');
            last_was_letter = false;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<TaggedToken> pos_tag(const std::vector<std::string>& tokens) {
    static const struct {
        std::string_view suffix;
        PosTag tag;
    } kSuffixRules[] = {
        {"ly", PosTag::Adv},
        {"ing", PosTag::Verb}, {"ed", PosTag::Verb},
        {"ize", PosTag::Verb}, {"ise", PosTag::Verb},
        {"ness", PosTag::Noun}, {"ment", PosTag::Noun}, {"tion", PosTag::Noun},
        {"ity", PosTag::Noun}, {"er", PosTag::Noun}, {"or", PosTag::Noun},
        {"ous", PosTag::Adj}, {"ful", PosTag::Adj}, {"less", PosTag::Adj},
        {"able", PosTag::Adj}, {"ive", PosTag::Adj}, {"al", PosTag::Adj},
    };

    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (const std::string& token : tokens) {
        PosTag tag = PosTag::Noun;
        if (detail::closed_class_other().count(token)) {
            tag = PosTag::Other;
        } else if (detail::closed_class_verbs().count(token)) {
            tag = PosTag::Verb;
        } else {
            for (const auto& rule : kSuffixRules) {
                if (token.size() >= rule.suffix.size() + 2 && ends_with(token, rule.suffix)) {
                    tag = rule.tag;
                    break;
                }
            }
        }
        out.push_back({token, tag});
    }
    return out;
}

std::vector<TaggedToken> remove_stopwords(const std::vector<TaggedToken>& tagged,
                                          const std::set<std::string>& stopwords) {
    std::vector<TaggedToken> out;
    out.reserve(tagged.size());
    for (const TaggedToken& t : tagged)
        if (!stopwords.count(t.text)) out.push_back(t);
    return out;
}

std::string lemmatize(const std::string& token, PosTag tag, const LemmaDict& dict) {
    if (const std::string* lemma = dict.find(token, tag)) return *lemma;
    switch (tag) {
        case PosTag::Verb: return verb_rules(token);
        case PosTag::Noun: return noun_rules(token);
        case PosTag::Adj: return adj_rules(token);
        default: return token;
    }
}

const std::string* LemmaDict::find(const std::string& surface, PosTag tag) const {
    auto it = entries_.find({surface, tag});
    return it == entries_.end() ? nullptr : &it->second;
}

LemmaDict LemmaDict::builtin() {
    static const LemmaDict dict = [] {
        std::istringstream in(detail::kLemmaDictText);
        LemmaDict d;
        d.entries_ = parse_lemma_entries(in, "<builtin>");
        return d;
    }();
    return dict;
}

LemmaDict LemmaDict::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DictUnavailable(path);
    LemmaDict d;
    d.entries_ = parse_lemma_entries(in, path);
    return d;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = [] {
        std::set<std::string> out;
        std::istringstream in(detail::kStopwordsText);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) out.insert(line);
        return out;
    }();
    return words;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file " + path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::string folded;
        for (std::size_t i = 0; i < line.size();) {
            Decoded d = decode_utf8(line, i);
            append_utf8(folded, fold_cp(d.cp));
            i += d.len;
        }
        out.insert(folded);
    }
    return out;
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
    dict_ = config_.lemma_dict_path.empty() ? LemmaDict::builtin()
                                            : LemmaDict::load(config_.lemma_dict_path);
}

std::string Pipeline::normalize(const std::string& token, PosTag tag) const {
    switch (config_.normalizer) {
        case Normalizer::Lemmatize: return lemmatize(token, tag, dict_);
        case Normalizer::Stem: return stem(token);
        case Normalizer::None: return token;
    }
    return token;
}

Document Pipeline::preprocess(const std::string& text, std::string source_id) const {
    std::vector<TaggedToken> tagged = remove_stopwords(pos_tag(tokenize(text)), config_.stopwords);
    Document doc;
    doc.source_id = std::move(source_id);
    doc.tokens.reserve(tagged.size());
    for (const TaggedToken& t : tagged) doc.tokens.push_back(normalize(t.text, t.tag));
    return doc;
}

}  // namespace moodbench::textpipe
