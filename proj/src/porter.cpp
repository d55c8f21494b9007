// Porter suffix-stripping stemmer, original rule set. Within each step the
// longest matching suffix is the only candidate; if its condition fails the
// step is a no-op.

#include "moodbench/textpipe.hpp"

#include <array>
#include <cstddef>
#include <string_view>

namespace moodbench::textpipe {
namespace {

bool is_consonant(const std::string& w, std::size_t i) {
    char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
    return true;
}

// m in [C](VC)^m[V]
int measure(const std::string& stem) {
    std::size_t n = stem.size();
    std::size_t i = 0;
    while (i < n && is_consonant(stem, i)) ++i;
    int m = 0;
    for (;;) {
        while (i < n && !is_consonant(stem, i)) ++i;
        if (i >= n) return m;
        ++m;
        while (i < n && is_consonant(stem, i)) ++i;
        if (i >= n) return m;
    }
}

bool has_vowel(const std::string& stem) {
    for (std::size_t i = 0; i < stem.size(); ++i)
        if (!is_consonant(stem, i)) return true;
    return false;
}

bool ends_double_consonant(const std::string& stem) {
    std::size_t n = stem.size();
    return n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant(stem, n - 1);
}

// *o: cvc where the final consonant is not w, x or y
bool ends_cvc(const std::string& stem) {
    std::size_t n = stem.size();
    if (n < 3) return false;
    char last = stem[n - 1];
    return is_consonant(stem, n - 3) && !is_consonant(stem, n - 2) &&
           is_consonant(stem, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Rules ordered by suffix length, longest first.
constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"tional", "tion"},
    {"biliti", "ble"},  {"entli", "ent"},   {"ousli", "ous"},
    {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
    {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
    {"ator", "ate"},    {"eli", "e"},
}};

constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
}};

constexpr std::array<std::string_view, 19> kStep4 = {
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion",
    "ism",   "ate",  "iti",  "ous",  "ive",  "ize",  "al",  "er",  "ic",
    "ou",
};

std::string step1a(std::string w) {
    if (ends_with(w, "sses")) return w.substr(0, w.size() - 2);
    if (ends_with(w, "ies")) return w.substr(0, w.size() - 2);
    if (ends_with(w, "ss")) return w;
    if (ends_with(w, "s")) return w.substr(0, w.size() - 1);
    return w;
}

std::string step1b(std::string w) {
    if (ends_with(w, "eed")) {
        std::string stem = w.substr(0, w.size() - 3);
        return measure(stem) > 0 ? stem + "ee" : w;
    }
    std::string base;
    if (ends_with(w, "ed") && has_vowel(w.substr(0, w.size() - 2))) {
        base = w.substr(0, w.size() - 2);
    } else if (ends_with(w, "ing") && has_vowel(w.substr(0, w.size() - 3))) {
        base = w.substr(0, w.size() - 3);
    } else {
        return w;
    }
    if (ends_with(base, "at") || ends_with(base, "bl") || ends_with(base, "iz"))
        return base + "e";
    if (ends_double_consonant(base)) {
        char c = base.back();
        if (c != 'l' && c != 's' && c != 'z') return base.substr(0, base.size() - 1);
        return base;
    }
    if (measure(base) == 1 && ends_cvc(base)) return base + "e";
    return base;
}

std::string step1c(std::string w) {
    if (ends_with(w, "y") && has_vowel(w.substr(0, w.size() - 1)))
        return w.substr(0, w.size() - 1) + "i";
    return w;
}

template <typename Rules>
std::string replace_longest(std::string w, const Rules& rules, int min_measure) {
    for (const Rule& rule : rules) {
        if (!ends_with(w, rule.suffix)) continue;
        std::string stem = w.substr(0, w.size() - rule.suffix.size());
        if (measure(stem) > min_measure)
            return stem + std::string(rule.replacement);
        return w;  // longest match found but condition failed
    }
    return w;
}

std::string step4(std::string w) {
    for (std::string_view suffix : kStep4) {
        if (!ends_with(w, suffix)) continue;
        std::string stem = w.substr(0, w.size() - suffix.size());
        bool ok = measure(stem) > 1;
        if (suffix == "ion")
            ok = ok && !stem.empty() && (stem.back() == 's' || stem.back() == 't');
        return ok ? stem : w;
    }
    return w;
}

std::string step5a(std::string w) {
    if (!ends_with(w, "e")) return w;
    std::string stem = w.substr(0, w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) return stem;
    return w;
}

std::string step5b(std::string w) {
    if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l')
        return w.substr(0, w.size() - 1);
    return w;
}

}  // namespace

std::string stem(const std::string& token) {
    if (token.size() < 3) return token;
    std::string w = step1a(token);
    w = step1b(std::move(w));
    w = step1c(std::move(w));
    w = replace_longest(std::move(w), kStep2, 0);
    w = replace_longest(std::move(w), kStep3, 0);
    w = step4(std::move(w));
    w = step5a(std::move(w));
    w = step5b(std::move(w));
    return w;
}

}  // namespace moodbench::textpipe
