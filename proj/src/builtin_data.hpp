#ifndef MOODBENCH_BUILTIN_DATA_HPP
#define MOODBENCH_BUILTIN_DATA_HPP

#include <set>
#include <string>

// Bundled defaults, compiled in so the library works without any data files.
// The copies under data/ carry the same content; unit tests keep them in sync.
namespace moodbench::detail {

extern const char* const kStopwordsText;   // one word per line, 127 entries
extern const char* const kLemmaDictText;   // surface<TAB>TAG<TAB>lemma
extern const char* const kLexiconText;     // one keyword per line, '#' comments

// Closed-class tables for the tagger. Fixed, independent of any loaded
// lemma dictionary.
const std::set<std::string>& closed_class_other();
const std::set<std::string>& closed_class_verbs();

}  // namespace moodbench::detail

#endif
