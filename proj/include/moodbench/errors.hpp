#ifndef MOODBENCH_ERRORS_HPP
#define MOODBENCH_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace moodbench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

struct MalformedRecord : Error {
    std::size_t line_no;
    explicit MalformedRecord(std::size_t line, const std::string& detail = "")
        : Error("malformed record at line " + std::to_string(line) +
                (detail.empty() ? "" : ": " + detail)),
          line_no(line) {}
};

struct DuplicateId : Error {
    std::string id;
    explicit DuplicateId(std::string post_id)
        : Error("duplicate post id: " + post_id), id(std::move(post_id)) {}
};

struct EmptyLexicon : Error {
    EmptyLexicon() : Error("lexicon has no entries") {}
};

struct MissingClass : Error {
    std::string label_name;
    explicit MissingClass(std::string label)
        : Error("corpus has no posts labeled " + label),
          label_name(std::move(label)) {}
};

struct DictUnavailable : Error {
    explicit DictUnavailable(const std::string& path)
        : Error("lemma dictionary unavailable: " + path) {}
};

struct EmptyVocabulary : Error {
    EmptyVocabulary() : Error("no token reaches the document-frequency threshold") {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)) {}
};

struct EmptyTestSet : Error {
    EmptyTestSet() : Error("empty test set") {}
};

struct VersionMismatch : Error {
    std::uint32_t found;
    explicit VersionMismatch(std::uint32_t v)
        : Error("unsupported model format version " + std::to_string(v)), found(v) {}
};

struct CorruptModel : Error {
    explicit CorruptModel(const std::string& detail)
        : Error("corrupt model file: " + detail) {}
};

}  // namespace moodbench

#endif
