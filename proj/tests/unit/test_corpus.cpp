#include <doctest.h>

#include <fstream>
#include <sstream>

#include "moodbench/corpus.hpp"
#include "moodbench/errors.hpp"

using namespace moodbench;
using namespace moodbench::corpus;

namespace {

const textpipe::Pipeline& pipeline() {
    static const textpipe::Pipeline p;
    return p;
}

Post make_post(std::string id, std::string title, std::string body = "",
               std::string subreddit = "depression") {
    Post post;
    post.id = std::move(id);
    post.subreddit = std::move(subreddit);
    post.title = std::move(title);
    post.body = std::move(body);
    return post;
}

std::vector<LabeledPost> fake_corpus(std::size_t n_dep, std::size_t n_nondep) {
    std::vector<LabeledPost> posts;
    for (std::size_t i = 0; i < n_dep + n_nondep; ++i) {
        LabeledPost lp;
        lp.post = make_post("p" + std::to_string(i), "t");
        lp.label = i < n_dep ? Label::Depressive : Label::NonDepressive;
        lp.source = LabelSource::Manual;
        posts.push_back(lp);
    }
    return posts;
}

}  // namespace

TEST_CASE("parse_posts reads records in file order") {
    std::istringstream in(
        R"({"id":"a1","subreddit":"depression","title":"first","selftext":"body one","created_utc":1640995200,"score":10}
{"id":"a2","title":"second"})");
    auto posts = parse_posts(in);
    REQUIRE(posts.size() == 2);
    CHECK(posts[0].id == "a1");
    CHECK(posts[0].body == "body one");
    CHECK(posts[0].score == 10);
    CHECK(posts[1].id == "a2");
    CHECK(posts[1].body.empty());   // defaults
    CHECK(posts[1].score == 0);
}

TEST_CASE("parse_posts on an empty file") {
    std::istringstream in("");
    CHECK(parse_posts(in).empty());
}

TEST_CASE("parse_posts rejects a record without id, with its line number") {
    std::istringstream in(
        R"({"id":"a1","title":"x"}
{"id":"a2","title":"y"}
{"title":"no id here"})");
    try {
        parse_posts(in);
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(e.line_no == 3);
    }
}

TEST_CASE("parse_posts rejects junk and bad field types") {
    std::istringstream bad_json("not json at all\n");
    CHECK_THROWS_AS(parse_posts(bad_json), MalformedRecord);

    std::istringstream bad_score(R"({"id":"a","title":"t","score":"many"})");
    CHECK_THROWS_AS(parse_posts(bad_score), MalformedRecord);

    std::istringstream negative_time(R"({"id":"a","title":"t","created_utc":-5})");
    CHECK_THROWS_AS(parse_posts(negative_time), MalformedRecord);

    std::istringstream no_text(R"({"id":"a","score":3})");
    CHECK_THROWS_AS(parse_posts(no_text), MalformedRecord);
}

TEST_CASE("parse_posts rejects duplicate ids") {
    std::istringstream in(
        R"({"id":"same","title":"x"}
{"id":"same","title":"y"})");
    try {
        parse_posts(in);
        FAIL("expected DuplicateId");
    } catch (const DuplicateId& e) {
        CHECK(e.id == "same");
    }
}

TEST_CASE("parse_posts ignores unknown fields and blank lines") {
    std::istringstream in(
        "\n{\"id\":\"a\",\"title\":\"t\",\"num_comments\":44,\"author\":\"u\"}\n\n");
    auto posts = parse_posts(in);
    REQUIRE(posts.size() == 1);
    CHECK(posts[0].id == "a");
}

TEST_CASE("serialize then parse is the identity") {
    std::vector<Post> posts{
        make_post("x1", "Tough Monday", "long body with \"quotes\" and \xc3\xa9 accents"),
        make_post("x2", "", "only body", "Happy"),
    };
    posts[0].created_utc = 123456;
    posts[0].score = -3;

    std::ostringstream out;
    serialize_posts(posts, out);
    std::istringstream in(out.str());
    CHECK(parse_posts(in) == posts);
}

TEST_CASE("labeled round-trip preserves label and provenance") {
    std::vector<LabeledPost> posts{
        {make_post("a", "t", "b"), Label::Depressive, LabelSource::LexiconMatch},
        {make_post("b", "t2", "", "Happy"), Label::NonDepressive,
         LabelSource::SubredditGroundTruth},
        {make_post("c", "t3"), Label::NonDepressive, LabelSource::Manual},
    };
    std::ostringstream out;
    serialize_labeled(posts, out);
    std::istringstream in(out.str());
    CHECK(parse_labeled(in) == posts);
}

TEST_CASE("label serialization uses the wire names") {
    CHECK(std::string(label_name(Label::Depressive)) == "depression");
    CHECK(std::string(label_name(Label::NonDepressive)) == "non-depression");
    CHECK(label_from_name("depression") == Label::Depressive);
    CHECK_THROWS_AS(label_from_name("positive"), Error);
}

TEST_CASE("load_lexicon normalizes entries and skips comments") {
    {
        std::ofstream f("lex_tmp1.txt");
        f << "sad\ntired\nhopeless\n";
    }
    Lexicon lex = load_lexicon("lex_tmp1.txt", pipeline());
    // entries live in lemma space: "tired" is stored as its lemma
    CHECK(lex.entries == std::set<std::string>{"sad", "tire", "hopeless"});

    {
        std::ofstream f("lex_tmp2.txt");
        f << "# comment\n\nSAD\n";
    }
    CHECK(load_lexicon("lex_tmp2.txt", pipeline()).entries == std::set<std::string>{"sad"});

    {
        std::ofstream f("lex_tmp3.txt");
        f << "# only\n# comments\n";
    }
    CHECK_THROWS_AS(load_lexicon("lex_tmp3.txt", pipeline()), EmptyLexicon);
    CHECK_THROWS_AS(load_lexicon("/no/such/lexicon.txt", pipeline()), IoError);
}

TEST_CASE("lexicon data file matches the builtin lexicon") {
    Lexicon from_file =
        load_lexicon(std::string(MOODBENCH_SOURCE_DIR) + "/data/lexicon_depression.txt",
                     pipeline());
    CHECK(from_file.entries == builtin_lexicon(pipeline()).entries);
}

TEST_CASE("label_post finds the paper keywords in order") {
    Lexicon lex = builtin_lexicon(pipeline());

    Post p1 = make_post("s1", "", "I feel worthless and hopeless and lonely and just miserable.");
    LabelResult r1 = label_post(p1, lex, pipeline());
    CHECK(r1.label == Label::Depressive);
    CHECK(r1.matched ==
          std::vector<std::string>{"worthless", "hopeless", "lonely", "miserable"});

    Post p2 = make_post("s2", "",
                        "I feel lost. I'm unhappy it feels like that's never gonna change.");
    LabelResult r2 = label_post(p2, lex, pipeline());
    CHECK(r2.label == Label::Depressive);
    CHECK(r2.matched == std::vector<std::string>{"unhappy"});

    Post p3 = make_post("s3", "", "what a wonderful sunny day");
    LabelResult r3 = label_post(p3, lex, pipeline());
    CHECK(r3.label == Label::NonDepressive);
    CHECK(r3.matched.empty());
}

TEST_CASE("label_post matches inflected keyword forms via lemmas") {
    Lexicon lex = builtin_lexicon(pipeline());
    // "tired" lemmatizes to "tire" on both sides of the match
    CHECK(label_post(make_post("t", "so tired today", ""), lex, pipeline()).label ==
          Label::Depressive);
    CHECK(label_post(make_post("t2", "", "I was crying all night"), lex, pipeline()).label ==
          Label::Depressive);
}

TEST_CASE("label_post on empty text and title-only posts") {
    Lexicon lex = builtin_lexicon(pipeline());
    CHECK(label_post(make_post("e", "", ""), lex, pipeline()).label == Label::NonDepressive);
    CHECK(label_post(make_post("t", "Feeling hopeless", ""), lex, pipeline()).label ==
          Label::Depressive);
}

TEST_CASE("label_post honors the hit threshold") {
    Lexicon lex = builtin_lexicon(pipeline());
    Post p = make_post("th", "", "so sad and hopeless");
    CHECK(label_post(p, lex, pipeline(), 2).label == Label::Depressive);
    CHECK(label_post(p, lex, pipeline(), 3).label == Label::NonDepressive);
}

TEST_CASE("labeling is monotone in the lexicon") {
    Lexicon small = make_lexicon({"sad", "hopeless"}, "small", "1", pipeline());
    Lexicon big = make_lexicon({"sad", "hopeless", "lonely", "miserable", "unhappy"}, "big",
                               "1", pipeline());
    const char* bodies[] = {
        "I feel worthless and hopeless and lonely and just miserable.",
        "I feel lost. I'm unhappy it feels like that's never gonna change.",
        "what a wonderful sunny day",
        "sad sad sad",
    };
    for (const char* body : bodies) {
        Post p = make_post("m", "", body);
        if (label_post(p, small, pipeline()).label == Label::Depressive)
            CHECK(label_post(p, big, pipeline()).label == Label::Depressive);
    }
}

TEST_CASE("label depends only on the lemma multiset") {
    Lexicon lex = builtin_lexicon(pipeline());
    Post a = make_post("a", "", "I feel lost. I'm unhappy it feels like that's never gonna change.");
    Post b = make_post("b", "", "it feels like that's never gonna change. I'm unhappy I feel lost.");
    CHECK(label_post(a, lex, pipeline()).label == label_post(b, lex, pipeline()).label);
}

TEST_CASE("label_corpus trusts r/Happy as ground truth") {
    Lexicon lex = builtin_lexicon(pipeline());
    std::vector<Post> posts{
        make_post("h1", "so sad and hopeless today", "", "Happy"),
        make_post("d1", "so sad and hopeless today", "", "depression"),
        make_post("n1", "nice weather", "", "ADHD"),
    };
    auto labeled = label_corpus(posts, lex, pipeline());
    REQUIRE(labeled.size() == 3);
    CHECK(labeled[0].label == Label::NonDepressive);
    CHECK(labeled[0].source == LabelSource::SubredditGroundTruth);
    CHECK(labeled[1].label == Label::Depressive);
    CHECK(labeled[1].source == LabelSource::LexiconMatch);
    CHECK(labeled[2].label == Label::NonDepressive);
    CHECK(labeled[2].source == LabelSource::LexiconMatch);
}

TEST_CASE("stratified_split reproduces the class arithmetic") {
    auto corpus = fake_corpus(1441, 1165);
    SplitSpec spec;  // 0.8, seed 42
    auto [train, test] = stratified_split(corpus, spec);
    CHECK(train.size() == 2084);
    CHECK(test.size() == 522);

    std::size_t train_dep = 0, test_dep = 0;
    for (const auto& lp : train) train_dep += lp.label == Label::Depressive;
    for (const auto& lp : test) test_dep += lp.label == Label::Depressive;
    CHECK(train_dep == 1152);
    CHECK(train.size() - train_dep == 932);
    CHECK(test_dep == 289);
    CHECK(test.size() - test_dep == 233);
}

TEST_CASE("stratified_split takes exactly floor(fraction * count) per class") {
    for (std::size_t n_dep : {3u, 7u, 10u, 33u}) {
        for (std::size_t n_nondep : {2u, 5u, 19u}) {
            auto corpus = fake_corpus(n_dep, n_nondep);
            SplitSpec spec;
            spec.train_fraction = 0.8;
            spec.seed = 5;
            auto [train, test] = stratified_split(corpus, spec);
            std::size_t train_dep = 0;
            for (const auto& lp : train) train_dep += lp.label == Label::Depressive;
            CHECK(train_dep == static_cast<std::size_t>(0.8 * static_cast<double>(n_dep)));
            CHECK(train.size() + test.size() == corpus.size());
        }
    }
}

TEST_CASE("stratified_split is deterministic and partitions the corpus") {
    auto corpus = fake_corpus(5, 5);
    SplitSpec spec;
    spec.seed = 7;
    auto [train1, test1] = stratified_split(corpus, spec);
    auto [train2, test2] = stratified_split(corpus, spec);
    CHECK(train1 == train2);
    CHECK(test1 == test2);

    std::set<std::string> ids;
    for (const auto& lp : train1) ids.insert(lp.post.id);
    for (const auto& lp : test1) ids.insert(lp.post.id);
    CHECK(ids.size() == corpus.size());
}

TEST_CASE("stratified_split requires both classes") {
    auto corpus = fake_corpus(4, 0);
    SplitSpec spec;
    try {
        stratified_split(corpus, spec);
        FAIL("expected MissingClass");
    } catch (const MissingClass& e) {
        CHECK(e.label_name == "non-depression");
    }
}

TEST_CASE("generate_synthetic mirrors the requested class counts") {
    Lexicon lex = builtin_lexicon(pipeline());
    auto posts = generate_synthetic(1441, 1165, 0.05, 42, lex, pipeline());
    CHECK(posts.size() == 2606);
    std::size_t dep = 0;
    for (const auto& lp : posts) {
        dep += lp.label == Label::Depressive;
        CHECK(lp.source == LabelSource::Manual);
    }
    CHECK(dep == 1441);
}

TEST_CASE("noise-free synthetic posts agree with lexicon labeling") {
    Lexicon lex = builtin_lexicon(pipeline());
    auto posts = generate_synthetic(120, 80, 0.0, 9, lex, pipeline());
    for (const auto& lp : posts) {
        if (lp.label == Label::Depressive)
            CHECK(label_post(lp.post, lex, pipeline()).label == Label::Depressive);
    }
}

TEST_CASE("synthetic generation is byte-identical across runs") {
    Lexicon lex = builtin_lexicon(pipeline());
    auto a = generate_synthetic(40, 30, 0.1, 1234, lex, pipeline());
    auto b = generate_synthetic(40, 30, 0.1, 1234, lex, pipeline());
    std::ostringstream sa, sb;
    serialize_labeled(a, sa);
    serialize_labeled(b, sb);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("synth-000000") != std::string::npos);
}

TEST_CASE("generate_synthetic validates its inputs") {
    Lexicon lex = builtin_lexicon(pipeline());
    CHECK_THROWS_AS(generate_synthetic(0, 5, 0.0, 1, lex, pipeline()), Error);
    Lexicon empty;
    CHECK_THROWS_AS(generate_synthetic(5, 5, 0.0, 1, empty, pipeline()), EmptyLexicon);
}
