// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "moodbench/corpus.hpp"
#include "moodbench/errors.hpp"
#include "moodbench/eval.hpp"
#include "moodbench/features.hpp"
#include "moodbench/models.hpp"
#include "moodbench/rng.hpp"
#include "moodbench/textpipe.hpp"
#include "support/nb_oracle.hpp"
#include "support/test_data.hpp"

namespace fs = std::filesystem;
using namespace moodbench;
using test_data::dense_to_sparse;
using test_data::make_vocab;
using test_data::random_vector;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& detail) {
    if (!condition) throw Failure(detail);
}

int g_failures = 0;

void criterion(const std::string& name, const std::function<std::string()>& body) {
    try {
        const std::string detail = body();
        std::printf("[PASS] %s: %s\n", name.c_str(), detail.c_str());
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("[FAIL] %s: %s\n", name.c_str(), e.what());
    }
    std::fflush(stdout);
}

std::string source_path(const std::string& rel) {
    return std::string(MOODBENCH_SOURCE_DIR) + "/" + rel;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_command(const std::string& cmd) { return std::system(cmd.c_str()); }

// Shared fixtures, built once.
struct Fixtures {
    textpipe::Pipeline pipeline;
    corpus::Lexicon lexicon = corpus::builtin_lexicon(pipeline);
    std::vector<corpus::LabeledPost> synthetic =
        corpus::generate_synthetic(1441, 1165, 0.05, 42, lexicon, pipeline);
    fs::path tmp = fs::path("acceptance_tmp");

    Fixtures() {
        fs::remove_all(tmp);
        fs::create_directories(tmp);
    }
};

}  // namespace

int main() {
    Fixtures fx;
    eval::BenchResult bench;  // filled by the first criterion, reused later

    // Synthetic benchmark: four models on the 1441/1165 corpus, best >= 0.92,
    // all above the 0.553 majority baseline, under 60 s.
    criterion("synthetic-benchmark", [&] {
        const auto start = std::chrono::steady_clock::now();
        eval::BenchConfig config;
        bench = eval::run_benchmark(fx.synthetic, config, 42);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        require(bench.rows.size() == 4, "expected four rows");
        double best = 0.0;
        for (const auto& row : bench.rows) {
            require(row.metrics.accuracy > 0.553,
                    std::string(models::kind_display_name(row.kind)) + " at " +
                        std::to_string(row.metrics.accuracy) + " does not beat 0.553");
            best = std::max(best, row.metrics.accuracy);
        }
        require(best >= 0.92, "best accuracy " + std::to_string(best) + " below 0.92");
        require(seconds < 60.0, "took " + std::to_string(seconds) + " s");

        char detail[256];
        std::snprintf(detail, sizeof detail,
                      "LR %.4f NB %.4f SVM %.4f RF %.4f, best %.4f >= 0.92, all > 0.553, %.1f s",
                      bench.rows[0].metrics.accuracy, bench.rows[1].metrics.accuracy,
                      bench.rows[2].metrics.accuracy, bench.rows[3].metrics.accuracy, best,
                      seconds);
        return std::string(detail);
    });

    // Naive Bayes equivalence against an exact-rational Bayes oracle.
    criterion("nb-oracle-equivalence", [&] {
        std::size_t cases = 0;
        long double worst_rel = 0.0L;

        auto check_corpus = [&](const std::vector<nb_oracle::OracleDoc>& docs,
                                const std::vector<std::uint32_t>& probe) {
            const auto v = static_cast<std::uint32_t>(probe.size());
            std::vector<features::SparseVector> x;
            std::vector<corpus::Label> y;
            for (const auto& d : docs) {
                x.push_back(dense_to_sparse(d.counts));
                y.push_back(models::label_of_class(d.label));
            }
            models::TrainedModel model =
                models::train(models::ModelKind::NaiveBayes, x, y, models::Hyperparams{}, 1,
                              make_vocab(v));
            const nb_oracle::OracleResult expected = nb_oracle::classify(docs, probe);
            const features::SparseVector probe_vec = dense_to_sparse(probe);

            require(models::class_index(models::predict(model, probe_vec)) ==
                        expected.predicted,
                    "label disagrees with the rational oracle");
            const auto lp = models::nb_log_posteriors(model, probe_vec);
            for (int c = 0; c < 2; ++c) {
                const long double rel =
                    std::abs(static_cast<long double>(lp[c]) - expected.log_joint[c]) /
                    std::abs(expected.log_joint[c]);
                worst_rel = std::max(worst_rel, rel);
                require(rel <= 1e-12L, "log-posterior relative error above 1e-12");
            }
            ++cases;
        };

        // Exhaustive sweep: V <= 2, up to 3 documents, counts <= 2, every
        // two-class label assignment, every probe with counts <= 2.
        for (std::uint32_t v = 1; v <= 2; ++v) {
            const std::uint32_t n_vectors = static_cast<std::uint32_t>(std::pow(3u, v));
            auto nth_vector = [&](std::uint32_t index) {
                std::vector<std::uint32_t> counts(v);
                for (std::uint32_t f = 0; f < v; ++f) {
                    counts[f] = index % 3;
                    index /= 3;
                }
                return counts;
            };
            for (std::size_t n_docs = 2; n_docs <= 3; ++n_docs) {
                std::vector<std::uint32_t> doc_choice(n_docs, 0);
                for (;;) {
                    for (std::uint32_t labels = 1; labels + 1 < (1u << n_docs); ++labels) {
                        std::vector<nb_oracle::OracleDoc> docs(n_docs);
                        for (std::size_t d = 0; d < n_docs; ++d) {
                            docs[d].counts = nth_vector(doc_choice[d]);
                            docs[d].label = (labels >> d) & 1;
                        }
                        for (std::uint32_t p = 0; p < n_vectors; ++p)
                            check_corpus(docs, nth_vector(p));
                    }
                    std::size_t k = 0;
                    while (k < n_docs && ++doc_choice[k] == n_vectors) doc_choice[k++] = 0;
                    if (k == n_docs) break;
                }
            }
        }
        const std::size_t exhaustive = cases;

        // Randomized sweep over the full stated bounds: <= 4 docs, V <= 5,
        // counts <= 3.
        Rng rng(20260808);
        for (int trial = 0; trial < 4000; ++trial) {
            const auto v = static_cast<std::uint32_t>(1 + rng.below(5));
            const auto n_docs = static_cast<std::size_t>(2 + rng.below(3));
            std::vector<nb_oracle::OracleDoc> docs(n_docs);
            for (std::size_t d = 0; d < n_docs; ++d) {
                docs[d].counts.resize(v);
                for (auto& c : docs[d].counts) c = static_cast<std::uint32_t>(rng.below(4));
                docs[d].label = d == 0 ? 0 : (d == 1 ? 1 : static_cast<int>(rng.below(2)));
            }
            for (int p = 0; p < 3; ++p) {
                std::vector<std::uint32_t> probe(v);
                for (auto& c : probe) c = static_cast<std::uint32_t>(rng.below(4));
                check_corpus(docs, probe);
            }
        }

        char detail[192];
        std::snprintf(detail, sizeof detail,
                      "%zu exhaustive + %zu randomized cases, 100%% label agreement, max "
                      "log-posterior rel err %.2Le",
                      exhaustive, cases - exhaustive, worst_rel);
        return std::string(detail);
    });

    // Logistic regression: analytic vs central-difference gradients on 100
    // random instances, and a non-increasing loss curve on the benchmark fit.
    criterion("lr-gradient-check", [&] {
        Rng rng(31415926);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto v = static_cast<std::uint32_t>(2 + rng.below(19));
            const auto n = static_cast<std::size_t>(2 + rng.below(29));
            std::vector<features::SparseVector> x;
            std::vector<double> y;
            for (std::size_t i = 0; i < n; ++i) {
                x.push_back(random_vector(rng, v));
                y.push_back(static_cast<double>(rng.below(2)));
            }
            std::vector<double> w(v);
            for (auto& wi : w) wi = rng.unit() * 2.0 - 1.0;
            const double b = rng.unit() * 2.0 - 1.0;
            const double lambda = 1e-4;

            std::vector<double> grad(v);
            double grad_b = 0.0;
            models::logreg::gradient(x, y, w, b, lambda, grad, grad_b);

            const double h = 1e-5;
            double num = 0.0, den = 0.0;
            auto loss_at = [&](const std::vector<double>& wv, double bv) {
                return models::logreg::loss(x, y, wv, bv, lambda);
            };
            for (std::uint32_t f = 0; f < v; ++f) {
                std::vector<double> wp = w, wm = w;
                wp[f] += h;
                wm[f] -= h;
                const double fd = (loss_at(wp, b) - loss_at(wm, b)) / (2.0 * h);
                num += (grad[f] - fd) * (grad[f] - fd);
                den += fd * fd;
            }
            const double fd_b = (loss_at(w, b + h) - loss_at(w, b - h)) / (2.0 * h);
            num += (grad_b - fd_b) * (grad_b - fd_b);
            den += fd_b * fd_b;
            const double rel = std::sqrt(num) / std::max(1.0, std::sqrt(den));
            worst = std::max(worst, rel);
            require(rel <= 1e-5, "gradient relative error " + std::to_string(rel));
        }

        require(!bench.trained.empty(), "benchmark fixture missing");
        const auto& lr = std::get<models::LrParams>(bench.trained[0].params);
        require(lr.loss_history.size() >= 2, "no loss history recorded");
        for (std::size_t e = 1; e < lr.loss_history.size(); ++e)
            require(lr.loss_history[e] <= lr.loss_history[e - 1] + 1e-12,
                    "loss increased at epoch " + std::to_string(e));

        char detail[160];
        std::snprintf(detail, sizeof detail,
                      "100 instances, max rel err %.2e <= 1e-5; loss non-increasing over %zu "
                      "epochs on the synthetic corpus",
                      worst, lr.loss_history.size() - 1);
        return std::string(detail);
    });

    // SVM reaches 100% training accuracy on disjoint-vocabulary toy data for
    // all of 20 seeds within default epochs.
    criterion("svm-separability", [&] {
        const features::Vocabulary vocab({"awful", "great"});
        const std::vector<features::SparseVector> x{dense_to_sparse({1, 0}),
                                                    dense_to_sparse({0, 1})};
        const std::vector<corpus::Label> y{corpus::Label::Depressive,
                                           corpus::Label::NonDepressive};
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            models::TrainedModel model =
                models::train(models::ModelKind::LinearSvm, x, y, models::Hyperparams{}, seed,
                              vocab);
            require(models::predict(model, x[0]) == y[0] && models::predict(model, x[1]) == y[1],
                    "not separated at seed " + std::to_string(seed));
        }
        return std::string("20/20 seeds reach 100% training accuracy within default epochs");
    });

    // Forest with one tree and no bootstrap equals that tree everywhere.
    criterion("rf-degenerate-equivalence", [&] {
        Rng rng(5577);
        const std::uint32_t v = 12;
        std::vector<features::SparseVector> x;
        std::vector<corpus::Label> y;
        for (int i = 0; i < 100; ++i) {
            x.push_back(random_vector(rng, v));
            y.push_back(models::label_of_class(i % 2));
        }
        models::Hyperparams hp;
        hp.rf_n_trees = 1;
        hp.rf_bootstrap = false;
        const std::uint64_t seed = 2468;
        models::TrainedModel forest =
            models::train(models::ModelKind::RandomForest, x, y, hp, seed, make_vocab(v));
        std::vector<std::uint32_t> identity(x.size());
        for (std::uint32_t i = 0; i < identity.size(); ++i) identity[i] = i;
        const models::DecisionTree tree = models::train_tree(x, y, identity, hp, seed, 0, v);

        for (int probe = 0; probe < 500; ++probe) {
            const features::SparseVector q = random_vector(rng, v);
            require(models::class_index(models::predict(forest, q)) == tree.predict_class(q),
                    "forest and tree disagree on probe " + std::to_string(probe));
        }
        return std::string("forest(n_trees=1, bootstrap=off) equals its tree on 500 probes");
    });

    // Two identical CLI bench invocations produce byte-identical reports and
    // model files; forest training is thread-count independent.
    criterion("determinism", [&] {
        const fs::path corpus_path = fx.tmp / "synthetic.jsonl";
        corpus::serialize_labeled(fx.synthetic, corpus_path.string());

        const std::string cli = MOODBENCH_CLI_PATH;
        for (int run = 1; run <= 2; ++run) {
            const fs::path models_dir = fx.tmp / ("models" + std::to_string(run));
            fs::create_directories(models_dir);
            std::ostringstream cmd;
            cmd << cli << " bench -i " << corpus_path.string() << " --seed 42 --out "
                << (fx.tmp / ("report" + std::to_string(run) + ".txt")).string()
                << " --models-dir " << models_dir.string() << " > "
                << (fx.tmp / ("stdout" + std::to_string(run) + ".txt")).string() << " 2> "
                << (fx.tmp / ("stderr" + std::to_string(run) + ".txt")).string();
            require(run_command(cmd.str()) == 0, "bench run " + std::to_string(run) + " failed");
        }
        require(slurp(fx.tmp / "report1.txt") == slurp(fx.tmp / "report2.txt"),
                "reports differ between runs");
        require(slurp(fx.tmp / "stdout1.txt") == slurp(fx.tmp / "stdout2.txt"),
                "stdout differs between runs");
        for (const char* kind : {"lr", "nb", "svm", "rf"}) {
            const std::string name = std::string(kind) + ".mdb";
            require(slurp(fx.tmp / "models1" / name) == slurp(fx.tmp / "models2" / name),
                    name + " differs between runs");
        }

        eval::BenchConfig threaded;
        threaded.n_threads = 8;
        eval::BenchResult parallel = eval::run_benchmark(fx.synthetic, threaded, 42);
        require(models::serialize_model(parallel.trained[3]) ==
                    models::serialize_model(bench.trained[3]),
                "forest differs between 1-thread and 8-thread training");
        return std::string(
            "reports, stdout, and 4 model files byte-identical across reruns; forest equal "
            "for 1 vs 8 threads");
    });

    // Figure-1 pipeline conformance: the running->run example both ways, the
    // frozen Porter list, and the two example sentences labeling Depressive.
    criterion("pipeline-conformance", [&] {
        require(textpipe::stem("running") == "run", "stem(running) != run");
        require(textpipe::lemmatize("running", textpipe::PosTag::Verb,
                                    textpipe::LemmaDict::builtin()) == "run",
                "lemmatize(running) != run");

        std::ifstream gold(source_path("tests/data/porter_gold.tsv"));
        require(gold.good(), "missing porter_gold.tsv");
        std::string line;
        std::size_t matched = 0, total = 0;
        while (std::getline(gold, line)) {
            if (line.empty() || line[0] == '#') continue;
            const std::size_t tab = line.find('\t');
            require(tab != std::string::npos, "bad gold line: " + line);
            ++total;
            matched += textpipe::stem(line.substr(0, tab)) == line.substr(tab + 1);
        }
        require(total == 100, "expected 100 reference words");
        require(matched == 100,
                std::to_string(matched) + "/100 reference words matched");

        const char* sentences[] = {
            "I feel lost. I'm unhappy it feels like that's never gonna change.",
            "I feel worthless and hopeless and lonely and just miserable.",
        };
        for (const char* text : sentences) {
            corpus::Post post;
            post.id = "s";
            post.body = text;
            require(corpus::label_post(post, fx.lexicon, fx.pipeline).label ==
                        corpus::Label::Depressive,
                    std::string("not labeled depression: ") + text);
        }
        return std::string(
            "running->run for stem and lemmatize; Porter reference 100/100; both example "
            "sentences labeled depression");
    });

    // Stratified split arithmetic on the paper's class counts.
    criterion("split-arithmetic", [&] {
        std::vector<corpus::LabeledPost> posts;
        for (int i = 0; i < 1441 + 1165; ++i) {
            corpus::LabeledPost lp;
            lp.post.id = "p" + std::to_string(i);
            lp.post.title = "t";
            lp.label = i < 1441 ? corpus::Label::Depressive : corpus::Label::NonDepressive;
            lp.source = corpus::LabelSource::Manual;
            posts.push_back(lp);
        }
        corpus::SplitSpec spec;  // 0.8, seed 42
        auto [train, test] = corpus::stratified_split(posts, spec);
        std::size_t train_dep = 0, test_dep = 0;
        for (const auto& lp : train) train_dep += lp.label == corpus::Label::Depressive;
        for (const auto& lp : test) test_dep += lp.label == corpus::Label::Depressive;
        require(train_dep == 1152 && train.size() - train_dep == 932,
                "train split is not 1152/932");
        require(test_dep == 289 && test.size() - test_dep == 233, "test split is not 289/233");
        return std::string("1441/1165 at 0.8 -> train 1152/932, test 289/233");
    });

    // Round-trips: model files preserve scores bit-exactly, the corpus
    // serializes losslessly, and the CSV report re-parses to its own values.
    criterion("round-trips", [&] {
        Rng rng(9001);
        for (std::size_t i = 0; i < bench.trained.size(); ++i) {
            const fs::path path =
                fx.tmp / (std::string("rt_") + models::kind_name(bench.trained[i].kind) + ".mdb");
            models::save_model(bench.trained[i], path.string());
            const models::TrainedModel loaded = models::load_model(path.string());
            const std::uint32_t v = bench.trained[i].vocab.size();
            for (int probe = 0; probe < 1000; ++probe) {
                features::SparseVector q = random_vector(rng, v, 2);
                const double a = models::predict_score(bench.trained[i], q);
                const double b = models::predict_score(loaded, q);
                require(std::memcmp(&a, &b, sizeof a) == 0,
                        "score not bit-exact after reload");
            }
        }

        std::ostringstream serialized;
        corpus::serialize_labeled(fx.synthetic, serialized);
        std::istringstream reread(serialized.str());
        require(corpus::parse_labeled(reread) == fx.synthetic,
                "labeled corpus round-trip not the identity");

        std::vector<corpus::Post> raw;
        for (const auto& lp : fx.synthetic) raw.push_back(lp.post);
        std::ostringstream raw_out;
        corpus::serialize_posts(raw, raw_out);
        std::istringstream raw_in(raw_out.str());
        require(corpus::parse_posts(raw_in) == raw, "post round-trip not the identity");

        const std::string csv = eval::render_report(bench.rows, eval::ReportFormat::Csv);
        std::istringstream csv_in(csv);
        std::string line;
        std::getline(csv_in, line);
        require(line == "model,accuracy,precision,recall,f1", "csv header changed");
        std::size_t row = 0;
        while (std::getline(csv_in, line)) {
            std::istringstream fields(line);
            std::string cell;
            std::getline(fields, cell, ',');
            const double expected[] = {
                bench.rows[row].metrics.accuracy, bench.rows[row].metrics.precision,
                bench.rows[row].metrics.recall, bench.rows[row].metrics.f1};
            for (double value : expected) {
                require(static_cast<bool>(std::getline(fields, cell, ',')), "csv missing field");
                char rounded[16];
                std::snprintf(rounded, sizeof rounded, "%.4f", value);
                require(std::abs(std::stod(cell) - std::stod(rounded)) < 1e-12,
                        "csv value does not re-parse to the rendered number");
            }
            ++row;
        }
        require(row == 4, "csv row count");
        return std::string(
            "4 models x 1000 probes bit-exact after save/load; corpus and labeled corpus "
            "round-trip; csv re-parses");
    });

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}
