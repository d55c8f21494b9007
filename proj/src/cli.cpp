#include "moodbench/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "moodbench/corpus.hpp"
#include "moodbench/errors.hpp"
#include "moodbench/eval.hpp"
#include "moodbench/features.hpp"
#include "moodbench/models.hpp"
#include "moodbench/rng.hpp"
#include "moodbench/textpipe.hpp"

namespace moodbench::cli {

namespace {

struct PipelineFlags {
    std::string normalizer = "lemmatize";
    std::string stopwords_path;
    std::string lemma_dict_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--normalizer", normalizer, "lemmatize|stem|none")
            ->check(CLI::IsMember({"lemmatize", "stem", "none"}));
        cmd->add_option("--stopwords", stopwords_path, "stopword file (default: bundled list)");
        cmd->add_option("--lemma-dict", lemma_dict_path,
                        "lemma dictionary file (default: bundled dictionary)");
    }

    textpipe::Pipeline build() const {
        textpipe::PipelineConfig config;
        config.normalizer = textpipe::normalizer_from_name(normalizer);
        if (!stopwords_path.empty()) config.stopwords = textpipe::load_stopwords(stopwords_path);
        config.lemma_dict_path = lemma_dict_path;
        return textpipe::Pipeline(config);
    }
};

corpus::Lexicon resolve_lexicon(const std::string& flag_path,
                                const textpipe::Pipeline& pipeline) {
    if (!flag_path.empty()) return corpus::load_lexicon(flag_path, pipeline);
    if (const char* env = std::getenv("MOODBENCH_LEXICON"); env && *env)
        return corpus::load_lexicon(env, pipeline);
    return corpus::builtin_lexicon(pipeline);
}

std::uint64_t file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    return fnv1a64(bytes.data(), bytes.size());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Bag-of-words depression post classifier"};
    app.name("moodbench");
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate a raw post dump");
    std::string ingest_input, ingest_output;
    ingest->add_option("--input,-i", ingest_input, "post dump (JSONL)")->required();
    ingest->add_option("--output,-o", ingest_output, "validated corpus (JSONL)")->required();

    // label
    auto* label = app.add_subcommand("label", "apply lexicon weak labeling");
    std::string label_input, label_output, label_lexicon;
    std::size_t label_threshold = 1;
    PipelineFlags label_pipeline;
    label->add_option("--input,-i", label_input, "post dump (JSONL)")->required();
    label->add_option("--output,-o", label_output, "labeled corpus (JSONL)")->required();
    label->add_option("--lexicon", label_lexicon, "lexicon file (default: $MOODBENCH_LEXICON or bundled)");
    label->add_option("--threshold", label_threshold, "distinct keyword hits for a depression label")
        ->check(CLI::PositiveNumber);
    label_pipeline.attach(label);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
    std::size_t synth_dep = 1441, synth_nondep = 1165;
    double synth_noise = 0.05;
    std::uint64_t synth_seed = 42;
    std::string synth_output, synth_lexicon;
    PipelineFlags synth_pipeline;
    synth->add_option("--dep", synth_dep, "depressive post count")->check(CLI::PositiveNumber);
    synth->add_option("--nondep", synth_nondep, "non-depressive post count")
        ->check(CLI::PositiveNumber);
    synth->add_option("--noise", synth_noise, "label noise rate")->check(CLI::Range(0.0, 1.0));
    synth->add_option("--seed", synth_seed, "rng seed");
    synth->add_option("--output,-o", synth_output, "labeled corpus (JSONL)")->required();
    synth->add_option("--lexicon", synth_lexicon, "lexicon file");
    synth_pipeline.attach(synth);

    // train
    auto* train = app.add_subcommand("train", "fit one model on a labeled corpus");
    std::string train_input, train_output, train_kind = "rf";
    std::uint64_t train_seed = 42;
    std::uint32_t train_min_df = 1;
    int train_threads = 1;
    PipelineFlags train_pipeline;
    train->add_option("--input,-i", train_input, "labeled corpus (JSONL)")->required();
    train->add_option("--output,-o", train_output, "model file")->required();
    train->add_option("--model-kind,-k", train_kind, "nb|lr|svm|rf")
        ->check(CLI::IsMember({"nb", "lr", "svm", "rf"}));
    train->add_option("--seed", train_seed, "rng seed");
    train->add_option("--min-df", train_min_df, "vocabulary document-frequency floor")
        ->check(CLI::PositiveNumber);
    train->add_option("--threads", train_threads, "worker threads for forest training")
        ->check(CLI::PositiveNumber);
    train_pipeline.attach(train);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "score a model on a labeled corpus");
    std::string eval_model, eval_input, eval_format = "table", eval_out;
    PipelineFlags eval_pipeline;
    evaluate->add_option("--model,-m", eval_model, "model file")->required();
    evaluate->add_option("--input,-i", eval_input, "labeled corpus (JSONL)")->required();
    evaluate->add_option("--format", eval_format, "table|csv")
        ->check(CLI::IsMember({"table", "csv"}));
    evaluate->add_option("--out", eval_out, "also write the report to this file");
    eval_pipeline.attach(evaluate);

    // predict
    auto* predict = app.add_subcommand("predict", "label raw text lines from stdin");
    std::string predict_model;
    PipelineFlags predict_pipeline;
    predict->add_option("--model,-m", predict_model, "model file")->required();
    predict_pipeline.attach(predict);

    // bench
    auto* bench = app.add_subcommand("bench", "split, train all four models, report");
    std::string bench_input, bench_format = "table", bench_out, bench_models_dir;
    std::uint64_t bench_seed = 42;
    double bench_fraction = 0.8;
    std::uint32_t bench_min_df = 1;
    bool bench_vocab_from_all = false;
    int bench_threads = 1;
    PipelineFlags bench_pipeline;
    bench->add_option("--input,-i", bench_input, "labeled corpus (JSONL)")->required();
    bench->add_option("--seed", bench_seed, "rng seed");
    bench->add_option("--train-fraction", bench_fraction, "train split fraction")
        ->check(CLI::Range(0.0, 1.0));
    bench->add_option("--min-df", bench_min_df, "vocabulary document-frequency floor")
        ->check(CLI::PositiveNumber);
    bench->add_flag("--vocab-from-all", bench_vocab_from_all,
                    "build the vocabulary from the whole corpus instead of the train split");
    bench->add_option("--threads", bench_threads, "worker threads for forest training")
        ->check(CLI::PositiveNumber);
    bench->add_option("--format", bench_format, "table|csv")
        ->check(CLI::IsMember({"table", "csv"}));
    bench->add_option("--out", bench_out, "also write the report to this file");
    bench->add_option("--models-dir", bench_models_dir, "save the four trained models here");
    bench_pipeline.attach(bench);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (ingest->parsed()) {
            std::vector<corpus::Post> posts = corpus::parse_posts(ingest_input);
            corpus::serialize_posts(posts, ingest_output);
            err << "moodbench ingest: input=" << ingest_input << " posts=" << posts.size()
                << " output=" << ingest_output << '\n';
            return 0;
        }

        if (label->parsed()) {
            textpipe::Pipeline pipeline = label_pipeline.build();
            corpus::Lexicon lexicon = resolve_lexicon(label_lexicon, pipeline);
            std::vector<corpus::Post> posts = corpus::parse_posts(label_input);
            std::vector<corpus::LabeledPost> labeled =
                corpus::label_corpus(posts, lexicon, pipeline, label_threshold);
            corpus::serialize_labeled(labeled, label_output);
            std::size_t n_dep = 0;
            for (const auto& lp : labeled)
                if (lp.label == corpus::Label::Depressive) ++n_dep;
            err << "moodbench label: input=" << label_input << " lexicon=" << lexicon.name
                << " (" << lexicon.entries.size() << " lemmas, v" << lexicon.version
                << ") threshold=" << label_threshold << " normalizer="
                << label_pipeline.normalizer << " depressive=" << n_dep << "/"
                << labeled.size() << " output=" << label_output << '\n';
            return 0;
        }

        if (synth->parsed()) {
            textpipe::Pipeline pipeline = synth_pipeline.build();
            corpus::Lexicon lexicon = resolve_lexicon(synth_lexicon, pipeline);
            std::vector<corpus::LabeledPost> posts = corpus::generate_synthetic(
                synth_dep, synth_nondep, synth_noise, synth_seed, lexicon, pipeline);
            corpus::serialize_labeled(posts, synth_output);
            err << "moodbench synth: dep=" << synth_dep << " nondep=" << synth_nondep
                << " noise=" << format_double(synth_noise) << " seed=" << synth_seed
                << " output=" << synth_output << '\n';
            return 0;
        }

        if (train->parsed()) {
            textpipe::Pipeline pipeline = train_pipeline.build();
            std::vector<corpus::LabeledPost> posts = corpus::parse_labeled(train_input);
            std::vector<textpipe::Document> docs;
            std::vector<corpus::Label> labels;
            for (const auto& lp : posts) {
                docs.push_back(pipeline.preprocess(lp.post.title + " " + lp.post.body, lp.post.id));
                labels.push_back(lp.label);
            }
            features::Vocabulary vocab = features::build_vocabulary(docs, train_min_df);
            auto x = features::vectorize_corpus(docs, vocab);
            models::ModelKind kind = models::kind_from_name(train_kind);
            models::TrainedModel model = models::train(kind, x, labels, models::Hyperparams{},
                                                       train_seed, vocab, train_threads);
            models::save_model(model, train_output);
            err << "moodbench train: input=" << train_input << " kind=" << train_kind
                << " seed=" << train_seed << " normalizer=" << train_pipeline.normalizer
                << " min_df=" << train_min_df << " V=" << vocab.size() << " n=" << posts.size()
                << " output=" << train_output << '\n';
            return 0;
        }

        if (evaluate->parsed()) {
            textpipe::Pipeline pipeline = eval_pipeline.build();
            models::TrainedModel model = models::load_model(eval_model);
            std::vector<corpus::LabeledPost> posts = corpus::parse_labeled(eval_input);
            std::vector<features::SparseVector> x;
            std::vector<corpus::Label> y;
            for (const auto& lp : posts) {
                x.push_back(features::vectorize(
                    pipeline.preprocess(lp.post.title + " " + lp.post.body, lp.post.id),
                    model.vocab));
                y.push_back(lp.label);
            }
            eval::MetricsReport metrics = eval::evaluate(model, x, y);
            std::vector<eval::BenchRow> rows{{model.kind, metrics}};
            const std::string report = eval::render_report(
                rows, eval_format == "csv" ? eval::ReportFormat::Csv : eval::ReportFormat::Table);
            out << report;
            if (!eval_out.empty()) write_text_file(eval_out, report);
            err << "moodbench evaluate: model=" << eval_model << " input=" << eval_input
                << " n=" << posts.size() << " normalizer=" << eval_pipeline.normalizer << '\n';
            return 0;
        }

        if (predict->parsed()) {
            textpipe::Pipeline pipeline = predict_pipeline.build();
            models::TrainedModel model = models::load_model(predict_model);
            std::string line;
            while (std::getline(in, line)) {
                features::SparseVector x =
                    features::vectorize(pipeline.preprocess(line), model.vocab);
                out << corpus::label_name(models::predict(model, x)) << '\n';
            }
            return 0;
        }

        if (bench->parsed()) {
            eval::BenchConfig config;
            config.pipeline.normalizer = textpipe::normalizer_from_name(bench_pipeline.normalizer);
            if (!bench_pipeline.stopwords_path.empty())
                config.pipeline.stopwords = textpipe::load_stopwords(bench_pipeline.stopwords_path);
            config.pipeline.lemma_dict_path = bench_pipeline.lemma_dict_path;
            config.train_fraction = bench_fraction;
            config.min_df = bench_min_df;
            config.vocab_from_all = bench_vocab_from_all;
            config.n_threads = bench_threads;

            std::vector<corpus::LabeledPost> posts = corpus::parse_labeled(bench_input);
            eval::BenchResult result = eval::run_benchmark(posts, config, bench_seed);

            char checksum[32];
            std::snprintf(checksum, sizeof checksum, "%016llx",
                          static_cast<unsigned long long>(file_checksum(bench_input)));

            std::ostringstream report;
            report << "# moodbench bench\n";
            report << "# input: " << bench_input << " (" << posts.size()
                   << " posts, fnv64=" << checksum << ")\n";
            report << "# seed: " << bench_seed << "\n";
            report << "# train_fraction: " << format_double(bench_fraction)
                   << "  normalizer: " << bench_pipeline.normalizer
                   << "  min_df: " << bench_min_df
                   << "  vocab: " << (bench_vocab_from_all ? "all" : "train-only")
                   << " (V=" << result.vocab_size << ")\n";
            report << "# split: train " << result.n_train << " (" << result.train_by_class[0]
                   << "/" << result.train_by_class[1] << "), test " << result.n_test << " ("
                   << result.test_by_class[0] << "/" << result.test_by_class[1] << ")\n";
            report << eval::render_report(result.rows, bench_format == "csv"
                                                           ? eval::ReportFormat::Csv
                                                           : eval::ReportFormat::Table);

            const std::string text = report.str();
            out << text;
            if (!bench_out.empty()) write_text_file(bench_out, text);
            if (!bench_models_dir.empty()) {
                for (std::size_t i = 0; i < result.rows.size(); ++i) {
                    const std::string path = bench_models_dir + "/" +
                                             models::kind_name(result.rows[i].kind) + ".mdb";
                    models::save_model(result.trained[i], path);
                }
            }
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;  // no subcommand matched (require_subcommand should prevent this)
}

}  // namespace moodbench::cli
