#include "moodbench/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "moodbench/errors.hpp"

namespace moodbench::eval {

namespace {

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
    return buf;
}

std::string fraction4(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", fraction);
    return buf;
}

}  // namespace

MetricsReport evaluate(const models::TrainedModel& model,
                       const std::vector<features::SparseVector>& x,
                       const std::vector<Label>& y) {
    if (x.empty()) throw EmptyTestSet();
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());

    MetricsReport report;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Label predicted = models::predict(model, x[i]);
        const bool actual_dep = y[i] == Label::Depressive;
        const bool predicted_dep = predicted == Label::Depressive;
        if (actual_dep && predicted_dep) ++report.cm.tp;
        else if (!actual_dep && predicted_dep) ++report.cm.fp;
        else if (!actual_dep && !predicted_dep) ++report.cm.tn;
        else ++report.cm.fn;
    }

    const auto& cm = report.cm;
    report.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    report.precision =
        cm.tp + cm.fp == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    report.recall =
        cm.tp + cm.fn == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    report.f1 = report.precision + report.recall == 0.0
                    ? 0.0
                    : 2.0 * report.precision * report.recall / (report.precision + report.recall);
    report.n_test = x.size();
    return report;
}

BenchResult run_benchmark(const std::vector<corpus::LabeledPost>& posts,
                          const BenchConfig& config, std::uint64_t seed) {
    corpus::SplitSpec split_spec;
    split_spec.train_fraction = config.train_fraction;
    split_spec.seed = seed;
    auto [train_posts, test_posts] = corpus::stratified_split(posts, split_spec);

    textpipe::Pipeline pipeline(config.pipeline);
    auto preprocess_all = [&](const std::vector<corpus::LabeledPost>& side) {
        std::vector<textpipe::Document> docs;
        docs.reserve(side.size());
        for (const auto& lp : side)
            docs.push_back(pipeline.preprocess(lp.post.title + " " + lp.post.body, lp.post.id));
        return docs;
    };
    const std::vector<textpipe::Document> train_docs = preprocess_all(train_posts);
    const std::vector<textpipe::Document> test_docs = preprocess_all(test_posts);

    features::Vocabulary vocab;
    if (config.vocab_from_all) {
        std::vector<textpipe::Document> all_docs = train_docs;
        all_docs.insert(all_docs.end(), test_docs.begin(), test_docs.end());
        vocab = features::build_vocabulary(all_docs, config.min_df);
    } else {
        vocab = features::build_vocabulary(train_docs, config.min_df);
    }

    const auto train_x = features::vectorize_corpus(train_docs, vocab);
    const auto test_x = features::vectorize_corpus(test_docs, vocab);
    std::vector<Label> train_y, test_y;
    for (const auto& lp : train_posts) train_y.push_back(lp.label);
    for (const auto& lp : test_posts) test_y.push_back(lp.label);

    BenchResult result;
    result.n_train = train_posts.size();
    result.n_test = test_posts.size();
    for (const auto& lp : train_posts) ++result.train_by_class[models::class_index(lp.label)];
    for (const auto& lp : test_posts) ++result.test_by_class[models::class_index(lp.label)];
    result.vocab_size = vocab.size();
    result.seed = seed;

    const models::ModelKind order[] = {
        models::ModelKind::LogisticRegression,
        models::ModelKind::NaiveBayes,
        models::ModelKind::LinearSvm,
        models::ModelKind::RandomForest,
    };
    for (models::ModelKind kind : order) {
        models::TrainedModel model =
            models::train(kind, train_x, train_y, config.hp, seed, vocab, config.n_threads);
        MetricsReport metrics = evaluate(model, test_x, test_y);
        metrics.n_train = train_posts.size();
        metrics.seed = seed;
        result.rows.push_back({kind, metrics});
        result.trained.push_back(std::move(model));
    }
    return result;
}

std::string render_report(const std::vector<BenchRow>& rows, ReportFormat format) {
    if (rows.empty()) throw Error("no benchmark rows to render");
    std::ostringstream out;

    if (format == ReportFormat::Csv) {
        out << "model,accuracy,precision,recall,f1\n";
        for (const auto& row : rows) {
            out << models::kind_display_name(row.kind) << ',' << fraction4(row.metrics.accuracy)
                << ',' << fraction4(row.metrics.precision) << ','
                << fraction4(row.metrics.recall) << ',' << fraction4(row.metrics.f1) << '\n';
        }
        return out.str();
    }

    static const char* kHeaders[] = {"Model", "Accuracy (%)", "Precision (%)", "Recall (%)",
                                     "F1 (%)"};
    std::size_t name_width = std::string(kHeaders[0]).size();
    for (const auto& row : rows)
        name_width = std::max(name_width, std::string(models::kind_display_name(row.kind)).size());

    auto pad = [](const std::string& s, std::size_t width) {
        return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
    };
    out << pad(kHeaders[0], name_width);
    for (int i = 1; i < 5; ++i) out << "  " << kHeaders[i];
    out << '\n';
    for (const auto& row : rows) {
        out << pad(models::kind_display_name(row.kind), name_width);
        const double values[] = {row.metrics.accuracy, row.metrics.precision,
                                 row.metrics.recall, row.metrics.f1};
        for (int i = 0; i < 4; ++i) {
            const std::string cell = percent(values[i]);
            const std::size_t width = std::string(kHeaders[i + 1]).size();
            out << "  " << std::string(width > cell.size() ? width - cell.size() : 0, ' ')
                << cell;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace moodbench::eval
