#ifndef MOODBENCH_EVAL_HPP
#define MOODBENCH_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "moodbench/corpus.hpp"
#include "moodbench/models.hpp"

namespace moodbench::eval {

using corpus::Label;

// Positive class = Depressive.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

struct MetricsReport {
    ConfusionMatrix cm;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t n_train = 0;  // 0 when unknown
    std::size_t n_test = 0;
    std::uint64_t seed = 0;
};

MetricsReport evaluate(const models::TrainedModel& model,
                       const std::vector<features::SparseVector>& x,
                       const std::vector<Label>& y);

struct BenchConfig {
    textpipe::PipelineConfig pipeline;
    double train_fraction = 0.8;
    std::uint32_t min_df = 1;
    bool vocab_from_all = false;  // true restores whole-corpus vocabulary
    models::Hyperparams hp;
    int n_threads = 1;
};

struct BenchRow {
    models::ModelKind kind;
    MetricsReport metrics;
};

struct BenchResult {
    std::vector<BenchRow> rows;  // Table-1 order: LR, NB, SVM, RF
    std::vector<models::TrainedModel> trained;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::array<std::size_t, 2> train_by_class{};
    std::array<std::size_t, 2> test_by_class{};
    std::uint32_t vocab_size = 0;
    std::uint64_t seed = 0;
};

// One shared split, one shared vectorization, all four models.
// Deterministic given (corpus, config, seed).
BenchResult run_benchmark(const std::vector<corpus::LabeledPost>& corpus,
                          const BenchConfig& config, std::uint64_t seed);

enum class ReportFormat { Table, Csv };

// Table: aligned columns, percentages to two decimals.
// Csv: header "model,accuracy,precision,recall,f1", fractions to four decimals.
std::string render_report(const std::vector<BenchRow>& rows, ReportFormat format);

}  // namespace moodbench::eval

#endif
