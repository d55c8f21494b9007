#ifndef MOODBENCH_MODELS_HPP
#define MOODBENCH_MODELS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "moodbench/corpus.hpp"
#include "moodbench/features.hpp"

namespace moodbench::models {

using corpus::Label;
using features::SparseVector;
using features::Vocabulary;

enum class ModelKind : std::uint8_t {
    NaiveBayes = 0,
    LogisticRegression = 1,
    LinearSvm = 2,
    RandomForest = 3,
};

const char* kind_name(ModelKind kind);                 // "nb", "lr", "svm", "rf"
ModelKind kind_from_name(const std::string& name);     // throws Error
const char* kind_display_name(ModelKind kind);         // "Naive Bayes", ...

// Class indexing used by all parameter blocks: 0 = Depressive, 1 = NonDepressive.
inline int class_index(Label label) { return label == Label::Depressive ? 0 : 1; }
inline Label label_of_class(int c) { return c == 0 ? Label::Depressive : Label::NonDepressive; }

struct Hyperparams {
    // Naive Bayes
    double nb_alpha = 1.0;  // Laplace smoothing

    // Logistic regression: full-batch gradient descent, step decays as
    // lr / (1 + decay * epoch).
    double lr_l2_lambda = 1e-4;
    double lr_learning_rate = 0.1;
    double lr_decay = 0.01;
    std::uint32_t lr_max_epochs = 1000;
    double lr_tol = 1e-8;  // stop when the loss delta falls below this

    // Linear SVM: primal hinge-loss SGD, step 1/(lambda * t).
    double svm_l2_lambda = 1e-4;
    std::uint32_t svm_epochs = 20;

    // Random forest
    std::uint32_t rf_n_trees = 100;
    std::int32_t rf_max_depth = -1;  // unbounded
    std::uint32_t rf_min_samples_split = 2;
    std::uint32_t rf_features_per_split = 0;  // 0 = floor(sqrt(V))
    bool rf_bootstrap = true;

    bool operator==(const Hyperparams&) const = default;
};

struct NbParams {
    double alpha = 1.0;
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> log_likelihood;  // per class, size V
    bool operator==(const NbParams&) const = default;
};

struct LrParams {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> loss_history;  // loss after each epoch
    bool operator==(const LrParams&) const = default;
};

struct SvmParams {
    std::vector<double> weights;
    double bias = 0.0;
    bool operator==(const SvmParams&) const = default;
};

// Flat node array; feature < 0 marks a leaf. Split test: count <= threshold
// goes left.
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::array<std::uint32_t, 2> class_counts{};  // leaf: training sample counts
    bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    int predict_class(const SparseVector& x) const;
    bool operator==(const DecisionTree&) const = default;
};

struct RfParams {
    std::vector<DecisionTree> trees;
    bool operator==(const RfParams&) const = default;
};

struct TrainedModel {
    ModelKind kind = ModelKind::NaiveBayes;
    Vocabulary vocab;
    Hyperparams hp;
    std::uint64_t seed = 0;
    std::variant<NbParams, LrParams, SvmParams, RfParams> params;
};

// Fits one model. Deterministic given (data, hp, seed); n_threads only
// affects wall time, never the result.
TrainedModel train(ModelKind kind, const std::vector<SparseVector>& x,
                   const std::vector<Label>& y, const Hyperparams& hp, std::uint64_t seed,
                   Vocabulary vocab, int n_threads = 1);

Label predict(const TrainedModel& model, const SparseVector& x);

// NB: log-posterior margin (Depressive - NonDepressive); LR: sigma(w.x + b);
// SVM: w.x + b; RF: fraction of trees voting Depressive. predict() is
// Depressive iff score >= threshold (0 for NB/SVM, 0.5 for LR/RF).
double predict_score(const TrainedModel& model, const SparseVector& x);
double decision_threshold(ModelKind kind);

// Unnormalized log joint per class, exposed for oracle comparison.
std::array<double, 2> nb_log_posteriors(const TrainedModel& model, const SparseVector& x);

// Regularized binary cross-entropy and its analytic gradient, the exact
// objective the LR trainer descends. y encoded 1 = Depressive.
namespace logreg {
double loss(const std::vector<SparseVector>& x, const std::vector<double>& y,
            const std::vector<double>& weights, double bias, double l2_lambda);
void gradient(const std::vector<SparseVector>& x, const std::vector<double>& y,
              const std::vector<double>& weights, double bias, double l2_lambda,
              std::vector<double>& grad_w, double& grad_b);
}  // namespace logreg

// Grows one tree on the given sample indices with the tree's private random
// stream; used by the forest and directly testable.
DecisionTree train_tree(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                        const std::vector<std::uint32_t>& sample_indices,
                        const Hyperparams& hp, std::uint64_t seed, std::uint64_t tree_index,
                        std::uint32_t n_features);

// Each tree draws from its own (seed, tree_index) stream, so the result is
// independent of n_threads and of scheduling.
RfParams train_forest(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                      const Hyperparams& hp, std::uint64_t seed, std::uint32_t n_features,
                      int n_threads = 1);

// Replays the bootstrap draw train_forest made for one tree.
std::vector<std::uint32_t> forest_bootstrap_indices(const Hyperparams& hp, std::uint64_t seed,
                                                    std::uint64_t tree_index, std::size_t n);

// Binary container, layout documented in the README. Round-trips bit-exactly.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);
std::vector<std::uint8_t> serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(const std::vector<std::uint8_t>& bytes);

}  // namespace moodbench::models

#endif
