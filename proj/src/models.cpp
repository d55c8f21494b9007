#include "moodbench/models.hpp"

#include <algorithm>
#include <cmath>

#include "moodbench/errors.hpp"
#include "moodbench/rng.hpp"

namespace moodbench::models {

namespace {

constexpr std::uint64_t kSvmEpochStream = 0x73766d0000000000ULL;  // "svm"

void validate_training_set(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                           std::uint32_t dim) {
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
    if (x.size() < 2) throw Error("need at least two training samples");
    for (const auto& v : x)
        if (v.dim != dim) throw DimensionMismatch(dim, v.dim);
    bool has[2] = {false, false};
    for (Label label : y) has[class_index(label)] = true;
    if (!has[0]) throw MissingClass(corpus::label_name(Label::Depressive));
    if (!has[1]) throw MissingClass(corpus::label_name(Label::NonDepressive));
}

double dot_sparse(const std::vector<double>& w, const SparseVector& x) {
    double sum = 0.0;
    for (const auto& [fid, count] : x.pairs) sum += w[fid] * count;
    return sum;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

NbParams train_nb(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                  const Hyperparams& hp, std::uint32_t dim) {
    NbParams params;
    params.alpha = hp.nb_alpha;

    std::array<std::vector<double>, 2> counts{std::vector<double>(dim, 0.0),
                                              std::vector<double>(dim, 0.0)};
    std::array<double, 2> total{0.0, 0.0};
    std::array<std::size_t, 2> n_docs{0, 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        int c = class_index(y[i]);
        ++n_docs[c];
        for (const auto& [fid, count] : x[i].pairs) {
            counts[c][fid] += count;
            total[c] += count;
        }
    }
    const double n = static_cast<double>(x.size());
    for (int c = 0; c < 2; ++c) {
        params.log_prior[c] = std::log(static_cast<double>(n_docs[c]) / n);
        params.log_likelihood[c].resize(dim);
        const double denom = total[c] + params.alpha * static_cast<double>(dim);
        for (std::uint32_t f = 0; f < dim; ++f)
            params.log_likelihood[c][f] = std::log((counts[c][f] + params.alpha) / denom);
    }
    return params;
}

LrParams train_lr(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                  const Hyperparams& hp, std::uint32_t dim) {
    std::vector<double> targets(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        targets[i] = y[i] == Label::Depressive ? 1.0 : 0.0;

    LrParams params;
    params.weights.assign(dim, 0.0);
    params.bias = 0.0;
    params.loss_history.push_back(
        logreg::loss(x, targets, params.weights, params.bias, hp.lr_l2_lambda));

    std::vector<double> grad_w(dim);
    double grad_b = 0.0;
    for (std::uint32_t epoch = 0; epoch < hp.lr_max_epochs; ++epoch) {
        logreg::gradient(x, targets, params.weights, params.bias, hp.lr_l2_lambda, grad_w,
                         grad_b);
        const double step = hp.lr_learning_rate / (1.0 + hp.lr_decay * epoch);
        for (std::uint32_t f = 0; f < dim; ++f) params.weights[f] -= step * grad_w[f];
        params.bias -= step * grad_b;

        const double loss =
            logreg::loss(x, targets, params.weights, params.bias, hp.lr_l2_lambda);
        const double delta = std::abs(params.loss_history.back() - loss);
        params.loss_history.push_back(loss);
        if (delta < hp.lr_tol) break;
    }
    return params;
}

// Primal hinge-loss SGD with step 1/(lambda*t). The bias rides along as an
// always-on virtual feature so it shares the same shrinkage.
SvmParams train_svm(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                    const Hyperparams& hp, std::uint64_t seed, std::uint32_t dim) {
    std::vector<double> targets(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        targets[i] = y[i] == Label::Depressive ? 1.0 : -1.0;

    std::vector<double> w(dim + 1, 0.0);  // w[dim] is the bias slot
    double scale = 1.0;
    const double lambda = hp.svm_l2_lambda;
    std::uint64_t t = 0;

    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::uint32_t epoch = 0; epoch < hp.svm_epochs; ++epoch) {
        Rng rng = Rng::derive(seed, kSvmEpochStream | epoch);
        rng.shuffle(order);
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            scale *= 1.0 - eta * lambda;
            if (scale < 1e-9) {
                for (double& v : w) v *= scale;
                scale = 1.0;
            }
            const double margin =
                targets[i] * scale * (dot_sparse(w, x[i]) + w[dim]);
            if (margin < 1.0) {
                const double boost = eta * targets[i] / scale;
                for (const auto& [fid, count] : x[i].pairs) w[fid] += boost * count;
                w[dim] += boost;
            }
        }
    }

    SvmParams params;
    params.weights.assign(w.begin(), w.begin() + dim);
    for (double& v : params.weights) v *= scale;
    params.bias = w[dim] * scale;
    return params;
}

}  // namespace

const char* kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::NaiveBayes: return "nb";
        case ModelKind::LogisticRegression: return "lr";
        case ModelKind::LinearSvm: return "svm";
        case ModelKind::RandomForest: return "rf";
    }
    return "nb";
}

ModelKind kind_from_name(const std::string& name) {
    if (name == "nb") return ModelKind::NaiveBayes;
    if (name == "lr") return ModelKind::LogisticRegression;
    if (name == "svm") return ModelKind::LinearSvm;
    if (name == "rf") return ModelKind::RandomForest;
    throw Error("unknown model kind: " + name);
}

const char* kind_display_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::NaiveBayes: return "Naive Bayes";
        case ModelKind::LogisticRegression: return "Logistic Regression";
        case ModelKind::LinearSvm: return "SVM";
        case ModelKind::RandomForest: return "Random Forest";
    }
    return "Naive Bayes";
}

namespace logreg {

double loss(const std::vector<SparseVector>& x, const std::vector<double>& y,
            const std::vector<double>& weights, double bias, double l2_lambda) {
    const double n = static_cast<double>(x.size());
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double z = dot_sparse(weights, x[i]) + bias;
        // log(1 + e^-|z|) + max(z,0) - z*y, stable for large |z|
        total += std::log1p(std::exp(-std::abs(z))) + std::max(z, 0.0) - z * y[i];
    }
    double sq = 0.0;
    for (double w : weights) sq += w * w;
    return total / n + 0.5 * l2_lambda * sq;
}

void gradient(const std::vector<SparseVector>& x, const std::vector<double>& y,
              const std::vector<double>& weights, double bias, double l2_lambda,
              std::vector<double>& grad_w, double& grad_b) {
    const double n = static_cast<double>(x.size());
    grad_w.assign(weights.size(), 0.0);
    grad_b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double err = sigmoid(dot_sparse(weights, x[i]) + bias) - y[i];
        for (const auto& [fid, count] : x[i].pairs) grad_w[fid] += err * count;
        grad_b += err;
    }
    for (std::size_t f = 0; f < weights.size(); ++f)
        grad_w[f] = grad_w[f] / n + l2_lambda * weights[f];
    grad_b /= n;
}

}  // namespace logreg

TrainedModel train(ModelKind kind, const std::vector<SparseVector>& x,
                   const std::vector<Label>& y, const Hyperparams& hp, std::uint64_t seed,
                   Vocabulary vocab, int n_threads) {
    const std::uint32_t dim = vocab.size();
    validate_training_set(x, y, dim);

    TrainedModel model;
    model.kind = kind;
    model.vocab = std::move(vocab);
    model.hp = hp;
    model.seed = seed;
    switch (kind) {
        case ModelKind::NaiveBayes:
            model.params = train_nb(x, y, hp, dim);
            break;
        case ModelKind::LogisticRegression:
            model.params = train_lr(x, y, hp, dim);
            break;
        case ModelKind::LinearSvm:
            model.params = train_svm(x, y, hp, seed, dim);
            break;
        case ModelKind::RandomForest:
            model.params = train_forest(x, y, hp, seed, dim, n_threads);
            break;
    }
    return model;
}

std::array<double, 2> nb_log_posteriors(const TrainedModel& model, const SparseVector& x) {
    const auto& nb = std::get<NbParams>(model.params);
    std::array<double, 2> lp = nb.log_prior;
    for (const auto& [fid, count] : x.pairs) {
        lp[0] += count * nb.log_likelihood[0][fid];
        lp[1] += count * nb.log_likelihood[1][fid];
    }
    return lp;
}

double decision_threshold(ModelKind kind) {
    switch (kind) {
        case ModelKind::NaiveBayes:
        case ModelKind::LinearSvm: return 0.0;
        case ModelKind::LogisticRegression:
        case ModelKind::RandomForest: return 0.5;
    }
    return 0.0;
}

double predict_score(const TrainedModel& model, const SparseVector& x) {
    if (x.dim != model.vocab.size()) throw DimensionMismatch(model.vocab.size(), x.dim);
    switch (model.kind) {
        case ModelKind::NaiveBayes: {
            // Accumulated as per-feature differences so mirror-symmetric ties
            // cancel to an exact 0.0 instead of stray ulps.
            const auto& nb = std::get<NbParams>(model.params);
            double margin = nb.log_prior[0] - nb.log_prior[1];
            for (const auto& [fid, count] : x.pairs)
                margin += count * (nb.log_likelihood[0][fid] - nb.log_likelihood[1][fid]);
            return margin;
        }
        case ModelKind::LogisticRegression: {
            const auto& lr = std::get<LrParams>(model.params);
            return sigmoid(dot_sparse(lr.weights, x) + lr.bias);
        }
        case ModelKind::LinearSvm: {
            const auto& svm = std::get<SvmParams>(model.params);
            return dot_sparse(svm.weights, x) + svm.bias;
        }
        case ModelKind::RandomForest: {
            const auto& rf = std::get<RfParams>(model.params);
            std::size_t votes = 0;
            for (const auto& tree : rf.trees)
                if (tree.predict_class(x) == 0) ++votes;
            return static_cast<double>(votes) / static_cast<double>(rf.trees.size());
        }
    }
    return 0.0;
}

Label predict(const TrainedModel& model, const SparseVector& x) {
    if (model.kind == ModelKind::NaiveBayes) {
        // argmax with tie -> Depressive. A tie between distinct likelihood
        // factorizations leaves stray ulps in the margin, so anything within
        // rounding noise of zero counts as a tie.
        const double margin = predict_score(model, x);
        const auto lp = nb_log_posteriors(model, x);
        const double tie_eps = 1e-9 * std::max(1.0, std::abs(lp[0]) + std::abs(lp[1]));
        return margin >= -tie_eps ? Label::Depressive : Label::NonDepressive;
    }
    return predict_score(model, x) >= decision_threshold(model.kind)
               ? Label::Depressive
               : Label::NonDepressive;
}

}  // namespace moodbench::models
