#include <cstring>
#include <fstream>
#include <sstream>

#include "moodbench/errors.hpp"
#include "moodbench/models.hpp"
#include "moodbench/rng.hpp"

// Model container, little-endian throughout:
//   magic "MDB1" | u32 version | u8 kind | u64 seed | hyperparams | vocabulary
//   | parameter payload | u64 fnv1a-64 checksum of all preceding bytes.
// Full field order is documented in the README.

namespace moodbench::models {

namespace {

constexpr char kMagic[4] = {'M', 'D', 'B', '1'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
  public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes_.insert(bytes_.end(), s.begin(), s.end());
    }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

  private:
    std::vector<std::uint8_t> bytes_;
};

class Reader {
  public:
    explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::string str() {
        std::uint32_t len = u32();
        need(len);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
        pos_ += len;
        return s;
    }
    std::size_t pos() const { return pos_; }

  private:
    void need(std::size_t n) {
        if (pos_ + n > bytes_.size()) throw CorruptModel("truncated");
    }
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

void write_hyperparams(Writer& w, const Hyperparams& hp) {
    w.f64(hp.nb_alpha);
    w.f64(hp.lr_l2_lambda);
    w.f64(hp.lr_learning_rate);
    w.f64(hp.lr_decay);
    w.u32(hp.lr_max_epochs);
    w.f64(hp.lr_tol);
    w.f64(hp.svm_l2_lambda);
    w.u32(hp.svm_epochs);
    w.u32(hp.rf_n_trees);
    w.i32(hp.rf_max_depth);
    w.u32(hp.rf_min_samples_split);
    w.u32(hp.rf_features_per_split);
    w.u8(hp.rf_bootstrap ? 1 : 0);
}

Hyperparams read_hyperparams(Reader& r) {
    Hyperparams hp;
    hp.nb_alpha = r.f64();
    hp.lr_l2_lambda = r.f64();
    hp.lr_learning_rate = r.f64();
    hp.lr_decay = r.f64();
    hp.lr_max_epochs = r.u32();
    hp.lr_tol = r.f64();
    hp.svm_l2_lambda = r.f64();
    hp.svm_epochs = r.u32();
    hp.rf_n_trees = r.u32();
    hp.rf_max_depth = r.i32();
    hp.rf_min_samples_split = r.u32();
    hp.rf_features_per_split = r.u32();
    hp.rf_bootstrap = r.u8() != 0;
    return hp;
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const TrainedModel& model) {
    Writer w;
    w.u8(kMagic[0]);
    w.u8(kMagic[1]);
    w.u8(kMagic[2]);
    w.u8(kMagic[3]);
    w.u32(kFormatVersion);
    w.u8(static_cast<std::uint8_t>(model.kind));
    w.u64(model.seed);
    write_hyperparams(w, model.hp);

    w.u32(model.vocab.min_df());
    std::ostringstream vocab_text;
    features::serialize_vocabulary(model.vocab, vocab_text);
    w.str(vocab_text.str());  // token<TAB>id lines, sorted by id

    const std::uint32_t dim = model.vocab.size();
    switch (model.kind) {
        case ModelKind::NaiveBayes: {
            const auto& nb = std::get<NbParams>(model.params);
            w.f64(nb.alpha);
            w.f64(nb.log_prior[0]);
            w.f64(nb.log_prior[1]);
            for (int c = 0; c < 2; ++c)
                for (std::uint32_t f = 0; f < dim; ++f) w.f64(nb.log_likelihood[c][f]);
            break;
        }
        case ModelKind::LogisticRegression: {
            const auto& lr = std::get<LrParams>(model.params);
            w.f64(lr.bias);
            for (std::uint32_t f = 0; f < dim; ++f) w.f64(lr.weights[f]);
            w.u32(static_cast<std::uint32_t>(lr.loss_history.size()));
            for (double loss : lr.loss_history) w.f64(loss);
            break;
        }
        case ModelKind::LinearSvm: {
            const auto& svm = std::get<SvmParams>(model.params);
            w.f64(svm.bias);
            for (std::uint32_t f = 0; f < dim; ++f) w.f64(svm.weights[f]);
            break;
        }
        case ModelKind::RandomForest: {
            const auto& rf = std::get<RfParams>(model.params);
            w.u32(static_cast<std::uint32_t>(rf.trees.size()));
            for (const auto& tree : rf.trees) {
                w.u32(static_cast<std::uint32_t>(tree.nodes.size()));
                for (const auto& node : tree.nodes) {
                    w.i32(node.feature);
                    w.f64(node.threshold);
                    w.i32(node.left);
                    w.i32(node.right);
                    w.u32(node.class_counts[0]);
                    w.u32(node.class_counts[1]);
                }
            }
            break;
        }
    }

    std::vector<std::uint8_t> bytes = w.take();
    const std::uint64_t checksum = fnv1a64(bytes.data(), bytes.size());
    Writer tail;
    tail.u64(checksum);
    const std::vector<std::uint8_t> tail_bytes = tail.take();
    bytes.insert(bytes.end(), tail_bytes.begin(), tail_bytes.end());
    return bytes;
}

TrainedModel deserialize_model(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw CorruptModel("bad magic");

    Reader r(bytes);
    r.u32();  // skip past magic
    const std::uint32_t version = r.u32();
    if (version != kFormatVersion) throw VersionMismatch(version);

    if (bytes.size() < 8 + 8) throw CorruptModel("truncated");
    const std::uint64_t stored = [&] {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(bytes[bytes.size() - 8 + i]) << (8 * i);
        return v;
    }();
    if (fnv1a64(bytes.data(), bytes.size() - 8) != stored)
        throw CorruptModel("checksum mismatch");

    TrainedModel model;
    const std::uint8_t kind_byte = r.u8();
    if (kind_byte > 3) throw CorruptModel("unknown model kind");
    model.kind = static_cast<ModelKind>(kind_byte);
    model.seed = r.u64();
    model.hp = read_hyperparams(r);

    const std::uint32_t min_df = r.u32();
    std::istringstream vocab_text(r.str());
    model.vocab = Vocabulary(features::parse_vocabulary(vocab_text).tokens(), min_df);
    const std::uint32_t dim = model.vocab.size();

    switch (model.kind) {
        case ModelKind::NaiveBayes: {
            NbParams nb;
            nb.alpha = r.f64();
            nb.log_prior[0] = r.f64();
            nb.log_prior[1] = r.f64();
            for (int c = 0; c < 2; ++c) {
                nb.log_likelihood[c].resize(dim);
                for (std::uint32_t f = 0; f < dim; ++f) nb.log_likelihood[c][f] = r.f64();
            }
            model.params = std::move(nb);
            break;
        }
        case ModelKind::LogisticRegression: {
            LrParams lr;
            lr.bias = r.f64();
            lr.weights.resize(dim);
            for (std::uint32_t f = 0; f < dim; ++f) lr.weights[f] = r.f64();
            lr.loss_history.resize(r.u32());
            for (double& loss : lr.loss_history) loss = r.f64();
            model.params = std::move(lr);
            break;
        }
        case ModelKind::LinearSvm: {
            SvmParams svm;
            svm.bias = r.f64();
            svm.weights.resize(dim);
            for (std::uint32_t f = 0; f < dim; ++f) svm.weights[f] = r.f64();
            model.params = std::move(svm);
            break;
        }
        case ModelKind::RandomForest: {
            RfParams rf;
            rf.trees.resize(r.u32());
            for (auto& tree : rf.trees) {
                tree.nodes.resize(r.u32());
                for (auto& node : tree.nodes) {
                    node.feature = r.i32();
                    node.threshold = r.f64();
                    node.left = r.i32();
                    node.right = r.i32();
                    node.class_counts[0] = r.u32();
                    node.class_counts[1] = r.u32();
                }
            }
            model.params = std::move(rf);
            break;
        }
    }
    return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    const std::vector<std::uint8_t> bytes = serialize_model(model);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return deserialize_model(bytes);
}

}  // namespace moodbench::models
