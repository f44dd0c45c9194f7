#include "ppchurn/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace ppchurn {

namespace {

constexpr double kVarianceFloor = 1e-9;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_training_input(const std::vector<std::vector<double>>& x,
                          const std::vector<int>& y) {
    if (x.empty() || x.size() != y.size())
        throw DataError("classifier fit: empty data or label length mismatch");
    long pos = 0;
    for (int v : y) pos += v;
    if (pos == 0 || pos == static_cast<long>(y.size()))
        throw DataError("classifier fit: single-class training data");
    for (const auto& row : x)
        if (row.size() != x.front().size())
            throw DataError("classifier fit: ragged feature rows");
}

void check_width(std::size_t expected, const std::vector<double>& row) {
    if (row.size() != expected)
        throw DataError("predict: row width " + std::to_string(row.size()) +
                        " does not match training width " + std::to_string(expected));
}

}  // namespace

std::string to_string(ClassifierKind k) {
    switch (k) {
        case ClassifierKind::NB: return "nb";
        case ClassifierKind::LR: return "lr";
        case ClassifierKind::KNN: return "knn";
        case ClassifierKind::DTree: return "dtree";
        case ClassifierKind::RF: return "rf";
        case ClassifierKind::GB: return "gb";
        case ClassifierKind::FNN: return "fnn";
    }
    throw std::logic_error("bad ClassifierKind");
}

ClassifierKind classifier_kind_from_string(const std::string& s) {
    for (auto k : all_classifier_kinds())
        if (to_string(k) == s) return k;
    throw DataError("unknown classifier kind: " + s);
}

std::vector<ClassifierKind> all_classifier_kinds() {
    return {ClassifierKind::NB, ClassifierKind::LR,  ClassifierKind::KNN,
            ClassifierKind::DTree, ClassifierKind::RF, ClassifierKind::GB,
            ClassifierKind::FNN};
}

ClassifierSpec ClassifierSpec::make(ClassifierKind k, std::uint64_t seed) {
    ClassifierSpec s;
    s.kind = k;
    s.seed = seed;
    return s;
}

double gini_impurity(long count0, long count1) {
    if (count0 < 0 || count1 < 0 || (count0 == 0 && count1 == 0))
        throw DataError("gini_impurity: invalid counts");
    const double n = static_cast<double>(count0 + count1);
    const double p0 = static_cast<double>(count0) / n;
    const double p1 = static_cast<double>(count1) / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

double gaussian_nb_posterior(const double priors[2], const std::vector<double> means[2],
                             const std::vector<double> vars[2],
                             const std::vector<double>& row) {
    double logp[2];
    for (int c = 0; c < 2; ++c) {
        logp[c] = std::log(priors[c]);
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double var = std::max(vars[c][j], kVarianceFloor);
            const double dv = row[j] - means[c][j];
            logp[c] += -0.5 * std::log(2.0 * M_PI * var) - dv * dv / (2.0 * var);
        }
    }
    const double m = std::max(logp[0], logp[1]);
    const double e0 = std::exp(logp[0] - m), e1 = std::exp(logp[1] - m);
    return e1 / (e0 + e1);
}

// ---------------------------------------------------------------- NB

namespace {

class GaussianNb final : public Classifier {
public:
    void fit(const std::vector<std::vector<double>>& x,
             const std::vector<int>& y) override {
        check_training_input(x, y);
        const std::size_t d = x.front().size();
        long counts[2] = {0, 0};
        for (int v : y) counts[v]++;
        for (int c = 0; c < 2; ++c) {
            priors_[c] = static_cast<double>(counts[c]) / static_cast<double>(y.size());
            means_[c].assign(d, 0.0);
            vars_[c].assign(d, 0.0);
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) means_[y[i]][j] += x[i][j];
        for (int c = 0; c < 2; ++c)
            for (std::size_t j = 0; j < d; ++j)
                means_[c][j] /= static_cast<double>(counts[c]);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const double dv = x[i][j] - means_[y[i]][j];
                vars_[y[i]][j] += dv * dv;
            }
        for (int c = 0; c < 2; ++c)
            for (std::size_t j = 0; j < d; ++j) {
                vars_[c][j] /= static_cast<double>(counts[c]);
                vars_[c][j] = std::max(vars_[c][j], kVarianceFloor);
            }
        width_ = d;
    }

    double predict_proba(const std::vector<double>& row) const override {
        check_width(width_, row);
        return gaussian_nb_posterior(priors_, means_, vars_, row);
    }

    ClassifierKind kind() const override { return ClassifierKind::NB; }

private:
    double priors_[2] = {0.5, 0.5};
    std::vector<double> means_[2], vars_[2];
    std::size_t width_ = 0;
};

// ---------------------------------------------------------------- LR

class LogisticRegression final : public Classifier {
public:
    explicit LogisticRegression(const ClassifierSpec& spec) : spec_(spec) {}

    void fit(const std::vector<std::vector<double>>& x,
             const std::vector<int>& y) override {
        check_training_input(x, y);
        const std::size_t d = x.front().size(), n = x.size();
        w_.assign(d, 0.0);
        b_ = 0.0;
        std::vector<double> grad(d);
        for (int epoch = 0; epoch < spec_.lr_epochs; ++epoch) {
            std::fill(grad.begin(), grad.end(), 0.0);
            double grad_b = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double z = b_;
                for (std::size_t j = 0; j < d; ++j) z += w_[j] * x[i][j];
                const double err = sigmoid(z) - static_cast<double>(y[i]);
                for (std::size_t j = 0; j < d; ++j) grad[j] += err * x[i][j];
                grad_b += err;
            }
            const double inv_n = 1.0 / static_cast<double>(n);
            for (std::size_t j = 0; j < d; ++j)
                w_[j] -= spec_.lr_learning_rate * (grad[j] * inv_n + spec_.lr_l2 * w_[j]);
            b_ -= spec_.lr_learning_rate * grad_b * inv_n;
        }
    }

    double predict_proba(const std::vector<double>& row) const override {
        check_width(w_.size(), row);
        double z = b_;
        for (std::size_t j = 0; j < row.size(); ++j) z += w_[j] * row[j];
        return sigmoid(z);
    }

    ClassifierKind kind() const override { return ClassifierKind::LR; }

private:
    ClassifierSpec spec_;
    std::vector<double> w_;
    double b_ = 0.0;
};

// ---------------------------------------------------------------- KNN

class Knn final : public Classifier {
public:
    explicit Knn(const ClassifierSpec& spec) : k_(spec.knn_k) {}

    void fit(const std::vector<std::vector<double>>& x,
             const std::vector<int>& y) override {
        check_training_input(x, y);
        x_ = x;
        y_ = y;
    }

    double predict_proba(const std::vector<double>& row) const override {
        check_width(x_.front().size(), row);
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < row.size(); ++j) {
                const double dv = x_[i][j] - row[j];
                d2 += dv * dv;
            }
            dist.emplace_back(d2, i);
        }
        const std::size_t k = std::min<std::size_t>(k_, dist.size());
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        long churn = 0;
        for (std::size_t i = 0; i < k; ++i) churn += y_[dist[i].second];
        return static_cast<double>(churn) / static_cast<double>(k);
    }

    // vote ties break toward non-churn
    int predict(const std::vector<double>& row) const override {
        return predict_proba(row) > 0.5 ? 1 : 0;
    }

    ClassifierKind kind() const override { return ClassifierKind::KNN; }

private:
    std::size_t k_;
    std::vector<std::vector<double>> x_;
    std::vector<int> y_;
};

// ---------------------------------------------------------------- trees

struct TreeNode {
    bool leaf = true;
    int feature = -1;
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;  // class-1 probability (or regression value for GB)
    long count0 = 0, count1 = 0;
};

struct Tree {
    std::vector<TreeNode> nodes;

    double eval(const std::vector<double>& row) const {
        int i = 0;
        while (!nodes[i].leaf)
            i = row[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left
                                                           : nodes[i].right;
        return nodes[i].value;
    }
    int leaf_index(const std::vector<double>& row) const {
        int i = 0;
        while (!nodes[i].leaf)
            i = row[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left
                                                            : nodes[i].right;
        return i;
    }
};

struct SplitResult {
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;  // impurity decrease / SSE decrease
};

// Gini-gain split over the given feature subset (empty = all features).
SplitResult best_gini_split(const std::vector<std::vector<double>>& x,
                            const std::vector<int>& y,
                            const std::vector<std::size_t>& idx,
                            const std::vector<int>& features, long min_leaf) {
    SplitResult best;
    long total0 = 0, total1 = 0;
    for (std::size_t i : idx) (y[i] ? total1 : total0)++;
    const double n = static_cast<double>(idx.size());
    const double parent = gini_impurity(total0, total1);

    std::vector<std::pair<double, int>> vals(idx.size());
    for (int f : features) {
        for (std::size_t k = 0; k < idx.size(); ++k)
            vals[k] = {x[idx[k]][f], y[idx[k]]};
        std::sort(vals.begin(), vals.end());
        long l0 = 0, l1 = 0;
        for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
            (vals[k].second ? l1 : l0)++;
            if (vals[k].first == vals[k + 1].first) continue;
            const long left_n = l0 + l1;
            const long right_n = static_cast<long>(vals.size()) - left_n;
            if (left_n < min_leaf || right_n < min_leaf) continue;
            const double gain =
                parent -
                (static_cast<double>(left_n) / n) * gini_impurity(l0, l1) -
                (static_cast<double>(right_n) / n) *
                    gini_impurity(total0 - l0, total1 - l1);
            if (gain > best.score + 1e-12) {
                best.score = gain;
                best.feature = f;
                best.threshold = 0.5 * (vals[k].first + vals[k + 1].first);
            }
        }
    }
    return best;
}

class TreeBuilder {
public:
    TreeBuilder(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                int max_depth, long min_leaf, int feature_subsample, Rng* rng)
        : x_(x), y_(y), max_depth_(max_depth), min_leaf_(min_leaf),
          feature_subsample_(feature_subsample), rng_(rng) {}

    Tree build(const std::vector<std::size_t>& idx) {
        Tree t;
        grow(t, idx, 0);
        return t;
    }

private:
    int grow(Tree& t, const std::vector<std::size_t>& idx, int depth) {
        const int node_id = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        long c0 = 0, c1 = 0;
        for (std::size_t i : idx) (y_[i] ? c1 : c0)++;
        t.nodes[node_id].count0 = c0;
        t.nodes[node_id].count1 = c1;
        t.nodes[node_id].value =
            static_cast<double>(c1) / static_cast<double>(c0 + c1);
        if (depth >= max_depth_ || c0 == 0 || c1 == 0 ||
            static_cast<long>(idx.size()) < 2 * min_leaf_)
            return node_id;

        const int d = static_cast<int>(x_.front().size());
        std::vector<int> features(d);
        std::iota(features.begin(), features.end(), 0);
        if (feature_subsample_ > 0 && feature_subsample_ < d && rng_) {
            std::shuffle(features.begin(), features.end(), *rng_);
            features.resize(feature_subsample_);
            std::sort(features.begin(), features.end());
        }
        const SplitResult split = best_gini_split(x_, y_, idx, features, min_leaf_);
        if (split.feature < 0) return node_id;

        std::vector<std::size_t> left, right;
        for (std::size_t i : idx)
            (x_[i][split.feature] <= split.threshold ? left : right).push_back(i);
        t.nodes[node_id].leaf = false;
        t.nodes[node_id].feature = split.feature;
        t.nodes[node_id].threshold = split.threshold;
        const int l = grow(t, left, depth + 1);
        const int r = grow(t, right, depth + 1);
        t.nodes[node_id].left = l;
        t.nodes[node_id].right = r;
        return node_id;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<int>& y_;
    int max_depth_;
    long min_leaf_;
    int feature_subsample_;
    Rng* rng_;
};

class DecisionTree final : public Classifier {
public:
    explicit DecisionTree(const ClassifierSpec& spec) : spec_(spec) {}

    void fit(const std::vector<std::vector<double>>& x,
             const std::vector<int>& y) override {
        check_training_input(x, y);
        width_ = x.front().size();
        std::vector<std::size_t> idx(x.size());
        std::iota(idx.begin(), idx.end(), 0);
        TreeBuilder builder(x, y, spec_.tree_max_depth, spec_.tree_min_leaf, 0, nullptr);
        tree_ = builder.build(idx);
    }

    double predict_proba(const std::vector<double>& row) const override {
        check_width(width_, row);
        return tree_.eval(row);
    }

    ClassifierKind kind() const override { return ClassifierKind::DTree; }

    const Tree& tree() const { return tree_; }

private:
    ClassifierSpec spec_;
    Tree tree_;
    std::size_t width_ = 0;
};

class RandomForest final : public Classifier {
public:
    explicit RandomForest(const ClassifierSpec& spec) : spec_(spec) {}

    void fit(const std::vector<std::vector<double>>& x,
             const std::vector<int>& y) override {
        check_training_input(x, y);
        width_ = x.front().size();
        const int d = static_cast<int>(width_);
        const int m = std::max(1, static_cast<int>(std::lround(std::sqrt(d))));
        trees_.clear();
        for (int t = 0; t < spec_.rf_trees; ++t) {
            Rng rng(spec_.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(t));
            std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
            std::vector<std::size_t> idx(x.size());
            for (auto& i : idx) i = pick(rng);
            TreeBuilder builder(x, y, spec_.rf_max_depth, 1, m, &rng);
            trees_.push_back(builder.build(idx));
        }
    }

    double predict_proba(const std::vector<double>& row) const override {
        check_width(width_, row);
        double s = 0.0;
        for (const auto& t : trees_) s += t.eval(row);
        return s / static_cast<double>(trees_.size());
    }

    ClassifierKind kind() const override { return ClassifierKind::RF; }

private:
    ClassifierSpec spec_;
    std::vector<Tree> trees_;
    std::size_t width_ = 0;
};

// regression tree on squared error, for the boosting stages
struct RegSplit {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

class RegTreeBuilder {
public:
    RegTreeBuilder(const std::vector<std::vector<double>>& x,
                   const std::vector<double>& target, int max_depth, long min_leaf)
        : x_(x), target_(target), max_depth_(max_depth), min_leaf_(min_leaf) {}

    Tree build(const std::vector<std::size_t>& idx) {
        Tree t;
        grow(t, idx, 0);
        return t;
    }

private:
    int grow(Tree& t, const std::vector<std::size_t>& idx, int depth) {
        const int node_id = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        double sum = 0.0;
        for (std::size_t i : idx) sum += target_[i];
        t.nodes[node_id].value = sum / static_cast<double>(idx.size());
        if (depth >= max_depth_ || static_cast<long>(idx.size()) < 2 * min_leaf_)
            return node_id;

        RegSplit best;
        const int d = static_cast<int>(x_.front().size());
        std::vector<std::pair<double, double>> vals(idx.size());
        for (int f = 0; f < d; ++f) {
            for (std::size_t k = 0; k < idx.size(); ++k)
                vals[k] = {x_[idx[k]][f], target_[idx[k]]};
            std::sort(vals.begin(), vals.end());
            double left_sum = 0.0;
            const double total = sum;
            for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                left_sum += vals[k].second;
                if (vals[k].first == vals[k + 1].first) continue;
                const long ln = static_cast<long>(k) + 1;
                const long rn = static_cast<long>(vals.size()) - ln;
                if (ln < min_leaf_ || rn < min_leaf_) continue;
                const double right_sum = total - left_sum;
                const double gain =
                    left_sum * left_sum / static_cast<double>(ln) +
                    right_sum * right_sum / static_cast<double>(rn) -
                    total * total / static_cast<double>(vals.size());
                if (gain > best.gain + 1e-12) {
                    best.gain = gain;
                    best.feature = f;
                    best.threshold = 0.5 * (vals[k].first + vals[k + 1].first);
                }
            }
        }
        if (best.feature < 0) return node_id;
        std::vector<std::size_t> left, right;
        for (std::size_t i : idx)
            (x_[i][best.feature] <= best.threshold ? left : right).push_back(i);
        t.nodes[node_id].leaf = false;
        t.nodes[node_id].feature = best.feature;
        t.nodes[node_id].threshold = best.threshold;
        const int l = grow(t, left, depth + 1);
        const int r = grow(t, right, depth + 1);
        t.nodes[node_id].left = l;
        t.nodes[node_id].right = r;
        return node_id;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<double>& target_;
    int max_depth_;
    long min_leaf_;
};

class GradientBoosting final : public Classifier {
public:
    explicit GradientBoosting(const ClassifierSpec& spec) : spec_(spec) {}

    void fit(const std::vector<std::vector<double>>& x,
             const std::vector<int>& y) override {
        check_training_input(x, y);
        width_ = x.front().size();
        const std::size_t n = x.size();
        long pos = 0;
        for (int v : y) pos += v;
        const double p0 = static_cast<double>(pos) / static_cast<double>(n);
        f0_ = std::log(p0 / (1.0 - p0));

        std::vector<double> f(n, f0_), residual(n), leaf_num, leaf_den;
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        trees_.clear();
        for (int m = 0; m < spec_.gb_trees; ++m) {
            for (std::size_t i = 0; i < n; ++i)
                residual[i] = static_cast<double>(y[i]) - sigmoid(f[i]);
            RegTreeBuilder builder(x, residual, spec_.gb_depth, spec_.tree_min_leaf);
            Tree t = builder.build(idx);
            // Newton leaf values on the logistic loss
            leaf_num.assign(t.nodes.size(), 0.0);
            leaf_den.assign(t.nodes.size(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const int leaf = t.leaf_index(x[i]);
                const double p = sigmoid(f[i]);
                leaf_num[leaf] += residual[i];
                leaf_den[leaf] += p * (1.0 - p);
            }
            for (std::size_t j = 0; j < t.nodes.size(); ++j)
                if (t.nodes[j].leaf)
                    t.nodes[j].value =
                        leaf_den[j] > 1e-12 ? leaf_num[j] / leaf_den[j] : 0.0;
            for (std::size_t i = 0; i < n; ++i)
                f[i] += spec_.gb_learning_rate * t.eval(x[i]);
            trees_.push_back(std::move(t));
        }
    }

    double predict_proba(const std::vector<double>& row) const override {
        check_width(width_, row);
        double f = f0_;
        for (const auto& t : trees_) f += spec_.gb_learning_rate * t.eval(row);
        return sigmoid(f);
    }

    ClassifierKind kind() const override { return ClassifierKind::GB; }

private:
    ClassifierSpec spec_;
    std::vector<Tree> trees_;
    double f0_ = 0.0;
    std::size_t width_ = 0;
};

// ---------------------------------------------------------------- FNN

class FeedForwardNet final : public Classifier {
public:
    explicit FeedForwardNet(const ClassifierSpec& spec) : spec_(spec) {}

    void fit(const std::vector<std::vector<double>>& x,
             const std::vector<int>& y) override {
        check_training_input(x, y);
        width_ = x.front().size();
        const std::size_t n = x.size();
        Rng rng(spec_.seed ^ 0xfeedf00dULL);
        net_ = Mlp::make(static_cast<int>(width_), spec_.fnn_hidden, 1, rng);
        Optimizer opt{Optimizer::Kind::Sgd, spec_.fnn_learning_rate};
        opt.init(net_);

        Matrix data(width_, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < width_; ++j) data(j, i) = x[i][j];

        const long batch = std::max<long>(1, static_cast<long>(spec_.fnn_batch));
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (int epoch = 0; epoch < spec_.fnn_epochs; ++epoch) {
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t start = 0; start < n; start += batch) {
                const long b =
                    static_cast<long>(std::min<std::size_t>(batch, n - start));
                Matrix xb(width_, b);
                Vector yb(b);
                for (long k = 0; k < b; ++k) {
                    xb.col(k) = data.col(static_cast<long>(order[start + k]));
                    yb(k) = static_cast<double>(y[order[start + k]]);
                }
                ForwardCache cache;
                const Matrix z = mlp_forward(net_, xb, &cache);
                Matrix d_out(1, b);
                for (long k = 0; k < b; ++k)
                    d_out(0, k) = (sigmoid(z(0, k)) - yb(k)) / static_cast<double>(b);
                auto grads = zero_grads(net_);
                mlp_backward(net_, cache, d_out, &grads);
                opt.step(net_, grads);
            }
        }
    }

    double predict_proba(const std::vector<double>& row) const override {
        check_width(width_, row);
        Matrix xb(width_, 1);
        for (std::size_t j = 0; j < width_; ++j) xb(static_cast<long>(j), 0) = row[j];
        return sigmoid(mlp_forward(net_, xb)(0, 0));
    }

    ClassifierKind kind() const override { return ClassifierKind::FNN; }

private:
    ClassifierSpec spec_;
    Mlp net_;
    std::size_t width_ = 0;
};

}  // namespace

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec) {
    switch (spec.kind) {
        case ClassifierKind::NB: return std::make_unique<GaussianNb>();
        case ClassifierKind::LR: return std::make_unique<LogisticRegression>(spec);
        case ClassifierKind::KNN: return std::make_unique<Knn>(spec);
        case ClassifierKind::DTree: return std::make_unique<DecisionTree>(spec);
        case ClassifierKind::RF: return std::make_unique<RandomForest>(spec);
        case ClassifierKind::GB: return std::make_unique<GradientBoosting>(spec);
        case ClassifierKind::FNN: return std::make_unique<FeedForwardNet>(spec);
    }
    throw std::logic_error("bad ClassifierKind");
}

std::vector<std::vector<double>> feature_rows(const Dataset& d) {
    const int label = d.schema.label_index();
    std::vector<std::vector<double>> out;
    out.reserve(d.n_rows());
    for (const auto& row : d.rows) {
        std::vector<double> r;
        r.reserve(row.size() - 1);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (static_cast<int>(j) != label) r.push_back(row[j]);
        out.push_back(std::move(r));
    }
    return out;
}

std::unique_ptr<Classifier> fit_classifier(const ClassifierSpec& spec,
                                           const Dataset& train) {
    auto c = make_classifier(spec);
    c->fit(feature_rows(train), train.labels());
    return c;
}

std::vector<double> score_dataset(const Classifier& c, const Dataset& d) {
    std::vector<double> out;
    out.reserve(d.n_rows());
    for (const auto& row : feature_rows(d)) out.push_back(c.predict_proba(row));
    return out;
}

std::vector<int> predict_dataset(const Classifier& c, const Dataset& d) {
    std::vector<int> out;
    out.reserve(d.n_rows());
    for (const auto& row : feature_rows(d)) out.push_back(c.predict(row));
    return out;
}

}  // namespace ppchurn
