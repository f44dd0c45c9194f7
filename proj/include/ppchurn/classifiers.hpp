#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ppchurn/dataset.hpp"
#include "ppchurn/nn.hpp"

namespace ppchurn {

enum class ClassifierKind { NB, LR, KNN, DTree, RF, GB, FNN };

std::string to_string(ClassifierKind k);
ClassifierKind classifier_kind_from_string(const std::string& s);
std::vector<ClassifierKind> all_classifier_kinds();

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::NB;
    std::uint64_t seed = 0;

    int knn_k = 5;
    int tree_max_depth = 8;
    int tree_min_leaf = 5;
    int rf_trees = 100;
    int rf_max_depth = 16;
    int gb_trees = 100;
    double gb_learning_rate = 0.1;
    int gb_depth = 3;
    double lr_learning_rate = 0.1;
    int lr_epochs = 200;
    double lr_l2 = 1e-4;
    std::vector<int> fnn_hidden = {64};
    int fnn_epochs = 50;
    double fnn_batch = 32;
    double fnn_learning_rate = 1e-3;

    static ClassifierSpec make(ClassifierKind k, std::uint64_t seed = 0);
};

class Classifier {
public:
    virtual ~Classifier() = default;
    // rows are examples; y holds 0/1 labels
    virtual void fit(const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y) = 0;
    virtual double predict_proba(const std::vector<double>& row) const = 0;
    // fixed 0.5 threshold; KNN overrides so vote ties go to non-churn
    virtual int predict(const std::vector<double>& row) const {
        return predict_proba(row) >= 0.5 ? 1 : 0;
    }
    virtual ClassifierKind kind() const = 0;
};

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec);
std::unique_ptr<Classifier> fit_classifier(const ClassifierSpec& spec,
                                           const Dataset& train);

std::vector<std::vector<double>> feature_rows(const Dataset& d);
std::vector<double> score_dataset(const Classifier& c, const Dataset& d);
std::vector<int> predict_dataset(const Classifier& c, const Dataset& d);

// softmax-normalized log-posterior churn score, computed in log space
double gaussian_nb_posterior(const double priors[2],
                             const std::vector<double> means[2],
                             const std::vector<double> vars[2],
                             const std::vector<double>& row);

double gini_impurity(long count0, long count1);

}  // namespace ppchurn
