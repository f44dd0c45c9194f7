#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ppchurn/metrics.hpp"
#include "ppchurn/ranking.hpp"
#include "ppchurn/wilcoxon.hpp"

using namespace ppchurn;

namespace {

// independent pairwise-concordance AUC oracle
double auc_oracle(const std::vector<int>& y, const std::vector<double>& s) {
    double num = 0.0;
    long pairs = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[i] != 1 || y[j] != 0) continue;
            ++pairs;
            if (s[i] > s[j]) num += 1.0;
            else if (s[i] == s[j]) num += 0.5;
        }
    return num / pairs;
}

// independent exact Wilcoxon two-sided p by sign enumeration
double wilcoxon_oracle_p(std::vector<double> diffs) {
    std::erase(diffs, 0.0);
    const int n = static_cast<int>(diffs.size());
    std::vector<double> mag(n);
    for (int i = 0; i < n; ++i) mag[i] = std::fabs(diffs[i]);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return mag[a] < mag[b]; });
    std::vector<double> rank(n);
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && mag[order[j]] == mag[order[i]]) ++j;
        const double r = (i + 1 + j) / 2.0;
        for (int k = i; k < j; ++k) rank[order[k]] = r;
        i = j;
    }
    double w_plus = 0.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
        total += rank[i];
        if (diffs[i] > 0) w_plus += rank[i];
    }
    const double w_obs = std::min(w_plus, total - w_plus);
    long count = 0;
    for (long mask = 0; mask < (1L << n); ++mask) {
        double w = 0.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1L << i)) w += rank[i];
        if (w <= w_obs + 1e-9) ++count;
    }
    return std::min(1.0, 2.0 * count / std::pow(2.0, n));
}

}  // namespace

TEST_CASE("confusion matrix") {
    ConfusionMatrix cm = confusion_matrix({1, 0}, {1, 0});
    CHECK(cm.tp == 1);
    CHECK(cm.tn == 1);
    CHECK(cm.fp == 0);
    CHECK(cm.fn == 0);

    cm = confusion_matrix({1, 0}, {0, 1});
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 1);

    cm = confusion_matrix({1, 1, 1, 0, 0, 0, 0, 0, 1, 0},
                          {1, 1, 1, 0, 0, 0, 0, 0, 0, 1});
    CHECK(cm.tp == 3);
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 5);
    CHECK(cm.total() == 10);

    CHECK_THROWS_AS(confusion_matrix({1}, {1, 0}), DataError);
}

TEST_CASE("classification metrics") {
    const MetricSet m = classification_metrics({3, 5, 1, 1});
    CHECK(*m.accuracy == doctest::Approx(0.8));
    CHECK(*m.specificity == doctest::Approx(5.0 / 6.0));
    CHECK(*m.precision == doctest::Approx(0.75));
    CHECK(*m.recall == doctest::Approx(0.75));
    CHECK(*m.f_measure == doctest::Approx(0.75));

    const MetricSet perfect = classification_metrics({4, 6, 0, 0});
    CHECK(*perfect.accuracy == doctest::Approx(1.0));
    CHECK(*perfect.specificity == doctest::Approx(1.0));
    CHECK(*perfect.precision == doctest::Approx(1.0));
    CHECK(*perfect.recall == doctest::Approx(1.0));
    CHECK(*perfect.f_measure == doctest::Approx(1.0));

    // fp = tn = 0 -> specificity undefined, not zero
    const MetricSet und = classification_metrics({3, 0, 0, 1});
    CHECK(!und.specificity.has_value());
    CHECK(und.accuracy.has_value());

    // f undefined when precision + recall are both zero
    const MetricSet f0 = classification_metrics({0, 5, 1, 1});
    CHECK(*f0.precision == doctest::Approx(0.0));
    CHECK(*f0.recall == doctest::Approx(0.0));
    CHECK(!f0.f_measure.has_value());
}

TEST_CASE("roc auc") {
    CHECK(roc_auc({1, 1, 0, 0}, {0.9, 0.8, 0.2, 0.1}) == doctest::Approx(1.0));
    CHECK(roc_auc({1, 0, 1, 0}, {0.5, 0.5, 0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(roc_auc({1, 0, 1, 0}, {0.9, 0.8, 0.7, 0.6}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(roc_auc({1, 1}, {0.5, 0.6}), DataError);
}

TEST_CASE("roc auc matches the concordance oracle") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0, 1);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 3 + static_cast<int>(rng() % 48);
        std::vector<int> y(n);
        std::vector<double> s(n);
        y[0] = 0;
        y[1] = 1;
        for (int i = 2; i < n; ++i) y[i] = static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i)
            s[i] = rng() % 4 == 0 ? 0.5 : uni(rng);  // force some ties
        CHECK(roc_auc(y, s) == doctest::Approx(auc_oracle(y, s)).epsilon(1e-12));
    }
}

TEST_CASE("auc invariance under increasing transforms") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0, 1);
    std::vector<int> y;
    std::vector<double> s, s2;
    for (int i = 0; i < 60; ++i) {
        y.push_back(static_cast<int>(rng() % 2));
        s.push_back(uni(rng));
    }
    y[0] = 0;
    y[1] = 1;
    for (double v : s) s2.push_back(std::exp(3.0 * v) + v);
    CHECK(roc_auc(y, s) == doctest::Approx(roc_auc(y, s2)).epsilon(1e-12));
}

TEST_CASE("wilcoxon 1..5 exact") {
    std::vector<std::pair<double, double>> pairs;
    for (int i = 1; i <= 5; ++i) pairs.push_back({static_cast<double>(i), 0.0});
    const WilcoxonResult w = wilcoxon_signed_rank(pairs);
    CHECK(w.exact);
    CHECK(w.w_minus == doctest::Approx(0.0));
    CHECK(w.w_plus == doctest::Approx(15.0));
    CHECK(w.p == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(w.n_used == 5);
    CHECK(!w.reject);  // 0.0625 > 0.05
}

TEST_CASE("wilcoxon degenerate input") {
    std::vector<std::pair<double, double>> pairs = {{1, 1}, {2, 2}};
    CHECK_THROWS_AS(wilcoxon_signed_rank(pairs), DataError);
}

TEST_CASE("wilcoxon exact path equals the enumeration oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1, 1);
    for (int n = 1; n <= 12; ++n)
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> diffs;
            std::vector<std::pair<double, double>> pairs;
            for (int i = 0; i < n; ++i) {
                double d = uni(rng);
                if (rng() % 5 == 0 && !diffs.empty()) d = std::fabs(diffs[0]);  // tie
                if (d == 0.0) d = 0.5;
                diffs.push_back(d);
                pairs.push_back({d, 0.0});
            }
            const WilcoxonResult w = wilcoxon_signed_rank(pairs);
            CHECK(w.exact);
            CHECK(w.p == doctest::Approx(wilcoxon_oracle_p(diffs)).epsilon(1e-12));
        }
}

TEST_CASE("wilcoxon normal approximation formula") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.1, 5.0);
    std::vector<std::pair<double, double>> pairs;
    const int n = 30;
    for (int i = 0; i < n; ++i) {
        const double mag = uni(rng) + i * 1e-3;
        pairs.push_back({rng() % 3 == 0 ? -mag : mag, 0.0});
    }
    const WilcoxonResult w = wilcoxon_signed_rank(pairs);
    CHECK(!w.exact);
    const double expect_z =
        (w.w_plus - n * (n + 1) / 4.0) /
        std::sqrt(n * (n + 1) * (2.0 * n + 1) / 24.0);
    CHECK(w.z == doctest::Approx(expect_z).epsilon(1e-12));
    CHECK(w.p == doctest::Approx(std::erfc(std::fabs(expect_z) / std::sqrt(2.0)))
                     .epsilon(1e-12));
}

TEST_CASE("wilcoxon sign symmetry") {
    std::vector<std::pair<double, double>> a, b;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-2, 2);
    for (int i = 0; i < 20; ++i) {
        const double d = uni(rng) + 2.5e-7;
        a.push_back({d, 0.0});
        b.push_back({-d, 0.0});
    }
    CHECK(wilcoxon_signed_rank(a).p == doctest::Approx(wilcoxon_signed_rank(b).p)
                                           .epsilon(1e-12));
}

TEST_CASE("average rank") {
    const RankTable single = average_rank({"only"}, {{0.7, 0.4}});
    CHECK(single.average[0] == doctest::Approx(1.0));

    // best everywhere -> rank 1 on all datasets
    const RankTable t = average_rank({"a", "b", "c"},
                                     {{0.9, 0.8, 0.95}, {0.5, 0.7, 0.6}, {0.4, 0.7, 0.2}});
    CHECK(t.average[0] == doctest::Approx(1.0));
    CHECK(t.ranks[1][1] == doctest::Approx(2.5));  // b and c tied on dataset 2
    CHECK(t.ranks[1][2] == doctest::Approx(2.5));

    // per-dataset ranks of k models sum to k(k+1)/2
    for (const auto& row : t.ranks) {
        double sum = 0;
        for (double r : row) sum += r;
        CHECK(sum == doctest::Approx(6.0));
    }
}

TEST_CASE("average rank scale invariance and direction") {
    const std::vector<std::vector<double>> scores = {{0.2, 0.9}, {0.5, 0.1}, {0.8, 0.4}};
    std::vector<std::vector<double>> scaled = scores;
    for (auto& m : scaled)
        for (std::size_t d = 0; d < m.size(); ++d) m[d] *= (d == 0 ? 7.0 : 0.3);
    const RankTable a = average_rank({"x", "y", "z"}, scores);
    const RankTable b = average_rank({"x", "y", "z"}, scaled);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(a.average[i] == doctest::Approx(b.average[i]));

    const RankTable lower = average_rank({"x", "y", "z"}, scores, false);
    CHECK(lower.ranks[0][0] == doctest::Approx(3.0 + 1.0 - a.ranks[0][0]));
}
