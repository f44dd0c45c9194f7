#include "ppchurn/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "ppchurn/nn.hpp"

namespace ppchurn {

namespace {

std::string fmt(double v, const char* spec = "%.4f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

RawTable simulate_telco(long n, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> norm(0.0, 1.0);

    RawTable t;
    t.header = {"customerID",     "gender",        "SeniorCitizen", "Partner",
                "Dependents",     "tenure",        "PhoneService",  "MultipleLines",
                "InternetService", "OnlineSecurity", "TechSupport",  "StreamingTV",
                "Contract",       "PaperlessBilling", "PaymentMethod",
                "MonthlyCharges", "TotalCharges",  "Churn"};
    t.cells.reserve(n);
    for (long i = 0; i < n; ++i) {
        const bool senior = uni(rng) < 0.16;
        const bool partner = uni(rng) < 0.48;
        const bool dependents = uni(rng) < (partner ? 0.45 : 0.12);
        // tenure: mixture of fresh and long-standing customers
        int tenure;
        if (uni(rng) < 0.35) tenure = static_cast<int>(uni(rng) * 12.0);
        else tenure = static_cast<int>(uni(rng) * uni(rng) * 73.0);
        tenure = std::min(tenure, 72);

        const double contract_u = uni(rng) + 0.012 * tenure;
        const int contract = contract_u < 0.75 ? 0 : (contract_u < 1.15 ? 1 : 2);
        const char* contracts[] = {"Month-to-month", "One year", "Two year"};

        const double inet_u = uni(rng);
        const int internet = inet_u < 0.34 ? 0 : (inet_u < 0.78 ? 1 : 2);  // DSL/Fiber/No
        const char* internets[] = {"DSL", "Fiber optic", "No"};
        const bool has_internet = internet != 2;

        const bool phone = uni(rng) < 0.90;
        const bool multiline = phone && uni(rng) < 0.46;
        const bool online_sec = has_internet && uni(rng) < 0.36;
        const bool tech_support = has_internet && uni(rng) < 0.37;
        const bool streaming = has_internet && uni(rng) < 0.49;
        const bool paperless = uni(rng) < 0.59;

        const double pay_u = uni(rng) + (paperless ? 0.18 : 0.0);
        const int payment = pay_u < 0.30 ? 0 : (pay_u < 0.55 ? 1 : (pay_u < 0.85 ? 2 : 3));
        const char* payments[] = {"Mailed check", "Bank transfer (automatic)",
                                  "Credit card (automatic)", "Electronic check"};

        double monthly = 19.5 + (phone ? 25.0 : 0.0) + (multiline ? 5.0 : 0.0);
        if (internet == 0) monthly += 25.0;
        if (internet == 1) monthly += 45.0;
        monthly += 5.0 * (online_sec + tech_support + streaming);
        monthly += 2.5 * norm(rng);
        const double total = tenure == 0 ? 0.0
                                         : monthly * tenure * (1.0 + 0.08 * norm(rng));

        double effect = 0.0;
        effect += contract == 0 ? 1.9 : (contract == 1 ? 0.1 : -1.9);
        effect += internet == 1 ? 1.3 : (internet == 2 ? -1.2 : 0.0);
        effect += payment == 3 ? 1.0 : (payment == 0 ? 0.35 : 0.0);
        effect += paperless ? 0.5 : 0.0;
        effect += senior ? 0.6 : 0.0;
        effect += dependents ? -0.55 : 0.0;
        effect += tech_support ? -0.9 : 0.0;
        effect += online_sec ? -0.8 : 0.0;
        // early-tenure churn spike, then slow decay
        effect += 2.0 * std::exp(-tenure / 8.0) - 0.045 * tenure;
        // price dissatisfaction at both extremes: bimodal on the raw scale
        effect += (monthly < 45.0 || monthly > 95.0) ? 1.6 : -0.9;
        const double logit = -15.5 + 5.0 * effect;
        const bool churn = uni(rng) < sigmoid(logit);

        std::vector<std::string> row;
        row.push_back("C" + std::to_string(1000000 + i));
        row.push_back(uni(rng) < 0.5 ? "Male" : "Female");
        row.push_back(senior ? "1" : "0");
        row.push_back(partner ? "Yes" : "No");
        row.push_back(dependents ? "Yes" : "No");
        row.push_back(std::to_string(tenure));
        row.push_back(phone ? "Yes" : "No");
        row.push_back(!phone ? "No phone service" : (multiline ? "Yes" : "No"));
        row.push_back(internets[internet]);
        row.push_back(!has_internet ? "No internet service" : (online_sec ? "Yes" : "No"));
        row.push_back(!has_internet ? "No internet service" : (tech_support ? "Yes" : "No"));
        row.push_back(!has_internet ? "No internet service" : (streaming ? "Yes" : "No"));
        row.push_back(contracts[contract]);
        row.push_back(paperless ? "Yes" : "No");
        row.push_back(payments[payment]);
        row.push_back(fmt(monthly, "%.2f"));
        row.push_back(tenure == 0 ? "" : fmt(total, "%.2f"));  // fresh accounts unbilled
        row.push_back(churn ? "Yes" : "No");
        t.cells.push_back(std::move(row));
    }
    return t;
}

RawTable simulate_highdim(long n, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> norm(0.0, 1.0);

    RawTable t;
    t.header = {"customer_id",  "usage_mean",   "minutes_mean", "charge_mean",
                "calls_mean",   "overage_min",  "overage_rev",  "voice_rev",
                "data_rev",     "roam_mean",    "dropped_calls", "region",
                "plan_code",    "handset_model", "has_web",      "is_new",
                "churn"};
    t.cells.reserve(n);
    for (long i = 0; i < n; ++i) {
        const bool churn = uni(rng) < 0.4956;
        const double y = churn ? 1.0 : 0.0;

        std::vector<std::string> row;
        row.push_back("U" + std::to_string(5000000 + i));
        // first five: monotone location shift; next five: heavier churner
        // tails, a non-monotone signal linear models miss on the raw scale
        for (int k = 0; k < 10; ++k) {
            const double z = norm(rng);
            double x;
            if (k < 5) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                x = std::exp(0.8 * z + 0.5 * sign * y);
            } else {
                x = std::exp(0.8 * z * (churn ? 1.9 : 0.9));
            }
            x *= 10.0 + 5.0 * k;
            row.push_back(fmt(x, "%.4f"));
        }
        auto skewed_cat = [&](int n_cats, double strength) {
            double u = uni(rng);
            u = std::pow(u, churn ? 1.0 - strength : 1.0 + strength);
            int c = static_cast<int>(u * n_cats);
            return std::min(c, n_cats - 1);
        };
        row.push_back("R" + std::to_string(skewed_cat(40, 0.25)));
        row.push_back("P" + std::to_string(skewed_cat(15, 0.35)));
        row.push_back("H" + std::to_string(skewed_cat(150, 0.20)));
        row.push_back(uni(rng) < (churn ? 0.35 : 0.55) ? "yes" : "no");
        row.push_back(uni(rng) < (churn ? 0.45 : 0.25) ? "true" : "false");
        row.push_back(churn ? "yes" : "no");
        t.cells.push_back(std::move(row));
    }
    return t;
}

Dataset simulate_gauss_mixture(long n, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> norm(0.0, 1.0);
    Dataset d;
    d.schema.columns = {{"f1", ColumnKind::Numeric, {}},
                        {"f2", ColumnKind::Numeric, {}},
                        {"label", ColumnKind::Label, {}}};
    d.rows.reserve(n);
    for (long i = 0; i < n; ++i) {
        const bool cls = uni(rng) < 0.5;
        const double m1 = cls ? 1.5 : -1.5;
        const double m2 = cls ? -1.0 : 1.0;
        d.rows.push_back({m1 + 0.4 * norm(rng), m2 + 0.4 * norm(rng), cls ? 1.0 : 0.0});
    }
    return d;
}

}  // namespace ppchurn
