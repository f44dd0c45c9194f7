#pragma once

#include <string>

#include "ppchurn/dataset.hpp"
#include "ppchurn/nn.hpp"

namespace ppchurn {

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AccountantMode { Strict, Subsampled };

std::string to_string(AccountantMode m);
AccountantMode accountant_from_string(const std::string& s);

// zCDP -> (epsilon, delta): epsilon = rho + 2*sqrt(rho * ln(1/delta))
double zcdp_to_epsilon(double rho, double delta);

// rho per Gaussian-mechanism step: 1/(2 sigma^2) in strict mode,
// p^2/(2 sigma^2) in subsampled mode.
double per_step_rho(double sigma, double sampling_rate, AccountantMode mode);

double privacy_compose(long steps, double sigma, double sampling_rate,
                       AccountantMode mode, double delta);

// Cumulative zCDP cost of the noisy critic steps; training halts before
// epsilon exceeds the budget.
struct PrivacyLedger {
    double rho = 0.0;
    long steps = 0;
    double sigma = 2.0;
    double clip_norm = 1.0;
    double sampling_rate = 1.0;
    AccountantMode mode = AccountantMode::Strict;
    double budget = 10.0;
    double delta = 1e-5;

    double step_rho() const { return per_step_rho(sigma, sampling_rate, mode); }
    double epsilon() const { return zcdp_to_epsilon(rho, delta); }
    bool can_step() const {
        return zcdp_to_epsilon(rho + step_rho(), delta) <= budget;
    }
    void record_step();  // throws BudgetExhausted if the step would overrun
};

// g if ||g||_2 <= C, else g * (C / ||g||_2)
Vector clip_gradient(const Vector& g, double clip_norm);

}  // namespace ppchurn
