#include "ppchurn/privacy.hpp"

#include <cmath>

namespace ppchurn {

std::string to_string(AccountantMode m) {
    return m == AccountantMode::Strict ? "strict" : "subsampled";
}

AccountantMode accountant_from_string(const std::string& s) {
    if (s == "strict") return AccountantMode::Strict;
    if (s == "subsampled") return AccountantMode::Subsampled;
    throw DataError("unknown accountant mode: " + s);
}

double zcdp_to_epsilon(double rho, double delta) {
    if (rho < 0.0) throw DataError("rho must be nonnegative");
    if (!(delta > 0.0 && delta < 1.0)) throw DataError("delta must be in (0,1)");
    if (rho == 0.0) return 0.0;
    return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

double per_step_rho(double sigma, double sampling_rate, AccountantMode mode) {
    if (!(sigma > 0.0)) throw DataError("sigma must be positive");
    if (!(sampling_rate > 0.0 && sampling_rate <= 1.0))
        throw DataError("sampling rate must be in (0,1]");
    const double base = 1.0 / (2.0 * sigma * sigma);
    return mode == AccountantMode::Strict ? base
                                          : sampling_rate * sampling_rate * base;
}

double privacy_compose(long steps, double sigma, double sampling_rate,
                       AccountantMode mode, double delta) {
    if (steps < 0) throw DataError("steps must be nonnegative");
    return zcdp_to_epsilon(static_cast<double>(steps) *
                               per_step_rho(sigma, sampling_rate, mode),
                           delta);
}

void PrivacyLedger::record_step() {
    if (!can_step())
        throw BudgetExhausted("privacy budget exhausted: next step would push epsilon to " +
                              std::to_string(zcdp_to_epsilon(rho + step_rho(), delta)) +
                              " > " + std::to_string(budget));
    rho += step_rho();
    ++steps;
}

Vector clip_gradient(const Vector& g, double clip_norm) {
    if (!(clip_norm > 0.0)) throw DataError("clip norm must be positive");
    const double norm = g.norm();
    if (norm <= clip_norm) return g;
    return g * (clip_norm / norm);
}

}  // namespace ppchurn
