#include "ppchurn/stats.hpp"

#include <cmath>

namespace ppchurn {

double mean(const std::vector<double>& values) {
    if (values.empty()) throw DataError("mean of empty list");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double column_skewness(const std::vector<double>& values) {
    if (values.size() < 3)
        throw UndefinedSkewError("skewness needs at least 3 values");
    const double m = mean(values);
    double m2 = 0.0, m3 = 0.0;
    for (double v : values) {
        const double dv = v - m;
        m2 += dv * dv;
        m3 += dv * dv * dv;
    }
    const double n = static_cast<double>(values.size());
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0) throw UndefinedSkewError("skewness undefined for zero variance");
    return m3 / std::pow(m2, 1.5);
}

}  // namespace ppchurn
