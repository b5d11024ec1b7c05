#include "passcov/radiation.hpp"

#include <cmath>

namespace passcov {

std::vector<double> fractions_general(const std::vector<double>& delta) {
    if (delta.empty())
        throw ParamOutOfRange("fractions_general: need at least one PA");
    std::vector<double> rho;
    rho.reserve(delta.size());
    double remaining = 1.0; // fraction of the feed power still in the guide
    for (double d : delta) {
        if (!(d > 0.0) || !(d < 1.0))
            throw ParamOutOfRange("fractions_general: delta entries must lie in (0,1)");
        const double d2 = d * d;
        rho.push_back(d2 * remaining);
        remaining *= (1.0 - d2);
    }
    return rho;
}

std::vector<double> fractions_proportional(double delta_sq, int n) {
    if (n < 1)
        throw ParamOutOfRange("fractions_proportional: need at least one PA");
    if (!(delta_sq > 0.0) || !(delta_sq < 1.0))
        throw ParamOutOfRange("fractions_proportional: delta_sq must lie in (0,1)");
    std::vector<double> rho(static_cast<std::size_t>(n));
    double remaining = 1.0;
    for (int i = 0; i < n; ++i) {
        rho[static_cast<std::size_t>(i)] = delta_sq * remaining;
        remaining *= (1.0 - delta_sq);
    }
    return rho;
}

std::vector<double> fractions_equal(double rho, int n) {
    if (n < 1)
        throw ParamOutOfRange("fractions_equal: need at least one PA");
    if (!(rho > 0.0) || rho > 1.0 / n + 1e-15)
        throw ParamOutOfRange("fractions_equal: rho must lie in (0, 1/N]");
    return std::vector<double>(static_cast<std::size_t>(n), rho);
}

std::vector<double> fractions(const RadiationSpec& spec, int n) {
    switch (spec.model) {
    case RadiationModel::General:
        if (static_cast<int>(spec.delta.size()) != n)
            throw LengthMismatch("fractions: general spec needs one delta per PA");
        return fractions_general(spec.delta);
    case RadiationModel::Proportional:
        return fractions_proportional(spec.delta_sq, n);
    case RadiationModel::Equal:
        return fractions_equal(spec.rho > 0.0 ? spec.rho : 1.0 / n, n);
    }
    throw ParamOutOfRange("fractions: unknown model");
}

double residual_power(const std::vector<double>& fractions) {
    double s = 0.0;
    for (double r : fractions) s += r;
    return 1.0 - s;
}

} // namespace passcov
