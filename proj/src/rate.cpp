#include "passcov/rate.hpp"

#include <cmath>

namespace passcov {

QuadratureRule gauss_legendre(int n) {
    if (n < 1)
        throw ParamOutOfRange("gauss_legendre: need at least one node");
    QuadratureRule q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    // Roots of P_n on (-1, 1), exploiting symmetry: solve the first half,
    // mirror the rest. Chebyshev-style initial guesses converge in a few
    // Newton steps at machine precision.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence: p2 = P_n(x), dp = P_n'(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        // Recompute derivative at the converged root for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
            p0 = p1;
            p1 = p2;
        }
        dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1,1] -> [0,1]: node (1+x)/2, weight w/2. The cosine guess
        // starts near +1, so index i holds the larger root.
        q.nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        q.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
        q.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        q.weights[static_cast<std::size_t>(i)] = 0.5 * w;
    }
    return q;
}

double sinr(const LinkBudget& lb, double xi) {
    if (!(xi >= 0.0) || !(xi <= 1.0))
        throw ParamOutOfRange("sinr: xi must lie in [0, 1]");
    if (!(lb.sigma_b_sq > 0.0))
        throw ParamOutOfRange("sinr: sigma_b_sq must be > 0");
    if (!(lb.s >= 0.0) || !(lb.i >= 0.0))
        throw ParamOutOfRange("sinr: powers must be >= 0");
    return lb.s / (xi * lb.i + lb.sigma_b_sq);
}

double avg_covert_rate(const LinkBudget& lb, const QuadratureRule& q) {
    if (q.nodes.size() != q.weights.size() || q.nodes.empty())
        throw LengthMismatch("avg_covert_rate: malformed quadrature rule");
    double acc = 0.0;
    for (std::size_t l = 0; l < q.nodes.size(); ++l)
        acc += q.weights[l] * std::log2(1.0 + sinr(lb, q.nodes[l]));
    return acc;
}

SurrogateEval mm_rate_surrogate(const LinkBudget& at, const LinkBudget& anchor,
                                const QuadratureRule& q) {
    if (q.nodes.size() != q.weights.size() || q.nodes.empty())
        throw LengthMismatch("mm_rate_surrogate: malformed quadrature rule");
    if (at.sigma_b_sq != anchor.sigma_b_sq)
        throw ParamOutOfRange("mm_rate_surrogate: noise must match the anchor");
    if (!(anchor.sigma_b_sq > 0.0) || !(anchor.i >= 0.0) || !(anchor.s >= 0.0))
        throw ParamOutOfRange("mm_rate_surrogate: bad anchor");
    if (!(at.s >= 0.0) || !(at.i >= 0.0))
        throw ParamOutOfRange("mm_rate_surrogate: powers must be >= 0");
    constexpr double kInvLn2 = 1.4426950408889634;
    SurrogateEval e;
    for (std::size_t l = 0; l < q.nodes.size(); ++l) {
        const double xi = q.nodes[l];
        const double w = q.weights[l];
        const double denom0 = xi * anchor.i + anchor.sigma_b_sq; // D_l at anchor
        const double total = at.s + xi * at.i + at.sigma_b_sq;
        e.value += w * kInvLn2 *
                   (std::log(total) - std::log(denom0) - (xi / denom0) * (at.i - anchor.i));
        e.d_s += w * kInvLn2 / total;
        e.d_i += w * kInvLn2 * (xi / total - xi / denom0);
    }
    return e;
}

} // namespace passcov
