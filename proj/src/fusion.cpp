#include "passcov/fusion.hpp"

#include <cstddef>
#include <cstdint>

namespace passcov {

namespace {
constexpr int kMaxEspWardens = 64;

void check_probs(const std::vector<double>& p) {
    if (p.empty())
        throw EmptyWardenSet("fusion: need at least one warden");
    for (double v : p)
        if (!(v >= 0.0) || !(v <= 1.0))
            throw ProbOutOfRange("fusion: probabilities must lie in [0,1]");
}
} // namespace

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n > kMaxEspWardens)
        throw TooManyWardens("binom: n exceeds the supported range");
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * double(n - k + i) / double(i);
    // The product is integer-valued; round away the division dust.
    return (r < 9.0e15) ? double(std::int64_t(r + 0.5)) : r;
}

std::vector<double> esp(const std::vector<double>& x) {
    const std::size_t m = x.size();
    if (m == 0)
        throw EmptyWardenSet("esp: empty input");
    if (m > kMaxEspWardens)
        throw TooManyWardens("esp: more than 64 entries");
    std::vector<double> xi(m + 1, 0.0);
    xi[0] = 1.0;
    std::size_t filled = 0;
    for (double v : x) {
        ++filled;
        for (std::size_t k = filled; k >= 1; --k)
            xi[k] += v * xi[k - 1];
    }
    return xi;
}

PgfCoefficients pgf_coeffs(const std::vector<double>& p, Sense /*sense*/) {
    check_probs(p);
    const std::size_t m = p.size();
    std::vector<double> c(m + 1, 0.0);
    c[0] = 1.0;
    std::size_t filled = 0;
    for (double v : p) {
        ++filled;
        for (std::size_t k = filled; k >= 1; --k)
            c[k] = c[k] * (1.0 - v) + c[k - 1] * v;
        c[0] *= (1.0 - v);
    }
    return PgfCoefficients{std::move(c)};
}

PgfCoefficients pgf_coeffs_via_esp(const std::vector<double>& p) {
    check_probs(p);
    const int m = static_cast<int>(p.size());
    const std::vector<double> xi = esp(p);
    std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
    for (int i = 0; i <= m; ++i) {
        double acc = 0.0;
        for (int k = i; k <= m; ++k) {
            const double term = binom(k, i) * xi[static_cast<std::size_t>(k)];
            acc += ((k + i) % 2 == 0) ? term : -term;
        }
        c[static_cast<std::size_t>(i)] = acc;
    }
    return PgfCoefficients{std::move(c)};
}

double majority_tail(const PgfCoefficients& c, int t, Side side) {
    const int m = static_cast<int>(c.coeff.size()) - 1;
    if (m < 0)
        throw EmptyWardenSet("majority_tail: empty coefficients");
    if (t < 0 || t > m + 1)
        throw IndexOutOfRange("majority_tail: t outside [0, M+1]");
    double acc = 0.0;
    if (side == Side::Upper) {
        for (int i = t; i <= m; ++i) acc += c.coeff[static_cast<std::size_t>(i)];
    } else {
        for (int i = 0; i <= t - 1; ++i) acc += c.coeff[static_cast<std::size_t>(i)];
    }
    return acc;
}

double dep_exact(double tau, const std::vector<WardenProfile>& wardens) {
    if (wardens.empty())
        throw EmptyWardenSet("dep_exact: no wardens");
    const int m = static_cast<int>(wardens.size());
    const int t = majority_threshold(m);
    std::vector<double> fa(wardens.size()), det(wardens.size());
    for (std::size_t i = 0; i < wardens.size(); ++i) {
        fa[i] = p_fa(wardens[i], tau);
        det[i] = 1.0 - p_md(wardens[i], tau);
    }
    const double sys_fa = majority_tail(pgf_coeffs(fa, Sense::Alarm), t, Side::Upper);
    const double sys_md = majority_tail(pgf_coeffs(det, Sense::Detect), t, Side::Lower);
    return sys_fa + sys_md;
}

double shifted_esp(const std::vector<double>& a, double c, int k) {
    const int m = static_cast<int>(a.size());
    if (k < 0 || k > m)
        throw IndexOutOfRange("shifted_esp: k outside [0, M]");
    const std::vector<double> xi = esp(a);
    double acc = 0.0;
    double cpow = 1.0; // (-c)^r
    for (int r = 0; r <= k; ++r) {
        acc += cpow * binom(m - k + r, r) * xi[static_cast<std::size_t>(k - r)];
        cpow *= -c;
    }
    return acc;
}

} // namespace passcov
