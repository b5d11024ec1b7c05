#include "passcov/piecewise_dep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace passcov {

std::string ordering_case_name(OrderingCase c) {
    return c == OrderingCase::MdOnsetFirst ? "md_onset_first" : "fa_cutoff_first";
}

BreakpointTable build_breakpoints(const std::vector<WardenProfile>& wardens) {
    if (wardens.empty())
        throw EmptyWardenSet("build_breakpoints: no wardens");
    BreakpointTable t;
    t.sigma_sq = wardens.front().sigma_w_sq;
    for (const WardenProfile& w : wardens) {
        if (w.degenerate_jamming)
            throw DegenerateJamming("build_breakpoints: p_j_max * a_j must be > 0");
        if (w.sigma_w_sq != t.sigma_sq)
            throw ParamOutOfRange("build_breakpoints: wardens must share sigma_w_sq");
        t.alpha1.push_back(w.alpha1);
        t.alpha2.push_back(w.alpha2);
        t.alpha3.push_back(w.alpha3);
    }
    auto minmax1 = std::minmax_element(t.alpha1.begin(), t.alpha1.end());
    auto minmax2 = std::minmax_element(t.alpha2.begin(), t.alpha2.end());
    auto minmax3 = std::minmax_element(t.alpha3.begin(), t.alpha3.end());
    t.alpha1_min = *minmax1.first;
    t.alpha1_max = *minmax1.second;
    t.alpha2_min = *minmax2.first;
    t.alpha2_max = *minmax2.second;
    t.alpha3_min = *minmax3.first;
    t.alpha3_max = *minmax3.second;
    t.ordering_case = (t.alpha2_min <= t.alpha1_min) ? OrderingCase::MdOnsetFirst
                                                     : OrderingCase::FaCutoffFirst;
    t.md_saturates_inside_fa = (t.alpha3_min <= t.alpha1_max);
    t.knots.push_back(t.sigma_sq);
    t.knots.insert(t.knots.end(), t.alpha1.begin(), t.alpha1.end());
    t.knots.insert(t.knots.end(), t.alpha2.begin(), t.alpha2.end());
    t.knots.insert(t.knots.end(), t.alpha3.begin(), t.alpha3.end());
    std::sort(t.knots.begin(), t.knots.end());
    t.knots.erase(std::unique(t.knots.begin(), t.knots.end()), t.knots.end());
    return t;
}

NormalizedConstants normalized_constants(const std::vector<WardenProfile>& wardens) {
    if (wardens.empty())
        throw EmptyWardenSet("normalized_constants: no wardens");
    NormalizedConstants nc;
    for (const WardenProfile& w : wardens) {
        const double spread = w.p_j_max * w.a_j;
        if (!(spread > 0.0))
            throw DegenerateJamming("normalized_constants: p_j_max * a_j must be > 0");
        nc.a.push_back(w.alpha1 / spread);
        nc.c.push_back(w.alpha2 / spread);
        nc.b.push_back(1.0 / spread);
    }
    nc.b_common = nc.b.front();
    nc.homogeneous_slope = true;
    for (double b : nc.b) {
        if (std::abs(b - nc.b_common) > 1e-9 * std::abs(nc.b_common)) {
            nc.homogeneous_slope = false;
            break;
        }
    }
    return nc;
}

IndexCounts index_functions(double tau, const BreakpointTable& t) {
    IndexCounts ic;
    for (double v : t.alpha1) ic.l += (v <= tau);
    for (double v : t.alpha2) ic.k += (v <= tau);
    for (double v : t.alpha3) ic.s += (v <= tau);
    return ic;
}

namespace {

// Selected subset values for the symmetric polynomials at threshold tau.
std::vector<double> select_values(double tau, EspSelector sel,
                                  const NormalizedConstants& nc,
                                  const BreakpointTable& t) {
    const std::size_t m = nc.a.size();
    std::vector<double> out;
    out.reserve(m);
    switch (sel) {
    case EspSelector::FullSet:
        out = nc.a;
        return out;
    case EspSelector::ActiveFa:
        for (std::size_t i = 0; i < m; ++i)
            if (t.alpha1[i] > tau) out.push_back(nc.a[i]);
        return out;
    case EspSelector::LinearMd:
        for (std::size_t i = 0; i < m; ++i)
            if (t.alpha2[i] <= tau) out.push_back(1.0 + nc.c[i]);
        return out;
    case EspSelector::LinearMdUnsat:
        for (std::size_t i = 0; i < m; ++i)
            if (t.alpha2[i] <= tau && t.alpha3[i] > tau) out.push_back(1.0 + nc.c[i]);
        return out;
    }
    throw SelectorInvalid("select_values: unknown selector");
}

double psi_over(double tau, int x, const std::vector<double>& sel, double b) {
    const int y = static_cast<int>(sel.size());
    if (x < 0)
        throw IndexOutOfRange("psi_poly: negative order");
    if (x == 0) return 1.0;
    if (x > y) return 0.0;
    // xi_x(sel - b tau 1), evaluated on the shifted values themselves. On
    // every selector the shifted entries are the live ramp probabilities,
    // so the recurrence stays conditioned; the binomial shift expansion
    // (shifted_esp) is algebraically identical but cancels catastrophically
    // once b * tau is large.
    std::vector<double> shifted(sel.size());
    for (std::size_t i = 0; i < sel.size(); ++i) shifted[i] = sel[i] - b * tau;
    return esp(shifted)[static_cast<std::size_t>(x)];
}

// False-alarm tail over the wardens whose ramps are still live at tau:
//   sum_{j=T}^{|J|} (-1)^{j+T} C(j-1, T-1) xi_j(p_J(tau)),
// with xi_j expanded through psi_over. Empty sum when |J| < T.
double fa_block(double tau, int t_major, const NormalizedConstants& nc,
                const BreakpointTable& t) {
    const std::vector<double> sel = select_values(tau, EspSelector::ActiveFa, nc, t);
    const int y = static_cast<int>(sel.size());
    double acc = 0.0;
    for (int j = t_major; j <= y; ++j) {
        const double term = binom(j - 1, t_major - 1) * psi_over(tau, j, sel, nc.b_common);
        acc += ((j + t_major) % 2 == 0) ? term : -term;
    }
    return acc;
}

// Missed-detection block. The detection-probability vector at tau holds
// (M - k) certain detections, (k - s) linear entries (1 + c_m) - b tau and
// s zeros. Zeros drop out of the symmetric polynomials (orders above M - s
// vanish), certain detections enter through a binomial convolution:
//   P_MD = sum_{i=0}^{T-1} sum_{j=i}^{M-s} (-1)^{j+i} C(j,i)
//            sum_{l=0}^{min(j,k-s)} C(M-k, j-l) xi_l(linear part).
double md_block(double tau, int t_major, const NormalizedConstants& nc,
                const BreakpointTable& t, const IndexCounts& ic) {
    const int m = static_cast<int>(nc.a.size());
    const int ones = m - ic.k;
    const int lin = ic.k - ic.s;
    const std::vector<double> sel = select_values(tau, EspSelector::LinearMdUnsat, nc, t);
    // xi_l(selected - b tau 1) for l = 0..lin, reused across the row sums.
    std::vector<double> xi_shift(static_cast<std::size_t>(lin) + 1);
    for (int l = 0; l <= lin; ++l)
        xi_shift[static_cast<std::size_t>(l)] = psi_over(tau, l, sel, nc.b_common);
    double acc = 0.0;
    for (int i = 0; i <= t_major - 1; ++i) {
        for (int j = i; j <= m - ic.s; ++j) {
            double xi_j = 0.0; // xi_j of the detect vector with zeros dropped
            const int lo = std::max(0, j - ones);
            const int hi = std::min(j, lin);
            for (int l = lo; l <= hi; ++l)
                xi_j += binom(ones, j - l) * xi_shift[static_cast<std::size_t>(l)];
            const double term = binom(j, i) * xi_j;
            acc += ((j + i) % 2 == 0) ? term : -term;
        }
    }
    return acc;
}

} // namespace

double psi_poly(double tau, int x, EspSelector sel,
                const NormalizedConstants& nc, const BreakpointTable& t) {
    if (!nc.homogeneous_slope)
        throw HeterogeneousSlope("psi_poly: requires a common ramp slope");
    return psi_over(tau, x, select_values(tau, sel, nc, t), nc.b_common);
}

double dep_piecewise(double tau, const BreakpointTable& t, const NormalizedConstants& nc) {
    if (!(tau >= 0.0))
        throw ParamOutOfRange("dep_piecewise: tau must be >= 0");
    if (!nc.homogeneous_slope)
        throw HeterogeneousSlope("dep_piecewise: requires a common ramp slope");
    if (nc.a.size() != t.alpha1.size())
        throw LengthMismatch("dep_piecewise: table and constants disagree");
    const int m = static_cast<int>(nc.a.size());
    const int t_major = majority_threshold(m);

    // Saturated plateaus: every detector alarms below sigma_sq, every
    // detector is blind beyond alpha3_max.
    if (tau <= t.sigma_sq) return 1.0;
    if (tau >= t.alpha3_max) return 1.0;

    const IndexCounts ic = index_functions(tau, t);
    // Interval layout (both orderings): the false-alarm tail is present
    // while tau < alpha1_max, the missed-detection block once
    // tau >= alpha2_min. Rows of the two orderings differ only in which
    // blocks their intervals activate.
    double v = 0.0;
    if (tau < t.alpha1_max) v += fa_block(tau, t_major, nc, t);
    if (tau >= t.alpha2_min) v += md_block(tau, t_major, nc, t, ic);
    return v;
}

MinDepResult min_dep_threshold(const std::vector<WardenProfile>& wardens,
                               int grid_density) {
    if (wardens.empty())
        throw EmptyWardenSet("min_dep_threshold: no wardens");
    if (grid_density < 0)
        throw ParamOutOfRange("min_dep_threshold: grid_density must be >= 0");

    // Candidate knots; per-warden sigma may differ here since only
    // dep_exact is evaluated.
    std::vector<double> knots;
    for (const WardenProfile& w : wardens) {
        knots.push_back(w.sigma_w_sq);
        knots.push_back(w.alpha1);
        knots.push_back(w.alpha2);
        knots.push_back(w.alpha3);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<double> cand;
    cand.reserve(knots.size() * static_cast<std::size_t>(grid_density + 1) + 1);
    for (std::size_t i = 0; i < knots.size(); ++i) {
        cand.push_back(knots[i]);
        if (i + 1 < knots.size()) {
            const double a = knots[i], b = knots[i + 1];
            for (int g = 1; g <= grid_density; ++g)
                cand.push_back(a + (b - a) * double(g) / double(grid_density + 1));
        }
    }

    MinDepResult best;
    best.g_star = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const double v = dep_exact(cand[i], wardens);
        ++best.evaluations;
        if (v < best.g_star) { // strict: ties keep the smaller tau
            best.g_star = v;
            best.tau_star = cand[i];
            best_idx = i;
        }
    }

    // Golden-section polish between the candidate's neighbors.
    double lo = cand[best_idx > 0 ? best_idx - 1 : 0];
    double hi = cand[std::min(best_idx + 1, cand.size() - 1)];
    if (hi > lo) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        const double tol = 1e-9 * (knots.back() - knots.front());
        double x1 = hi - gr * (hi - lo);
        double x2 = lo + gr * (hi - lo);
        double f1 = dep_exact(x1, wardens);
        double f2 = dep_exact(x2, wardens);
        best.evaluations += 2;
        while (hi - lo > tol) {
            if (f1 <= f2) { // keep the left side on ties: smaller tau wins
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = dep_exact(x1, wardens);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = dep_exact(x2, wardens);
            }
            ++best.evaluations;
        }
        const double xm = 0.5 * (lo + hi);
        const double fm = dep_exact(xm, wardens);
        ++best.evaluations;
        if (fm < best.g_star || (fm == best.g_star && xm < best.tau_star)) {
            best.g_star = fm;
            best.tau_star = xm;
        }
    }
    return best;
}

std::vector<double> dep_gradient(const ProfileBuilder& build, const DesignPoint& at,
                                 double tau_star, double fd_step_rel) {
    if (!(fd_step_rel > 0.0))
        throw ParamOutOfRange("dep_gradient: fd_step_rel must be > 0");
    const std::vector<double> x0 = flatten_design(at);
    auto eval = [&](const std::vector<double>& x) {
        return dep_exact(tau_star, build(unflatten_design(at, x)));
    };
    const double f0 = eval(x0);
    std::vector<double> grad(x0.size(), 0.0);
    for (std::size_t i = 0; i < x0.size(); ++i) {
        const double h = std::max(std::abs(x0[i]) * fd_step_rel, 1e-12);
        std::vector<double> xp = x0, xm = x0;
        xp[i] += h;
        xm[i] -= h;
        bool ok_p = true, ok_m = true;
        double fp = 0.0, fm = 0.0;
        try { fp = eval(xp); } catch (const Error&) { ok_p = false; }
        try { fm = eval(xm); } catch (const Error&) { ok_m = false; }
        double g;
        if (ok_p && ok_m) g = (fp - fm) / (2.0 * h);
        else if (ok_p)    g = (fp - f0) / h;
        else if (ok_m)    g = (f0 - fm) / h;
        else
            throw NonFiniteGradient("dep_gradient: both perturbations rejected");
        if (!std::isfinite(g))
            throw NonFiniteGradient("dep_gradient: non-finite difference quotient");
        grad[i] = g;
    }
    return grad;
}

} // namespace passcov
