#include "passcov/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "passcov/rng.hpp"

namespace passcov {

namespace {

constexpr double kFeasTol = 1e-9;  // accepted violation of g >= 1 - epsilon
constexpr double kLogitCap = 30.0; // keeps sigmoid away from exact 0/1
constexpr double kRhoFloor = 1e-12;

// Substream purposes for the optimizer's own draws (disjoint tags from the
// Monte-Carlo module's are not required, seeds differ, but keep them apart
// anyway).
enum OptStream : std::uint32_t {
    kJitterPos = 100,
    kInitPower = 101,
    kRandPosC = 102,
    kRandPosJ = 103,
    kRandPower = 104,
    kRandRad = 105,
    kInitProbe = 106,
};

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double logit(double p) {
    const double q = std::clamp(p, 1e-9, 1.0 - 1e-9);
    return std::log(q / (1.0 - q));
}

// Flat-coordinate layout shared by flatten_design and the internal
// (optimization) coordinates.
struct Layout {
    int n_c = 0, n_j = 0;     // PAs per guide
    int rad_c = 0, rad_j = 0; // radiation parameter counts
    int pos_begin = 0;        // first position coordinate
    int total = 0;
    int power_end() const { return 2; }
    int rad_begin() const { return 2; }
};

Layout layout_of(const DesignPoint& d) {
    Layout lo;
    lo.n_c = static_cast<int>(d.x_c.size());
    lo.n_j = static_cast<int>(d.x_j.size());
    lo.rad_c = radiation_param_count(d.rad_c, lo.n_c);
    lo.rad_j = radiation_param_count(d.rad_j, lo.n_j);
    lo.pos_begin = 2 + lo.rad_c + lo.rad_j;
    lo.total = lo.pos_begin + lo.n_c + lo.n_j;
    return lo;
}

// Internal coordinates: powers and positions raw; General / Proportional
// radiation parameters pass through a logit bijection so the block steps
// are unconstrained in those directions; Equal keeps rho with a box.
std::vector<double> to_internal(const DesignPoint& d) {
    std::vector<double> z = flatten_design(d);
    const Layout lo = layout_of(d);
    auto map_spec = [&](const RadiationSpec& spec, int begin, int count) {
        if (spec.model == RadiationModel::Equal) return;
        for (int i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(begin + i);
            z[idx] = logit(z[idx]);
        }
    };
    map_spec(d.rad_c, lo.rad_begin(), lo.rad_c);
    map_spec(d.rad_j, lo.rad_begin() + lo.rad_c, lo.rad_j);
    return z;
}

DesignPoint from_internal(const DesignPoint& like, std::vector<double> z) {
    const Layout lo = layout_of(like);
    auto unmap_spec = [&](const RadiationSpec& spec, int begin, int count, int n_pa) {
        for (int i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(begin + i);
            if (spec.model == RadiationModel::Equal)
                z[idx] = std::clamp(z[idx], kRhoFloor, 1.0 / double(n_pa));
            else
                z[idx] = sigmoid(std::clamp(z[idx], -kLogitCap, kLogitCap));
        }
    };
    unmap_spec(like.rad_c, lo.rad_begin(), lo.rad_c, lo.n_c);
    unmap_spec(like.rad_j, lo.rad_begin() + lo.rad_c, lo.rad_j, lo.n_j);
    return unflatten_design(like, z);
}

// d(natural)/d(internal) on the diagonal, for pushing a natural-coordinate
// gradient into internal coordinates.
std::vector<double> internal_jacobian(const DesignPoint& d) {
    const Layout lo = layout_of(d);
    std::vector<double> jac(static_cast<std::size_t>(lo.total), 1.0);
    const std::vector<double> nat = flatten_design(d);
    auto fill = [&](const RadiationSpec& spec, int begin, int count) {
        if (spec.model == RadiationModel::Equal) return;
        for (int i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(begin + i);
            jac[idx] = nat[idx] * (1.0 - nat[idx]); // sigmoid'(logit(v))
        }
    };
    fill(d.rad_c, lo.rad_begin(), lo.rad_c);
    fill(d.rad_j, lo.rad_begin() + lo.rad_c, lo.rad_j);
    return jac;
}

// Exact projection onto { p >= 0, q >= 0, p + q <= cap }.
void project_power_pair(double& p, double& q, double cap) {
    p = std::max(p, 0.0);
    q = std::max(q, 0.0);
    if (p + q <= cap) return;
    const double t = (p + q - cap) / 2.0;
    p -= t;
    q -= t;
    if (p < 0.0) { q = std::min(cap, q + p); p = 0.0; }
    if (q < 0.0) { p = std::min(cap, p + q); q = 0.0; }
}

struct RunContext {
    const OptimizerProblem* prob = nullptr;
    const OptimizerConfig* cfg = nullptr;
    QuadratureRule quad;
    double dx = 0.0;

    std::vector<WardenProfile> profiles(const DesignPoint& d) const {
        return warden_profiles(prob->geom, d, prob->wardens);
    }
    LinkBudget budget(const DesignPoint& d) const {
        return make_link_budget(prob->geom, d, prob->bob, prob->sigma_b_sq);
    }
    double true_g(const DesignPoint& d, double* tau_star = nullptr) const {
        const MinDepResult r = min_dep_threshold(profiles(d), cfg->grid_density);
        if (tau_star) *tau_star = r.tau_star;
        return r.g_star;
    }
    double acr(const DesignPoint& d) const {
        return avg_covert_rate(budget(d), quad);
    }
    bool feasible(double g) const { return g >= 1.0 - cfg->epsilon - kFeasTol; }
};

// Uniform design draw shared by the random-search baseline and the
// optimizer's initial probes: sorted uniform positions pushed through the
// spacing projection, a uniform split of the power budget, and uniform
// radiation parameters inside their boxes.
DesignPoint sample_random_design(const OptimizerProblem& p, const OptimizerConfig& cfg,
                                 const RunContext& ctx, std::uint64_t seed,
                                 std::uint64_t trial) {
    DesignPoint d;
    auto positions = [&](int n, std::uint32_t tag) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] =
                p.geom.length * philox_u01(seed, trial, tag, static_cast<std::uint32_t>(i));
        std::sort(x.begin(), x.end());
        return project_spacing(std::move(x), ctx.dx, p.geom.length);
    };
    d.x_c = positions(p.n_c, kRandPosC);
    d.x_j = positions(p.n_j, kRandPosJ);
    const double u1 = philox_u01(seed, trial, kRandPower, 0);
    const double u2 = philox_u01(seed, trial, kRandPower, 1);
    d.p_c = u1 * cfg.p_max;
    d.p_j_max = u2 * (cfg.p_max - d.p_c);
    d.rad_c.model = d.rad_j.model = p.model;
    auto rad_draw = [&](int n, std::uint32_t lane_base, RadiationSpec& spec) {
        if (p.model == RadiationModel::General) {
            spec.delta.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                spec.delta[static_cast<std::size_t>(i)] =
                    0.02 + 0.96 * philox_u01(seed, trial, kRandRad,
                                             lane_base + static_cast<std::uint32_t>(i));
        } else if (p.model == RadiationModel::Proportional) {
            spec.delta_sq = 0.02 + 0.96 * philox_u01(seed, trial, kRandRad, lane_base);
        } else {
            spec.rho = (1.0 - philox_u01(seed, trial, kRandRad, lane_base)) / double(n);
        }
    };
    rad_draw(p.n_c, 0, d.rad_c);
    rad_draw(p.n_j, 100, d.rad_j);
    return d;
}

// Sanitize internal coordinates into a buildable design: power simplex,
// radiation boxes (inside from_internal), spacing projection per guide.
DesignPoint materialize(const RunContext& ctx, const DesignPoint& like,
                        std::vector<double> z) {
    project_power_pair(z[0], z[1], ctx.cfg->p_max);
    DesignPoint d = from_internal(like, std::move(z));
    d.x_c = project_spacing(std::move(d.x_c), ctx.dx, ctx.prob->geom.length);
    d.x_j = project_spacing(std::move(d.x_j), ctx.dx, ctx.prob->geom.length);
    return d;
}

// Central finite difference of `f` over internal coordinates [begin, end),
// falling back to one-sided when a perturbed design cannot be built.
std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                const std::vector<double>& z0, int begin, int end,
                                double rel) {
    std::vector<double> grad(z0.size(), 0.0);
    double f0 = std::numeric_limits<double>::quiet_NaN();
    for (int i = begin; i < end; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double h = std::max(std::abs(z0[idx]) * rel, 1e-12);
        std::vector<double> zp = z0, zm = z0;
        zp[idx] += h;
        zm[idx] -= h;
        bool ok_p = true, ok_m = true;
        double fp = 0.0, fm = 0.0;
        try { fp = f(zp); } catch (const Error&) { ok_p = false; }
        try { fm = f(zm); } catch (const Error&) { ok_m = false; }
        double g;
        if (ok_p && ok_m) {
            g = (fp - fm) / (2.0 * h);
        } else {
            if (std::isnan(f0)) f0 = f(z0);
            if (ok_p) g = (fp - f0) / h;
            else if (ok_m) g = (f0 - fm) / h;
            else throw NonFiniteGradient("fd_gradient: both perturbations rejected");
        }
        if (!std::isfinite(g))
            throw NonFiniteGradient("fd_gradient: non-finite difference quotient");
        grad[idx] = g;
    }
    return grad;
}

double norm2(const std::vector<double>& a, int begin, int end) {
    double s = 0.0;
    for (int i = begin; i < end; ++i) {
        const double v = a[static_cast<std::size_t>(i)];
        s += v * v;
    }
    return std::sqrt(s);
}

// State shared by the two block updates within one outer iteration.
struct OuterAnchor {
    std::vector<double> z0;      // internal coordinates at the refresh point
    std::vector<double> d_int;   // constraint gradient, internal coordinates
    double r = 0.0;              // required d_int . (z - z0), always <= 0
    LinkBudget budget0;          // surrogate anchor
    double tau_star = 0.0;
};

// Linear covertness model value at z.
double half_space_value(const OuterAnchor& an, const std::vector<double>& z) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        s += an.d_int[i] * (z[i] - an.z0[i]);
    return s;
}

struct BlockOutcome {
    double step_norm = 0.0;
    bool accepted = false;
    bool stalled = false;
};

// One block of projected gradient ascent over internal coordinates
// [begin, end). `prox_center`/`prox_w` add the damping used by the
// position block (pass prox_w = 0 for the power block). The accepted
// iterate always satisfies (a) the projected constraint set, (b) the
// linearized covertness half-space, (c) the true covertness constraint,
// and (d) surrogate non-decrease.
BlockOutcome block_ascent(const RunContext& ctx, const OuterAnchor& an,
                          const DesignPoint& like, std::vector<double>& z,
                          int begin, int end, double prox_w,
                          std::vector<TraceRow>& rows, const TraceRow& proto) {
    const OptimizerConfig& cfg = *ctx.cfg;
    BlockOutcome out;
    const std::vector<double> prox_center(z.begin(), z.end());

    auto surr_of = [&](const std::vector<double>& zz) {
        const DesignPoint d = from_internal(like, zz);
        return mm_rate_surrogate(ctx.budget(d), an.budget0, ctx.quad).value;
    };
    auto objective = [&](const std::vector<double>& zz) {
        double v = surr_of(zz);
        if (prox_w > 0.0) {
            double q = 0.0;
            for (int i = begin; i < end; ++i) {
                const double dz = zz[static_cast<std::size_t>(i)] -
                                  prox_center[static_cast<std::size_t>(i)];
                q += dz * dz;
            }
            v -= 0.5 * prox_w * q;
        }
        return v;
    };

    double step_scale = -1.0;
    for (int it = 0; it < cfg.steps_per_block; ++it) {
        const std::vector<double> grad = fd_gradient(objective, z, begin, end, cfg.fd_step_rel);
        const double gn = norm2(grad, begin, end);
        if (gn < 1e-16) break;
        if (step_scale <= 0.0) {
            // First trial step: cap the move at a tenth of the power budget
            // per power coordinate and at dx per remaining coordinate.
            double cap = std::numeric_limits<double>::infinity();
            for (int i = begin; i < end; ++i) {
                const double g = std::abs(grad[static_cast<std::size_t>(i)]);
                if (g < 1e-300) continue;
                const double lim = (i < 2) ? 0.1 * cfg.p_max : std::max(ctx.dx, 1e-3);
                cap = std::min(cap, lim / g);
            }
            step_scale = std::isfinite(cap) ? cap : 1.0;
        }

        const double f_cur = objective(z);
        const double surr_cur = surr_of(z);
        double t = step_scale;
        bool moved = false;
        for (int bt = 0; bt < cfg.max_backtracks; ++bt, t *= 0.5) {
            std::vector<double> zc = z;
            for (int i = begin; i < end; ++i)
                zc[static_cast<std::size_t>(i)] += t * grad[static_cast<std::size_t>(i)];
            // Land the raw step in (box/simplex) AND the linearized
            // covertness half-space by alternating the two projections:
            // pull onto the half-space boundary along the constraint
            // gradient (restricted to this block, so e.g. covert power up
            // drags jamming power up with it), then re-project the sets,
            // and repeat. Both sets are convex and the current iterate
            // lies in their intersection, so this settles quickly.
            double d2 = 0.0;
            for (int i = begin; i < end; ++i) {
                const double v = an.d_int[static_cast<std::size_t>(i)];
                d2 += v * v;
            }
            const double v_tol = 1e-12 * (1.0 + std::abs(an.r));
            DesignPoint cand_design = materialize(ctx, like, zc);
            zc = to_internal(cand_design);
            double v_cand = half_space_value(an, zc);
            for (int rep = 0; rep < 8 && v_cand < an.r && d2 > 1e-300; ++rep) {
                for (int i = begin; i < end; ++i)
                    zc[static_cast<std::size_t>(i)] +=
                        an.d_int[static_cast<std::size_t>(i)] * (an.r - v_cand) / d2;
                cand_design = materialize(ctx, like, zc);
                zc = to_internal(cand_design);
                v_cand = half_space_value(an, zc);
            }
            // Last resort: shrink toward the current iterate, which
            // satisfies the half-space.
            if (v_cand < an.r - v_tol) {
                const double v_cur = half_space_value(an, z);
                if (v_cur <= v_cand) continue;
                const double theta = (v_cur - an.r) / (v_cur - v_cand);
                for (std::size_t i = 0; i < zc.size(); ++i)
                    zc[i] = z[i] + 0.999 * theta * (zc[i] - z[i]);
                cand_design = materialize(ctx, like, zc);
                zc = to_internal(cand_design);
                v_cand = half_space_value(an, zc);
                if (v_cand < an.r - v_tol) continue;
            }
            double move = 0.0, lin = 0.0;
            for (int i = begin; i < end; ++i) {
                const auto k = static_cast<std::size_t>(i);
                const double dz = zc[k] - z[k];
                move += dz * dz;
                lin += grad[k] * dz;
            }
            move = std::sqrt(move);
            if (move < 1e-18) continue; // repair collapsed the step

            const double f_cand = objective(zc);
            if (!(f_cand >= f_cur + 1e-4 * std::max(lin, 0.0) &&
                  f_cand >= f_cur - 1e-15))
                continue;

            // True-constraint safeguard: geometric shrink toward the
            // current iterate, which is feasible by induction.
            double g_true = ctx.true_g(cand_design);
            int shrinks = 0;
            while ((!ctx.feasible(g_true) || surr_of(zc) < surr_cur - 1e-15) &&
                   shrinks < cfg.feasibility_shrinks) {
                for (std::size_t i = 0; i < zc.size(); ++i)
                    zc[i] = z[i] + 0.5 * (zc[i] - z[i]);
                cand_design = materialize(ctx, like, zc);
                zc = to_internal(cand_design);
                g_true = ctx.true_g(cand_design);
                ++shrinks;
            }
            if (!ctx.feasible(g_true) || surr_of(zc) < surr_cur - 1e-15)
                continue; // backtrack further

            const double final_move = norm2([&] {
                std::vector<double> dd(zc.size());
                for (std::size_t i = 0; i < zc.size(); ++i) dd[i] = zc[i] - z[i];
                return dd;
            }(), begin, end);
            z = zc;
            out.step_norm += final_move;
            out.accepted = true;
            moved = true;

            TraceRow row = proto;
            row.surrogate = surr_of(z);
            row.acr = ctx.acr(cand_design);
            row.g = g_true;
            row.slack = g_true - (1.0 - cfg.epsilon);
            row.step_norm = final_move;
            row.accepted = true;
            rows.push_back(row);
            step_scale = t * 2.0; // warm-start the next line search
            break;
        }
        if (!moved) {
            out.stalled = !out.accepted;
            break;
        }
        if (out.step_norm < cfg.tol_inner) break;
    }
    if (!out.accepted) {
        const DesignPoint cur = from_internal(like, z);
        TraceRow row = proto;
        row.surrogate = surr_of(z);
        row.acr = ctx.acr(cur);
        row.g = ctx.true_g(cur);
        row.slack = row.g - (1.0 - cfg.epsilon);
        row.stalled = true;
        rows.push_back(row);
    }
    return out;
}

} // namespace

double resolve_dx_min(const OptimizerConfig& cfg, const SystemGeometry& geom) {
    if (cfg.dx_min >= 0.0) return cfg.dx_min;
    if (!geom.finalized())
        throw ParamOutOfRange("resolve_dx_min: geometry not finalized");
    return 0.15 * geom.guide_wavelength;
}

std::vector<double> project_spacing(std::vector<double> x, double dx_min,
                                    double length) {
    const int n = static_cast<int>(x.size());
    if (n == 0) return x;
    if (!(dx_min >= 0.0) || !(length > 0.0))
        throw ParamOutOfRange("project_spacing: bad dx_min or length");
    const double upper = length - double(n - 1) * dx_min;
    if (upper < 0.0)
        throw InfeasibleGeometry("project_spacing: PAs cannot fit at this spacing");

    // Shift so the constraint becomes monotonicity with a box, then
    // pool-adjacent-violators and clamp.
    std::vector<double> y(x.size());
    for (int i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - double(i) * dx_min;

    std::vector<double> mean;
    std::vector<int> count;
    for (int i = 0; i < n; ++i) {
        mean.push_back(y[static_cast<std::size_t>(i)]);
        count.push_back(1);
        while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
            const double m2 = mean.back();
            const int c2 = count.back();
            mean.pop_back();
            count.pop_back();
            const double m1 = mean.back();
            const int c1 = count.back();
            mean.back() = (m1 * c1 + m2 * c2) / double(c1 + c2);
            count.back() = c1 + c2;
        }
    }
    std::size_t at = 0;
    for (std::size_t b = 0; b < mean.size(); ++b) {
        const double v = std::clamp(mean[b], 0.0, upper);
        for (int r = 0; r < count[b]; ++r) {
            x[at] = v + double(at) * dx_min;
            ++at;
        }
    }
    return x;
}

DesignEval evaluate_design(const OptimizerProblem& p, const OptimizerConfig& cfg,
                           const DesignPoint& d) {
    RunContext ctx{&p, &cfg, gauss_legendre(cfg.quad_nodes), resolve_dx_min(cfg, p.geom)};
    DesignEval e;
    e.g = ctx.true_g(d, &e.tau_star);
    e.acr = ctx.acr(d);
    return e;
}

DesignPoint feasible_init(const OptimizerProblem& p, const OptimizerConfig& cfg,
                          std::uint64_t seed, int start_index) {
    if (!p.geom.finalized())
        throw ParamOutOfRange("feasible_init: geometry not finalized");
    const double dx = resolve_dx_min(cfg, p.geom);
    const double L = p.geom.length;
    auto spaced = [&](int n) {
        if (n < 1) throw ParamOutOfRange("feasible_init: need at least one PA");
        if (double(n - 1) * dx > L)
            throw InfeasibleGeometry("feasible_init: PAs cannot fit at dx_min");
        std::vector<double> x(static_cast<std::size_t>(n));
        if (n == 1) {
            x[0] = L / 2.0;
        } else {
            for (int i = 0; i < n; ++i)
                x[static_cast<std::size_t>(i)] = L * double(i) / double(n - 1);
        }
        return x;
    };

    DesignPoint d;
    d.x_c = spaced(p.n_c);
    d.x_j = spaced(p.n_j);
    d.rad_c.model = d.rad_j.model = p.model;
    if (p.model == RadiationModel::General) {
        d.rad_c.delta.assign(static_cast<std::size_t>(p.n_c), std::sqrt(0.5));
        d.rad_j.delta.assign(static_cast<std::size_t>(p.n_j), std::sqrt(0.5));
    } else if (p.model == RadiationModel::Proportional) {
        d.rad_c.delta_sq = d.rad_j.delta_sq = 0.5;
    } else {
        d.rad_c.rho = 1.0 / p.n_c;
        d.rad_j.rho = 1.0 / p.n_j;
    }

    double p_j = std::min(cfg.init_p_j, cfg.p_max);
    if (start_index > 0) {
        // Seeded diversity for multistart: jitter positions inside the
        // spacing polytope and re-draw the jamming budget.
        auto jitter = [&](std::vector<double>& x, std::uint32_t guide_tag) {
            const double room = x.size() > 1 ? L / double(x.size() - 1) : L;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double u = philox_u01(seed, i, kJitterPos + guide_tag,
                                            static_cast<std::uint32_t>(start_index));
                x[i] += (u - 0.5) * room;
            }
            x = project_spacing(std::move(x), dx, L);
        };
        jitter(d.x_c, 0);
        jitter(d.x_j, 10);
        const double u = philox_u01(seed, 0, kInitPower,
                                    static_cast<std::uint32_t>(start_index));
        p_j = cfg.p_max * (0.2 + 0.6 * u);
    }
    d.p_j_max = p_j;

    // Largest covert power that keeps the design truly covert, by bisection
    // on the scale of p_c. Zero covert power always satisfies the
    // constraint (the two hypotheses coincide), so the bisection is
    // well-posed.
    RunContext ctx{&p, &cfg, gauss_legendre(cfg.quad_nodes), dx};
    const double avail = cfg.p_max - d.p_j_max;
    // Strict target (no tolerance): the starting point should sit on the
    // covert side of the boundary, not inside the tolerance band.
    auto ok_at = [&](double theta) {
        DesignPoint t = d;
        t.p_c = theta * avail;
        return ctx.true_g(t) >= 1.0 - cfg.epsilon;
    };
    double theta = 0.0;
    if (avail > 0.0) {
        if (ok_at(1.0)) {
            theta = 1.0;
        } else {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (ok_at(mid)) lo = mid;
                else hi = mid;
            }
            theta = lo;
        }
    }
    d.p_c = theta * avail;

    // The block ascent is local while the rate landscape oscillates in the
    // positions at the guide-wavelength scale, so an equally-spaced start
    // can sit in a poor basin. Score a seeded batch of random candidates,
    // each repaired onto the covert side by shrinking its covert power,
    // and start from the best of them and the constructed point.
    DesignPoint pick = d;
    double pick_acr = ctx.acr(d);
    const std::uint64_t probe_seed =
        philox_u64(seed, static_cast<std::uint64_t>(start_index), kInitProbe, 0);
    for (int probe = 0; probe < cfg.init_probes; ++probe) {
        DesignPoint c = sample_random_design(
            p, cfg, ctx, probe_seed, static_cast<std::uint64_t>(probe));
        if (!(ctx.true_g(c) >= 1.0 - cfg.epsilon)) {
            const double pc0 = c.p_c;
            auto probe_ok = [&](double t) {
                DesignPoint q = c;
                q.p_c = t * pc0;
                return ctx.true_g(q) >= 1.0 - cfg.epsilon;
            };
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 20; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (probe_ok(mid)) lo = mid;
                else hi = mid;
            }
            c.p_c = lo * pc0;
        }
        const double a = ctx.acr(c);
        if (a > pick_acr) {
            pick_acr = a;
            pick = c;
        }
    }
    return pick;
}

OptimizeResult optimize(const OptimizerProblem& p, const OptimizerConfig& cfg) {
    if (cfg.multistart < 1)
        throw ParamOutOfRange("optimize: multistart must be >= 1");
    RunContext ctx{&p, &cfg, gauss_legendre(cfg.quad_nodes), resolve_dx_min(cfg, p.geom)};
    const auto builder = [&](const DesignPoint& d) { return ctx.profiles(d); };

    OptimizeResult best;
    bool have_best = false;
    OptimizerTrace all_rows;

    for (int start = 0; start < cfg.multistart; ++start) {
        DesignPoint d = feasible_init(p, cfg, cfg.seed, start);
        const Layout lo = layout_of(d);

        double tau0 = 0.0;
        double g = ctx.true_g(d, &tau0);
        double acr = ctx.acr(d);
        {
            TraceRow row;
            row.start = start;
            row.phase = "init";
            row.surrogate = acr;
            row.acr = acr;
            row.g = g;
            row.tau_star = tau0;
            row.slack = g - (1.0 - cfg.epsilon);
            row.accepted = true;
            all_rows.rows.push_back(row);
        }

        double acr_prev = acr;
        for (int outer = 1; outer <= cfg.outer_max; ++outer) {
            OuterAnchor an;
            an.z0 = to_internal(d);
            g = ctx.true_g(d, &an.tau_star);
            an.budget0 = ctx.budget(d);
            const std::vector<double> d_nat =
                dep_gradient(builder, d, an.tau_star, cfg.fd_step_rel);
            const std::vector<double> jac = internal_jacobian(d);
            an.d_int.resize(d_nat.size());
            for (std::size_t i = 0; i < d_nat.size(); ++i)
                an.d_int[i] = d_nat[i] * jac[i];
            an.r = std::min(0.0, (1.0 - cfg.epsilon) - g);

            TraceRow proto;
            proto.start = start;
            proto.outer = outer;
            proto.tau_star = an.tau_star;

            {
                TraceRow row = proto;
                row.phase = "refresh";
                row.surrogate = ctx.acr(d); // surrogate is tight at the anchor
                row.acr = row.surrogate;
                row.g = g;
                row.slack = g - (1.0 - cfg.epsilon);
                row.accepted = true;
                all_rows.rows.push_back(row);
            }

            std::vector<double> z = an.z0;
            for (int inner = 1; inner <= cfg.inner_max; ++inner) {
                TraceRow proto_p = proto;
                proto_p.inner = inner;
                proto_p.phase = "power";
                const BlockOutcome po =
                    block_ascent(ctx, an, d, z, 0, lo.pos_begin, 0.0, all_rows.rows, proto_p);

                TraceRow proto_x = proto;
                proto_x.inner = inner;
                proto_x.phase = "position";
                const BlockOutcome xo =
                    block_ascent(ctx, an, d, z, lo.pos_begin, lo.total,
                                 cfg.proximal_weight, all_rows.rows, proto_x);

                if (po.step_norm + xo.step_norm < cfg.tol_inner) break;
            }
            d = materialize(ctx, d, z);

            const double acr_new = ctx.acr(d);
            if (std::abs(acr_new - acr_prev) < cfg.tol_outer) {
                acr_prev = acr_new;
                break;
            }
            acr_prev = acr_new;
        }

        double tau_fin = 0.0;
        const double g_fin = ctx.true_g(d, &tau_fin);
        const double acr_fin = ctx.acr(d);
        {
            TraceRow row;
            row.start = start;
            row.phase = "final";
            row.surrogate = acr_fin;
            row.acr = acr_fin;
            row.g = g_fin;
            row.tau_star = tau_fin;
            row.slack = g_fin - (1.0 - cfg.epsilon);
            row.accepted = true;
            all_rows.rows.push_back(row);
        }

        const bool feas = ctx.feasible(g_fin);
        if (feas && (!have_best || acr_fin > best.acr)) {
            best.design = d;
            best.acr = acr_fin;
            best.g = g_fin;
            best.tau_star = tau_fin;
            best.start_index = start;
            best.feasible = true;
            have_best = true;
        }
    }
    if (!have_best)
        throw NoFeasibleGridPoint("optimize: no start produced a feasible design");
    best.trace = std::move(all_rows);
    return best;
}

PlacementGrid make_placement_grid(const SystemGeometry& geom, int n_pa,
                                  double dx_min, double step) {
    if (!(step > 0.0))
        throw ParamOutOfRange("make_placement_grid: step must be > 0");
    PlacementGrid g;
    for (double c = 0.0; c <= geom.length + 1e-12; c += step)
        g.centers.push_back(std::min(c, geom.length));
    if (n_pa == 1) {
        g.pitches.push_back(0.0);
    } else {
        const double max_pitch = geom.length / double(n_pa - 1);
        for (double p = dx_min; p <= max_pitch + 1e-12; p += step)
            g.pitches.push_back(std::min(p, max_pitch));
    }
    return g;
}

OptimizeResult grid_search_baseline(const OptimizerProblem& p,
                                    const OptimizerConfig& cfg,
                                    const PlacementGrid& grid_c,
                                    const PlacementGrid& grid_j, int power_steps) {
    if (power_steps < 1)
        throw ParamOutOfRange("grid_search_baseline: power_steps must be >= 1");
    RunContext ctx{&p, &cfg, gauss_legendre(cfg.quad_nodes), resolve_dx_min(cfg, p.geom)};

    auto default_spec = [&](int n) {
        RadiationSpec s;
        s.model = p.model;
        if (p.model == RadiationModel::General)
            s.delta.assign(static_cast<std::size_t>(n), std::sqrt(0.5));
        else if (p.model == RadiationModel::Proportional)
            s.delta_sq = 0.5;
        else
            s.rho = 1.0 / n;
        return s;
    };

    // Symmetric equispaced family around a center.
    auto family = [&](double center, double pitch, int n) -> std::vector<double> {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] = center + (double(i) - double(n - 1) / 2.0) * pitch;
        return x;
    };
    auto valid = [&](const std::vector<double>& x) {
        if (x.front() < -1e-12 || x.back() > p.geom.length + 1e-12) return false;
        return true;
    };
    auto clamp_into = [&](std::vector<double> x) {
        for (double& v : x) v = std::clamp(v, 0.0, p.geom.length);
        return x;
    };

    struct Placement {
        std::vector<double> x;
        double gain_bob = 0.0;
        std::vector<double> gain_wardens;
    };
    auto placements_for = [&](Waveguide wg, const PlacementGrid& grid, int n_pa,
                              const RadiationSpec& spec) {
        std::vector<Placement> out;
        DesignPoint probe;
        probe.rad_c = probe.rad_j = spec;
        for (double c : grid.centers) {
            for (double pitch : grid.pitches) {
                if (n_pa > 1 && pitch < ctx.dx - 1e-12) continue;
                std::vector<double> x = family(c, pitch, n_pa);
                if (!valid(x)) continue;
                x = clamp_into(std::move(x));
                bool strict = true;
                for (std::size_t i = 1; i < x.size(); ++i)
                    if (!(x[i] > x[i - 1])) { strict = false; break; }
                if (!strict) continue;
                Placement pl;
                pl.x = x;
                if (wg == Waveguide::Covert) probe.x_c = x;
                else probe.x_j = x;
                DesignPoint one = probe;
                if (wg == Waveguide::Covert) one.x_c = x; else one.x_j = x;
                pl.gain_bob = array_gain(p.geom, wg, one, p.bob);
                pl.gain_wardens.reserve(p.wardens.positions.size());
                for (const Vec3& wpos : p.wardens.positions)
                    pl.gain_wardens.push_back(array_gain(p.geom, wg, one, wpos));
                out.push_back(std::move(pl));
            }
        }
        return out;
    };

    const RadiationSpec spec_c = default_spec(p.n_c);
    const RadiationSpec spec_j = default_spec(p.n_j);
    DesignPoint probe_c, probe_j;
    probe_c.rad_c = spec_c;
    probe_c.rad_j = spec_j;
    const std::vector<Placement> pls_c = placements_for(Waveguide::Covert, grid_c, p.n_c, spec_c);
    const std::vector<Placement> pls_j = placements_for(Waveguide::Jamming, grid_j, p.n_j, spec_j);
    if (pls_c.empty() || pls_j.empty())
        throw NoFeasibleGridPoint("grid_search_baseline: no valid placement in the grid");

    const double delta_p = cfg.p_max / double(power_steps);
    const int m = static_cast<int>(p.wardens.positions.size());

    OptimizeResult best;
    best.acr = -1.0;
    std::vector<WardenProfile> profs(static_cast<std::size_t>(m));
    for (const Placement& pc : pls_c) {
        for (const Placement& pj : pls_j) {
            // Upper bound on this placement's rate: all power to the covert
            // guide, no jamming at the receiver.
            LinkBudget bound{cfg.p_max * pc.gain_bob, 0.0, p.sigma_b_sq};
            if (avg_covert_rate(bound, ctx.quad) <= best.acr) continue;
            for (int i = 0; i <= power_steps; ++i) {
                const double p_c = double(i) * delta_p;
                for (int j = 0; i + j <= power_steps; ++j) {
                    const double p_j = double(j) * delta_p;
                    const LinkBudget lb{p_c * pc.gain_bob, p_j * pj.gain_bob, p.sigma_b_sq};
                    const double acr = avg_covert_rate(lb, ctx.quad);
                    if (acr <= best.acr) continue;
                    for (int w = 0; w < m; ++w)
                        profs[static_cast<std::size_t>(w)] = make_profile(
                            pc.gain_wardens[static_cast<std::size_t>(w)],
                            pj.gain_wardens[static_cast<std::size_t>(w)], p_c, p_j,
                            p.wardens.sigma_w_sq);
                    const MinDepResult mdr = min_dep_threshold(profs, cfg.grid_density);
                    if (!ctx.feasible(mdr.g_star)) continue;
                    best.acr = acr;
                    best.g = mdr.g_star;
                    best.tau_star = mdr.tau_star;
                    best.design.p_c = p_c;
                    best.design.p_j_max = p_j;
                    best.design.rad_c = spec_c;
                    best.design.rad_j = spec_j;
                    best.design.x_c = pc.x;
                    best.design.x_j = pj.x;
                    best.feasible = true;
                }
            }
        }
    }
    if (!best.feasible)
        throw NoFeasibleGridPoint("grid_search_baseline: no feasible grid point");
    return best;
}

RandomSearchResult random_search_baseline(const OptimizerProblem& p,
                                          const OptimizerConfig& cfg,
                                          int n_feasible, std::uint64_t seed,
                                          int budget_cap) {
    if (n_feasible < 1)
        throw ParamOutOfRange("random_search_baseline: n_feasible must be >= 1");
    RunContext ctx{&p, &cfg, gauss_legendre(cfg.quad_nodes), resolve_dx_min(cfg, p.geom)};

    RandomSearchResult res;
    double acr_sum = 0.0;
    int found = 0;
    for (int draw = 0; draw < budget_cap && found < n_feasible; ++draw) {
        const DesignPoint d = sample_random_design(
            p, cfg, ctx, seed, static_cast<std::uint64_t>(draw));
        const double g = ctx.true_g(d);
        res.draws_used = draw + 1;
        if (!ctx.feasible(g)) continue;
        const double acr = ctx.acr(d);
        acr_sum += acr;
        ++found;
        if (acr > res.best_acr || found == 1) {
            res.best_acr = acr;
            res.best = d;
        }
    }
    if (found < n_feasible)
        throw RejectionBudgetExceeded("random_search_baseline: budget exhausted");
    res.mean_acr = acr_sum / double(found);
    return res;
}

} // namespace passcov
