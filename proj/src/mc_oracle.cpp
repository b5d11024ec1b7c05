#include "passcov/mc_oracle.hpp"

#include <cmath>
#include <complex>

#include "passcov/errors.hpp"
#include "passcov/fusion.hpp"
#include "passcov/rng.hpp"

namespace passcov {

namespace {

// Substream purposes; stream id = (purpose << 20) | warden index.
enum Purpose : std::uint32_t {
    kJamH0 = 0,
    kJamH1 = 1,
    kPhaseJamH0 = 2,
    kPhaseJamH1 = 3,
    kPhaseCovH1 = 4,
    kNoiseH0 = 5,
    kNoiseH1 = 6,
    kRateXi = 7,
};

std::uint32_t stream_id(Purpose p, std::uint32_t warden) {
    return (static_cast<std::uint32_t>(p) << 20) | warden;
}

void check_cfg(const McConfig& cfg) {
    if (cfg.trials < 1)
        throw ParamOutOfRange("mc: trials must be >= 1");
    if (cfg.finite_n < 0)
        throw ParamOutOfRange("mc: finite_n must be >= 0");
}

// Detector statistic for one (hypothesis, warden, trial). `jam_warden`
// selects whose substream provides the jamming power draw (shared mode
// pins it to warden 0).
double statistic(const WardenProfile& w, bool h1, std::uint64_t seed,
                 std::int64_t trial, std::uint32_t warden, std::uint32_t jam_warden,
                 int finite_n) {
    const std::uint64_t t = static_cast<std::uint64_t>(trial);
    const double u = philox_u01(seed, t, stream_id(h1 ? kJamH1 : kJamH0, jam_warden), 0);
    const double p_j = u * w.p_j_max;
    if (finite_n == 0)
        return (h1 ? w.p_c * w.a_c : 0.0) + p_j * w.a_j + w.sigma_w_sq;

    // Explicit n-sample average: unit-modulus signals through scalar
    // effective channels, complex Gaussian receiver noise.
    const double amp_j = std::sqrt(p_j * w.a_j);
    const double amp_c = h1 ? std::sqrt(w.p_c * w.a_c) : 0.0;
    const double noise_scale = std::sqrt(w.sigma_w_sq / 2.0);
    double acc = 0.0;
    for (int i = 0; i < finite_n; ++i) {
        const auto idx = static_cast<std::uint32_t>(i);
        const double th_j = 2.0 * M_PI *
            philox_u01(seed, t, stream_id(h1 ? kPhaseJamH1 : kPhaseJamH0, warden), idx);
        std::complex<double> y = std::polar(amp_j, th_j);
        if (h1) {
            const double th_c =
                2.0 * M_PI * philox_u01(seed, t, stream_id(kPhaseCovH1, warden), idx);
            y += std::polar(amp_c, th_c);
        }
        const auto [u1, u2] =
            philox_u01x2(seed, t, stream_id(h1 ? kNoiseH1 : kNoiseH0, warden), idx);
        // Box-Muller; guard the log against u1 == 0.
        const double r = std::sqrt(-2.0 * std::log(u1 + 1e-300));
        y += noise_scale * std::complex<double>(r * std::cos(2.0 * M_PI * u2),
                                                r * std::sin(2.0 * M_PI * u2));
        acc += std::norm(y);
    }
    return acc / double(finite_n);
}

} // namespace

McLocalEstimate mc_local(const WardenProfile& w, double tau, const McConfig& cfg) {
    check_cfg(cfg);
    if (!(tau >= 0.0))
        throw ParamOutOfRange("mc_local: tau must be >= 0");
    std::int64_t alarms = 0, misses = 0;
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        if (statistic(w, false, cfg.seed, t, 0, 0, cfg.finite_n) >= tau) ++alarms;
        if (statistic(w, true, cfg.seed, t, 0, 0, cfg.finite_n) < tau) ++misses;
    }
    McLocalEstimate e;
    const double n = double(cfg.trials);
    e.p_fa = double(alarms) / n;
    e.p_md = double(misses) / n;
    e.se_fa = std::sqrt(e.p_fa * (1.0 - e.p_fa) / n);
    e.se_md = std::sqrt(e.p_md * (1.0 - e.p_md) / n);
    return e;
}

McDepEstimate mc_system_dep(const std::vector<WardenProfile>& wardens, double tau,
                            const McConfig& cfg) {
    check_cfg(cfg);
    if (wardens.empty())
        throw EmptyWardenSet("mc_system_dep: no wardens");
    if (!(tau >= 0.0))
        throw ParamOutOfRange("mc_system_dep: tau must be >= 0");
    const int m = static_cast<int>(wardens.size());
    const int t_major = majority_threshold(m);
    const bool shared = cfg.jamming_mode == JammingMode::SharedRealization;
    std::int64_t false_alarms = 0, missed = 0;
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        int alarm_count = 0, detect_count = 0;
        for (int w = 0; w < m; ++w) {
            const auto wi = static_cast<std::uint32_t>(w);
            const std::uint32_t jam_w = shared ? 0u : wi;
            const auto& prof = wardens[static_cast<std::size_t>(w)];
            if (statistic(prof, false, cfg.seed, t, wi, jam_w, cfg.finite_n) >= tau)
                ++alarm_count;
            if (statistic(prof, true, cfg.seed, t, wi, jam_w, cfg.finite_n) >= tau)
                ++detect_count;
        }
        if (alarm_count >= t_major) ++false_alarms;
        if (detect_count <= t_major - 1) ++missed;
    }
    McDepEstimate e;
    const double n = double(cfg.trials);
    e.p_fa_sys = double(false_alarms) / n;
    e.p_md_sys = double(missed) / n;
    e.dep = e.p_fa_sys + e.p_md_sys;
    const double v_fa = e.p_fa_sys * (1.0 - e.p_fa_sys) / n;
    const double v_md = e.p_md_sys * (1.0 - e.p_md_sys) / n;
    e.se = std::sqrt(v_fa + v_md);
    return e;
}

EnumFusionResult enum_fusion(const std::vector<double>& p_fa,
                             const std::vector<double>& p_md, int t_major) {
    const int m = static_cast<int>(p_fa.size());
    if (m == 0)
        throw EmptyWardenSet("enum_fusion: no wardens");
    if (p_md.size() != p_fa.size())
        throw LengthMismatch("enum_fusion: p_fa and p_md must have equal length");
    if (m > 20)
        throw TooManyWardens("enum_fusion: enumeration supports at most 20 wardens");
    if (t_major < 0 || t_major > m + 1)
        throw IndexOutOfRange("enum_fusion: t_major outside [0, M+1]");
    for (int i = 0; i < m; ++i) {
        if (!(p_fa[static_cast<std::size_t>(i)] >= 0.0) ||
            !(p_fa[static_cast<std::size_t>(i)] <= 1.0) ||
            !(p_md[static_cast<std::size_t>(i)] >= 0.0) ||
            !(p_md[static_cast<std::size_t>(i)] <= 1.0))
            throw ProbOutOfRange("enum_fusion: probabilities must lie in [0,1]");
    }
    EnumFusionResult r;
    for (std::uint32_t pattern = 0; pattern < (1u << m); ++pattern) {
        int votes = 0;
        double pr_alarm = 1.0, pr_detect = 1.0;
        for (int w = 0; w < m; ++w) {
            const auto ws = static_cast<std::size_t>(w);
            const bool one = (pattern >> w) & 1u;
            votes += one;
            pr_alarm *= one ? p_fa[ws] : 1.0 - p_fa[ws];
            pr_detect *= one ? 1.0 - p_md[ws] : p_md[ws];
        }
        if (votes >= t_major) r.p_fa_sys += pr_alarm;
        else r.p_md_sys += pr_detect;
    }
    r.dep = r.p_fa_sys + r.p_md_sys;
    return r;
}

McRateEstimate mc_avg_rate(const LinkBudget& lb, std::int64_t samples,
                           std::uint64_t seed) {
    if (samples < 2)
        throw ParamOutOfRange("mc_avg_rate: need at least two samples");
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t t = 0; t < samples; ++t) {
        const double xi = philox_u01(seed, static_cast<std::uint64_t>(t),
                                     stream_id(kRateXi, 0), 0);
        const double r = std::log2(1.0 + sinr(lb, xi));
        sum += r;
        sumsq += r * r;
    }
    McRateEstimate e;
    const double n = double(samples);
    e.rate = sum / n;
    const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));
    e.se = std::sqrt(var / n);
    return e;
}

} // namespace passcov
