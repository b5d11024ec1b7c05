#pragma once

#include <cstdint>
#include <vector>

#include "passcov/local_detect.hpp"
#include "passcov/rate.hpp"

namespace passcov {

// Whether the per-transmission jamming power draw is shared by all wardens
// (one jammer, the physical situation) or drawn independently per warden
// (the statistical model the closed forms multiply over). Local
// probabilities are identical either way; fused probabilities are not.
enum class JammingMode { IndependentPerWarden, SharedRealization };

struct McConfig {
    std::uint64_t seed = 1;
    std::int64_t trials = 100000;
    JammingMode jamming_mode = JammingMode::IndependentPerWarden;
    // 0: idealized infinite-average statistic (jamming power + noise floor,
    // plus the covert term under H1). n > 0: average of n squared samples
    // with explicit unit-modulus signals and complex Gaussian noise.
    int finite_n = 0;
};

struct McLocalEstimate {
    double p_fa = 0.0, p_md = 0.0;
    double se_fa = 0.0, se_md = 0.0; // binomial standard errors
};

// Empirical local error rates of one warden's detector at threshold tau.
// Deterministic in (config.seed, profile, tau); counter-based substreams
// keyed by (hypothesis, trial, sample).
McLocalEstimate mc_local(const WardenProfile& w, double tau, const McConfig& cfg);

struct McDepEstimate {
    double p_fa_sys = 0.0, p_md_sys = 0.0;
    double dep = 0.0;
    double se = 0.0; // sqrt(se_fa^2 + se_md^2), hypotheses use disjoint streams
};

// Empirical majority-fused detectability. Substreams are keyed by
// (hypothesis, warden, trial, sample); SharedRealization routes every
// warden's jamming-power draw through the warden-0 substream, so M == 1
// reproduces IndependentPerWarden bit for bit.
McDepEstimate mc_system_dep(const std::vector<WardenProfile>& wardens, double tau,
                            const McConfig& cfg);

struct EnumFusionResult {
    double p_fa_sys = 0.0;
    double p_md_sys = 0.0;
    double dep = 0.0;
};

// Exact fused error probabilities by enumerating all 2^M decision
// patterns. Guard rail for the polynomial path; M <= 20.
EnumFusionResult enum_fusion(const std::vector<double>& p_fa,
                             const std::vector<double>& p_md, int t_major);

struct McRateEstimate {
    double rate = 0.0; // bits/s/Hz
    double se = 0.0;
};

// Plain Monte-Carlo average of log2(1 + sinr(xi)) over xi ~ U[0,1];
// oracle for the quadrature path.
McRateEstimate mc_avg_rate(const LinkBudget& lb, std::int64_t samples,
                           std::uint64_t seed);

} // namespace passcov
