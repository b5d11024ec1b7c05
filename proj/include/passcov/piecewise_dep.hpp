#pragma once

#include <functional>
#include <string>
#include <vector>

#include "passcov/design.hpp"
#include "passcov/fusion.hpp"

namespace passcov {

// Which ramp opens first as tau sweeps upward: the earliest detection ramp
// (alpha2_min) or the earliest false-alarm cutoff (alpha1_min). The two
// orderings produce different interval layouts but share the same building
// blocks.
enum class OrderingCase { MdOnsetFirst, FaCutoffFirst };

std::string ordering_case_name(OrderingCase c);

// Sorted landscape of the per-warden breakpoints. Valid for any profile
// set; the closed-form evaluator additionally needs a common noise power
// and a common slope (see NormalizedConstants).
struct BreakpointTable {
    double sigma_sq = 0.0;                    // common noise power
    std::vector<double> alpha1, alpha2, alpha3; // warden order
    double alpha1_min = 0.0, alpha1_max = 0.0;
    double alpha2_min = 0.0, alpha2_max = 0.0;
    double alpha3_min = 0.0, alpha3_max = 0.0;
    OrderingCase ordering_case = OrderingCase::MdOnsetFirst;
    // True when the earliest missed-detection saturation (alpha3_min) does
    // not exceed the last false-alarm cutoff (alpha1_max), i.e. saturated
    // wardens exist while some false-alarm ramps are still live.
    bool md_saturates_inside_fa = false;
    std::vector<double> knots; // sigma_sq and all alphas, sorted, deduped
};

// Per-warden constants of the linear ramps, normalized by the jamming
// spread p_j_max * a_j:
//   p_fa_m(tau) = a_m - b_m tau   on its ramp,
//   p_md_m(tau) = b_m tau - c_m   on its ramp.
struct NormalizedConstants {
    std::vector<double> a, c, b;
    double b_common = 0.0;        // meaningful iff homogeneous_slope
    bool homogeneous_slope = false; // all b_m equal within 1e-9 relative
};

// Requires a non-empty profile set with a common sigma_w_sq and no
// degenerate jamming; throws ParamOutOfRange / DegenerateJamming.
BreakpointTable build_breakpoints(const std::vector<WardenProfile>& wardens);

NormalizedConstants normalized_constants(const std::vector<WardenProfile>& wardens);

// How many wardens each threshold family has left behind at tau
// (closed-left: a breakpoint equal to tau counts as crossed).
//   l = #{alpha1_m <= tau}   false-alarm ramps finished
//   k = #{alpha2_m <= tau}   detection ramps started
//   s = #{alpha3_m <= tau}   detection ramps saturated
struct IndexCounts { int l = 0, k = 0, s = 0; };

IndexCounts index_functions(double tau, const BreakpointTable& t);

// Which warden subset the symmetric polynomials run over.
enum class EspSelector {
    FullSet,      // a_m, all wardens
    ActiveFa,     // a_m, wardens with alpha1_m > tau
    LinearMd,     // 1 + c_m, wardens with alpha2_m <= tau
    LinearMdUnsat // 1 + c_m, wardens with alpha2_m <= tau < alpha3_m
};

// Symmetric polynomial of order x over the selected subset shifted by the
// common ramp term: xi_x(selected - b tau * 1). Algebraically equal to the
// binomial expansion sum_{r=0}^{x} (-b tau)^r C(y - x + r, r) xi_{x-r}
// (see shifted_esp), where y is the subset size, but evaluated on the
// shifted values directly since the expansion is ill-conditioned for
// large b tau. Returns 0 for x > y, 1 for x == 0. Requires a homogeneous
// slope.
double psi_poly(double tau, int x, EspSelector sel,
                const NormalizedConstants& nc, const BreakpointTable& t);

// Closed-form system detectability at tau, assembled from the interval
// layout: below sigma_sq and beyond alpha3_max the value is exactly 1; in
// between, an alternating-sum false-alarm tail over the still-active ramps
// plus a missed-detection block in which certain detections enter through
// binomial convolution and saturated wardens shrink the effective set.
// Requires homogeneous slopes; throws HeterogeneousSlope otherwise.
// Agrees with dep_exact everywhere on its domain.
double dep_piecewise(double tau, const BreakpointTable& t, const NormalizedConstants& nc);

struct MinDepResult {
    double tau_star = 0.0;
    double g_star = 1.0;  // min over tau of the detectability
    int evaluations = 0;
};

// Global minimum of dep_exact over tau: candidate sweep over every
// breakpoint plus `grid_density` points strictly inside each consecutive
// knot pair, then golden-section refinement inside the best bracket.
// Ties resolve to the smaller tau.
MinDepResult min_dep_threshold(const std::vector<WardenProfile>& wardens,
                               int grid_density = 64);

using ProfileBuilder = std::function<std::vector<WardenProfile>(const DesignPoint&)>;

// Central finite-difference gradient of tau |-> dep_exact(tau_star, .) with
// respect to the flat design coordinates, tau_star held fixed. Steps are
// max(|x_i| * fd_step_rel, 1e-12); coordinates whose perturbation the
// builder rejects (e.g. a position pinned at a waveguide end) fall back to
// a one-sided difference. Throws NonFiniteGradient if no finite estimate
// exists for some coordinate.
std::vector<double> dep_gradient(const ProfileBuilder& build, const DesignPoint& at,
                                 double tau_star, double fd_step_rel = 1e-6);

} // namespace passcov
