#include "passcov/local_detect.hpp"

#include <algorithm>

namespace passcov {

WardenProfile make_profile(double a_c, double a_j, double p_c, double p_j_max,
                           double sigma_w_sq) {
    if (!(a_c >= 0.0) || !(a_j >= 0.0) || !(p_c >= 0.0) || !(p_j_max >= 0.0))
        throw ParamOutOfRange("make_profile: gains and powers must be >= 0");
    if (!(sigma_w_sq > 0.0))
        throw ParamOutOfRange("make_profile: sigma_w_sq must be > 0");
    WardenProfile w;
    w.a_c = a_c;
    w.a_j = a_j;
    w.p_c = p_c;
    w.p_j_max = p_j_max;
    w.sigma_w_sq = sigma_w_sq;
    w.alpha1 = sigma_w_sq + p_j_max * a_j;
    w.alpha2 = sigma_w_sq + p_c * a_c;
    w.alpha3 = w.alpha1 + w.alpha2 - sigma_w_sq;
    w.degenerate_jamming = (p_j_max * a_j == 0.0);
    return w;
}

double p_fa(const WardenProfile& w, double tau) {
    if (!(tau >= 0.0))
        throw ParamOutOfRange("p_fa: tau must be >= 0");
    if (w.degenerate_jamming)
        return tau <= w.sigma_w_sq ? 1.0 : 0.0;
    if (tau < w.sigma_w_sq) return 1.0;
    if (tau > w.alpha1) return 0.0;
    // The ramp value is in [0,1] exactly; the division can spill by an ulp
    // when alpha1 = sigma + p_j_max a_j rounded.
    return std::clamp((w.alpha1 - tau) / (w.p_j_max * w.a_j), 0.0, 1.0);
}

double p_md(const WardenProfile& w, double tau) {
    if (!(tau >= 0.0))
        throw ParamOutOfRange("p_md: tau must be >= 0");
    if (w.degenerate_jamming)
        return tau > w.alpha2 ? 1.0 : 0.0;
    if (tau < w.alpha2) return 0.0;
    if (tau > w.alpha3) return 1.0;
    return std::clamp((tau - w.alpha2) / (w.p_j_max * w.a_j), 0.0, 1.0);
}

} // namespace passcov
