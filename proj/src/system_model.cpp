#include "passcov/system_model.hpp"

namespace passcov {

double array_gain(const SystemGeometry& g, Waveguide wg, const DesignPoint& d,
                  const Vec3& target) {
    const std::vector<double>& x = (wg == Waveguide::Covert) ? d.x_c : d.x_j;
    const RadiationSpec& spec = (wg == Waveguide::Covert) ? d.rad_c : d.rad_j;
    const std::vector<Vec3> pas = pa_positions(g, wg, x);
    const std::vector<double> rho = fractions(spec, static_cast<int>(x.size()));
    return effective_gain(freespace_channel(g, pas, target), rho,
                          waveguide_phase(g, x));
}

std::vector<WardenProfile> warden_profiles(const SystemGeometry& g,
                                           const DesignPoint& d,
                                           const WardenSet& wardens) {
    std::vector<WardenProfile> out;
    out.reserve(wardens.positions.size());
    for (const Vec3& pos : wardens.positions) {
        const double a_c = array_gain(g, Waveguide::Covert, d, pos);
        const double a_j = array_gain(g, Waveguide::Jamming, d, pos);
        out.push_back(make_profile(a_c, a_j, d.p_c, d.p_j_max, wardens.sigma_w_sq));
    }
    return out;
}

LinkBudget make_link_budget(const SystemGeometry& g, const DesignPoint& d,
                            const Vec3& bob, double sigma_b_sq) {
    LinkBudget lb;
    lb.s = d.p_c * array_gain(g, Waveguide::Covert, d, bob);
    lb.i = d.p_j_max * array_gain(g, Waveguide::Jamming, d, bob);
    lb.sigma_b_sq = sigma_b_sq;
    return lb;
}

} // namespace passcov
