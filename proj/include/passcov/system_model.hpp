#pragma once

#include <vector>

#include "passcov/design.hpp"
#include "passcov/geometry.hpp"
#include "passcov/local_detect.hpp"
#include "passcov/rate.hpp"

namespace passcov {

// Monitoring side of a deployment: receiver locations plus their common
// noise power.
struct WardenSet {
    std::vector<Vec3> positions;
    double sigma_w_sq = 0.0; // [W]
};

// Effective power gain of one waveguide's array toward `target` for a
// given design (positions + radiation fractions), unit transmit power.
double array_gain(const SystemGeometry& g, Waveguide wg, const DesignPoint& d,
                  const Vec3& target);

// Detection-side view: one profile per warden, from the design's powers
// and both arrays' gains at each warden location.
std::vector<WardenProfile> warden_profiles(const SystemGeometry& g,
                                           const DesignPoint& d,
                                           const WardenSet& wardens);

// Rate-side view at the intended receiver.
LinkBudget make_link_budget(const SystemGeometry& g, const DesignPoint& d,
                            const Vec3& bob, double sigma_b_sq);

} // namespace passcov
