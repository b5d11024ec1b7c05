#pragma once

#include <string>
#include <vector>

#include "passcov/radiation.hpp"

namespace passcov {

// One complete transmit-side configuration: powers, radiation parameters
// for both waveguides, and PA x-coordinates. Positions are kept sorted
// ascending by every producer in this library.
struct DesignPoint {
    double p_c = 0.0;     // covert transmit power [W]
    double p_j_max = 0.0; // peak jamming power [W]
    RadiationSpec rad_c;
    RadiationSpec rad_j;
    std::vector<double> x_c; // covert-guide PA coordinates [m]
    std::vector<double> x_j; // jamming-guide PA coordinates [m]
};

// Number of free radiation parameters for a spec driving n PAs.
int radiation_param_count(const RadiationSpec& spec, int n);

// Flat coordinate vector used by finite differencing and the optimizer:
//   [ p_c, p_j_max,
//     radiation params of the covert guide (General: delta_1..delta_N;
//     Proportional: delta_sq; Equal: rho),
//     radiation params of the jamming guide,
//     x_c..., x_j... ]
std::vector<double> flatten_design(const DesignPoint& d);

// Rebuilds a design from a flat vector, taking models and sizes from
// `like`. Throws LengthMismatch if v has the wrong length.
DesignPoint unflatten_design(const DesignPoint& like, const std::vector<double>& v);

// Human-readable coordinate names aligned with flatten_design.
std::vector<std::string> design_labels(const DesignPoint& d);

} // namespace passcov
