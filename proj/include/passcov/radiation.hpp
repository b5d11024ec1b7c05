#pragma once

#include <vector>

#include "passcov/errors.hpp"

namespace passcov {

// How the transmit power is split across the PAs of one waveguide.
//
// General:      per-PA couplers delta_n in (0,1); PA n radiates the fraction
//               rho_n = delta_n^2 * prod_{i<n} (1 - delta_i^2) of the power
//               still travelling in the guide.
// Proportional: one coupler value for every PA, rho_n = d2 * (1-d2)^(n-1)
//               with d2 in (0,1).
// Equal:        every PA radiates the same fraction rho, 0 < rho <= 1/N.
//
// In all three models sum_n rho_n + (power left in the guide) == 1.
enum class RadiationModel { General, Proportional, Equal };

struct RadiationSpec {
    RadiationModel model = RadiationModel::Equal;
    std::vector<double> delta; // General: coupling amplitudes, one per PA
    double delta_sq = 0.5;     // Proportional
    double rho = 0.0;          // Equal; 0 means "use 1/N when materialized"
};

// rho_n = delta_n^2 * prod_{i<n} (1 - delta_i^2). delta_n in (0,1) strictly.
std::vector<double> fractions_general(const std::vector<double>& delta);

// rho_n = delta_sq * (1 - delta_sq)^(n-1), delta_sq in (0,1) strictly.
std::vector<double> fractions_proportional(double delta_sq, int n);

// rho_n = rho for all n, 0 < rho <= 1/n.
std::vector<double> fractions_equal(double rho, int n);

// Materialize a spec for an array of n PAs.
std::vector<double> fractions(const RadiationSpec& spec, int n);

// Power still inside the guide after the last PA: 1 - sum(fractions).
double residual_power(const std::vector<double>& fractions);

} // namespace passcov
