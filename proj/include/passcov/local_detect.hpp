#pragma once

#include "passcov/errors.hpp"

namespace passcov {

// One warden's view of the link, reduced to the quantities its energy
// detector sees. The detector compares the averaged received power
// against a threshold tau; the jammer draws its power uniformly from
// [0, p_j_max] per transmission, which smears both hypotheses over
//   H0: [sigma_w_sq, alpha1]           (jamming + noise)
//   H1: [alpha2,     alpha3]           (covert + jamming + noise)
// with
//   alpha1 = sigma_w_sq + p_j_max * a_j
//   alpha2 = sigma_w_sq + p_c * a_c
//   alpha3 = alpha1 + alpha2 - sigma_w_sq.
struct WardenProfile {
    double a_c = 0.0;        // effective gain of the covert array at this warden
    double a_j = 0.0;        // effective gain of the jamming array
    double p_c = 0.0;        // covert transmit power [W]
    double p_j_max = 0.0;    // peak jamming power [W]
    double sigma_w_sq = 0.0; // receiver noise power [W]

    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    bool degenerate_jamming = false; // p_j_max * a_j == 0: masking absent
};

// Validates inputs (all >= 0, sigma_w_sq > 0) and fills the derived fields.
WardenProfile make_profile(double a_c, double a_j, double p_c, double p_j_max,
                           double sigma_w_sq);

// False-alarm probability of the local detector at threshold tau:
//   1 below sigma_w_sq, (alpha1 - tau) / (p_j_max * a_j) on
//   [sigma_w_sq, alpha1], 0 above. With degenerate jamming the H0
//   statistic is deterministic and this collapses to [tau <= sigma_w_sq].
double p_fa(const WardenProfile& w, double tau);

// Missed-detection probability at threshold tau: 0 below alpha2,
//   (tau - alpha2) / (p_j_max * a_j) on [alpha2, alpha3], 1 above.
// Degenerate jamming collapses it to [tau > alpha2].
double p_md(const WardenProfile& w, double tau);

} // namespace passcov
