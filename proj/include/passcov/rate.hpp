#pragma once

#include <vector>

#include "passcov/errors.hpp"

namespace passcov {

// Nodes and weights on [0, 1]; weights sum to 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule with n nodes mapped to [0, 1], generated by Newton
// iteration on the Legendre recurrence. Integrates polynomials up to
// degree 2n - 1 exactly.
QuadratureRule gauss_legendre(int n);

// Received powers at the intended receiver. The jammer draws its power
// uniformly on [0, p_j_max], so the interference realization is xi * i
// with xi ~ U[0,1].
struct LinkBudget {
    double s = 0.0;          // covert received power [W]
    double i = 0.0;          // peak jamming received power [W]
    double sigma_b_sq = 0.0; // receiver noise power [W]
};

// s / (xi * i + sigma_b_sq); xi in [0, 1].
double sinr(const LinkBudget& lb, double xi);

// Average covert rate over the jamming draw:
//   sum_l w_l log2(1 + sinr(xi_l))   [bits/s/Hz].
double avg_covert_rate(const LinkBudget& lb, const QuadratureRule& q);

struct SurrogateEval {
    double value = 0.0; // surrogate rate [bits/s/Hz]
    double d_s = 0.0;   // derivative w.r.t. s
    double d_i = 0.0;   // derivative w.r.t. i
};

// Concave minorant of avg_covert_rate in (s, i), anchored at `anchor`:
// the log of the total received power stays exact while the interference
// log is linearized around the anchor,
//   r_l = [ln(s + xi_l i + sig) - ln(D_l) - (xi_l / D_l)(i - i0)] / ln 2,
//   D_l = xi_l i0 + sig.
// Tight at the anchor (value and gradient), never above the true rate.
SurrogateEval mm_rate_surrogate(const LinkBudget& at, const LinkBudget& anchor,
                                const QuadratureRule& q);

} // namespace passcov
