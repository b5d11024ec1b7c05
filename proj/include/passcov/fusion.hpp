#pragma once

#include <vector>

#include "passcov/errors.hpp"
#include "passcov/local_detect.hpp"

namespace passcov {

// Distribution of the number of votes among M independent wardens with
// per-warden success probabilities p_m. coeff[i] = P(exactly i votes).
struct PgfCoefficients {
    std::vector<double> coeff; // length M + 1
};

// Which event the success probabilities describe.
enum class Sense { Alarm, Detect };

enum class Side { Upper, Lower };

// Elementary symmetric polynomials xi_0..xi_M of x (xi_0 = 1), computed by
// the stable one-pass recurrence. Throws TooManyWardens above 64 entries
// (the alternating-sum identities downstream lose accuracy long before the
// recurrence itself does; the vote-count product path has no such cap).
std::vector<double> esp(const std::vector<double>& x);

// Vote-count distribution by iterative polynomial multiplication of the
// per-warden factors (1 - p_m) + p_m z. O(M^2), numerically benign.
// For Sense::Alarm pass false-alarm probabilities, for Sense::Detect pass
// detection probabilities (1 - p_md).
PgfCoefficients pgf_coeffs(const std::vector<double>& p, Sense sense);

// Same distribution through the symmetric-polynomial identity
//   coeff[i] = sum_{k=i}^{M} (-1)^{k+i} C(k,i) xi_k(p).
// Kept as a cross-checked secondary path; prefer pgf_coeffs.
PgfCoefficients pgf_coeffs_via_esp(const std::vector<double>& p);

// Tail mass of a vote-count distribution: Side::Upper sums indices >= t,
// Side::Lower sums indices <= t - 1. Requires 0 <= t <= M + 1.
double majority_tail(const PgfCoefficients& c, int t, Side side);

// Majority rule: smallest vote count that carries the decision.
inline int majority_threshold(int m) { return m / 2 + 1; }

// System-level detectability at threshold tau under majority fusion:
//   P(false alarm: >= T wardens alarm under H0)
// + P(missed detection: <= T-1 wardens detect under H1)
// with T = majority_threshold(M). This is the production evaluation path
// for arbitrary profiles.
double dep_exact(double tau, const std::vector<WardenProfile>& wardens);

// xi_k(a - c * 1) expanded in the unshifted xi_j(a):
//   sum_{r=0}^{k} (-c)^r C(M-k+r, r) xi_{k-r}(a),  M = a.size().
double shifted_esp(const std::vector<double>& a, double c, int k);

// Exact binomial coefficient as a double (n <= 64).
double binom(int n, int k);

} // namespace passcov
