#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "passcov/fusion.hpp"
#include "passcov/rng.hpp"

using namespace passcov;

namespace {

// Exhaustive vote distribution over all 2^M outcomes.
std::vector<double> enum_votes(const std::vector<double>& p) {
    const int m = static_cast<int>(p.size());
    std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        double prob = 1.0;
        int votes = 0;
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) {
                prob *= p[static_cast<std::size_t>(i)];
                ++votes;
            } else {
                prob *= 1.0 - p[static_cast<std::size_t>(i)];
            }
        }
        out[static_cast<std::size_t>(votes)] += prob;
    }
    return out;
}

std::vector<double> random_probs(int m, std::uint64_t seed) {
    std::vector<double> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        p[static_cast<std::size_t>(i)] =
            philox_u01(seed, static_cast<std::uint64_t>(i), 41, 0);
    return p;
}

} // namespace

TEST_CASE("elementary symmetric polynomials of a known vector") {
    const auto xi = esp({1.0, 2.0, 3.0});
    REQUIRE(xi.size() == 4);
    CHECK(xi[0] == 1.0);
    CHECK(xi[1] == 6.0);
    CHECK(xi[2] == 11.0);
    CHECK(xi[3] == 6.0);
}

TEST_CASE("esp is permutation invariant") {
    const auto a = esp({0.2, 0.9, 0.4, 0.7});
    const auto b = esp({0.7, 0.2, 0.9, 0.4});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-15));
}

TEST_CASE("esp input limits") {
    CHECK_THROWS_AS(esp({}), EmptyWardenSet);
    CHECK_NOTHROW(esp(std::vector<double>(64, 0.5)));
    CHECK_THROWS_AS(esp(std::vector<double>(65, 0.5)), TooManyWardens);
}

TEST_CASE("vote distribution of two wardens by hand") {
    const auto c = pgf_coeffs({0.7, 0.2}, Sense::Alarm).coeff;
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(0.24).epsilon(1e-15));
    CHECK(c[1] == doctest::Approx(0.62).epsilon(1e-15));
    CHECK(c[2] == doctest::Approx(0.14).epsilon(1e-15));
}

TEST_CASE("polynomial path matches exhaustive enumeration") {
    for (int m : {1, 2, 5, 10}) {
        const auto p = random_probs(m, 1234);
        const auto c = pgf_coeffs(p, Sense::Alarm).coeff;
        const auto e = enum_votes(p);
        REQUIRE(c.size() == e.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] == doctest::Approx(e[i]).epsilon(1e-12));
            sum += c[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("symmetric-polynomial path agrees with the product path") {
    for (int m : {1, 3, 8, 16}) {
        const auto p = random_probs(m, 77);
        const auto a = pgf_coeffs(p, Sense::Alarm).coeff;
        const auto b = pgf_coeffs_via_esp(p).coeff;
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
    }
}

TEST_CASE("probability validation") {
    CHECK_THROWS_AS(pgf_coeffs({}, Sense::Alarm), EmptyWardenSet);
    CHECK_THROWS_AS(pgf_coeffs({1.2}, Sense::Alarm), ProbOutOfRange);
    CHECK_THROWS_AS(pgf_coeffs({-0.1}, Sense::Alarm), ProbOutOfRange);
}

TEST_CASE("majority tails sum the right indices") {
    const PgfCoefficients c{{0.24, 0.62, 0.14}};
    CHECK(majority_tail(c, 0, Side::Upper) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(majority_tail(c, 1, Side::Upper) == doctest::Approx(0.76).epsilon(1e-15));
    CHECK(majority_tail(c, 2, Side::Upper) == doctest::Approx(0.14).epsilon(1e-15));
    CHECK(majority_tail(c, 3, Side::Upper) == 0.0);
    CHECK(majority_tail(c, 0, Side::Lower) == 0.0);
    CHECK(majority_tail(c, 1, Side::Lower) == doctest::Approx(0.24).epsilon(1e-15));
    CHECK(majority_tail(c, 3, Side::Lower) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(majority_tail(c, -1, Side::Upper), IndexOutOfRange);
    CHECK_THROWS_AS(majority_tail(c, 4, Side::Upper), IndexOutOfRange);
}

TEST_CASE("majority threshold is floor(M/2) + 1") {
    CHECK(majority_threshold(1) == 1);
    CHECK(majority_threshold(2) == 2);
    CHECK(majority_threshold(3) == 2);
    CHECK(majority_threshold(4) == 3);
    CHECK(majority_threshold(5) == 3);
    CHECK(majority_threshold(8) == 5);
    CHECK(majority_threshold(12) == 7);
}

TEST_CASE("upper tail via the alternating symmetric-polynomial identity") {
    // P(X >= t) = sum_{k=t}^{M} (-1)^{k-t} C(k-1, t-1) xi_k(p).
    const auto p = random_probs(6, 99);
    const auto xi = esp(p);
    const auto c = pgf_coeffs(p, Sense::Alarm);
    const int m = 6;
    for (int t = 1; t <= m; ++t) {
        double acc = 0.0;
        for (int k = t; k <= m; ++k) {
            const double term = binom(k - 1, t - 1) * xi[static_cast<std::size_t>(k)];
            acc += ((k - t) % 2 == 0) ? term : -term;
        }
        CHECK(acc == doctest::Approx(majority_tail(c, t, Side::Upper)).epsilon(1e-11));
    }
}

TEST_CASE("fused detectability is 1 when no covert power is spent") {
    // With p_c = 0 the two hypotheses coincide, so FA + MD = 1 regardless
    // of tau or M. Dyadic inputs keep the arithmetic exact on the ramp.
    std::vector<WardenProfile> w;
    for (int i = 0; i < 5; ++i) w.push_back(make_profile(1.0, 1.0, 0.0, 2.0, 1.0));
    CHECK(dep_exact(2.0, w) == 1.0);
    for (double tau : {0.0, 0.7, 1.5, 2.5, 3.0, 8.0})
        CHECK(dep_exact(tau, w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fused detectability dips below 1 between the ramps") {
    std::vector<WardenProfile> w;
    for (int i = 0; i < 5; ++i) w.push_back(make_profile(1.0, 1.0, 1.0, 2.0, 1.0));
    // On the overlap, per-warden fa = md are both interior; fusing helps.
    const double mid = dep_exact(2.5, w);
    CHECK(mid < 1.0);
    CHECK(mid > 0.0);
    CHECK_THROWS_AS(dep_exact(1.0, {}), EmptyWardenSet);
}

TEST_CASE("binomial coefficients are exact in the supported range") {
    CHECK(binom(0, 0) == 1.0);
    CHECK(binom(5, 2) == 10.0);
    CHECK(binom(10, 3) == 120.0);
    CHECK(binom(12, 6) == 924.0);
    CHECK(binom(7, -1) == 0.0);
    CHECK(binom(7, 8) == 0.0);
    // Pascal identity holds exactly while values fit the mantissa.
    for (int n = 1; n <= 40; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
    CHECK_THROWS_AS(binom(65, 3), TooManyWardens);
}

TEST_CASE("shift expansion equals the symmetric polynomial of shifted values") {
    const std::vector<double> a{0.8, 0.35, 0.61, 0.12, 0.95, 0.4};
    const double c = 0.3;
    std::vector<double> shifted = a;
    for (double& v : shifted) v -= c;
    const auto xi = esp(shifted);
    for (int k = 0; k <= 6; ++k)
        CHECK(shifted_esp(a, c, k) ==
              doctest::Approx(xi[static_cast<std::size_t>(k)]).epsilon(1e-12));
    CHECK_THROWS_AS(shifted_esp(a, c, 7), IndexOutOfRange);
    CHECK_THROWS_AS(shifted_esp(a, c, -1), IndexOutOfRange);
}
