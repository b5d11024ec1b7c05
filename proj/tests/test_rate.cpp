#include <cmath>
#include <numeric>

#include "doctest.h"
#include "passcov/mc_oracle.hpp"
#include "passcov/rate.hpp"
#include "passcov/rng.hpp"

using namespace passcov;

TEST_CASE("quadrature weights sum to one and nodes are symmetric in (0,1)") {
    for (int n : {1, 2, 4, 8, 16, 32, 64}) {
        const QuadratureRule q = gauss_legendre(n);
        REQUIRE(q.nodes.size() == static_cast<std::size_t>(n));
        REQUIRE(q.weights.size() == static_cast<std::size_t>(n));
        const double sum = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        for (int i = 0; i < n; ++i) {
            CHECK(q.nodes[static_cast<std::size_t>(i)] > 0.0);
            CHECK(q.nodes[static_cast<std::size_t>(i)] < 1.0);
            CHECK(q.weights[static_cast<std::size_t>(i)] > 0.0);
            // Node/weight symmetry about 1/2.
            CHECK(q.nodes[static_cast<std::size_t>(i)] +
                      q.nodes[static_cast<std::size_t>(n - 1 - i)] ==
                  doctest::Approx(1.0).epsilon(1e-13));
            CHECK(q.weights[static_cast<std::size_t>(i)] ==
                  doctest::Approx(q.weights[static_cast<std::size_t>(n - 1 - i)])
                      .epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), ParamOutOfRange);
}

TEST_CASE("n-point quadrature integrates monomials up to degree 2n-1 exactly") {
    for (int n : {2, 4, 7}) {
        const QuadratureRule q = gauss_legendre(n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < q.nodes.size(); ++i)
                acc += q.weights[i] * std::pow(q.nodes[i], double(k));
            CHECK(acc == doctest::Approx(1.0 / double(k + 1)).epsilon(1e-13));
        }
        // One degree beyond is no longer exact.
        double acc = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i)
            acc += q.weights[i] * std::pow(q.nodes[i], double(2 * n));
        CHECK(std::abs(acc - 1.0 / double(2 * n + 1)) > 1e-14);
    }
}

TEST_CASE("sinr and its domain") {
    const LinkBudget lb{3.0, 2.0, 1.0};
    CHECK(sinr(lb, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(sinr(lb, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sinr(lb, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(sinr(lb, -0.1), ParamOutOfRange);
    CHECK_THROWS_AS(sinr(lb, 1.1), ParamOutOfRange);
    CHECK_THROWS_AS(sinr(LinkBudget{3.0, 2.0, 0.0}, 0.5), ParamOutOfRange);
    CHECK_THROWS_AS(sinr(LinkBudget{-1.0, 2.0, 1.0}, 0.5), ParamOutOfRange);
}

TEST_CASE("rate without jamming is the closed-form log") {
    const QuadratureRule q = gauss_legendre(32);
    // s = 3 sigma^2: log2(1 + 3) = 2.
    const LinkBudget lb{3.0e-15, 0.0, 1.0e-15};
    CHECK(avg_covert_rate(lb, q) == doctest::Approx(2.0).epsilon(1e-14));
    const LinkBudget lb2{5.0, 0.0, 2.0};
    CHECK(avg_covert_rate(lb2, q) ==
          doctest::Approx(std::log2(1.0 + 2.5)).epsilon(1e-14));
}

TEST_CASE("rate is monotone in signal and interference") {
    const QuadratureRule q = gauss_legendre(32);
    const double sigma = 4.0e-15;
    double prev = 0.0;
    for (double s : {1.0, 2.0, 4.0, 8.0}) {
        const double r = avg_covert_rate(LinkBudget{s * sigma, 2.0 * sigma, sigma}, q);
        CHECK(r > prev);
        prev = r;
    }
    prev = 1e99;
    for (double i : {0.0, 1.0, 3.0, 9.0}) {
        const double r = avg_covert_rate(LinkBudget{5.0 * sigma, i * sigma, sigma}, q);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("node count is converged in the smooth interference regime") {
    const double sigma = 3.981071705534969e-15;
    const LinkBudget lb{10.0 * sigma, 0.05 * sigma, sigma};
    const double r32 = avg_covert_rate(lb, gauss_legendre(32));
    const double r64 = avg_covert_rate(lb, gauss_legendre(64));
    CHECK(std::abs(r32 - r64) <= 1e-10);
}

TEST_CASE("quadrature agrees with a Monte-Carlo average") {
    const LinkBudget lb{2.0e-14, 1.5e-14, 4.0e-15};
    const double r = avg_covert_rate(lb, gauss_legendre(64));
    const McRateEstimate mc = mc_avg_rate(lb, 200000, 11);
    CHECK(std::abs(mc.rate - r) <= 4.0 * mc.se + 1e-12);
    CHECK(mc.se > 0.0);
}

TEST_CASE("surrogate is tight at its anchor") {
    const QuadratureRule q = gauss_legendre(32);
    const LinkBudget anchor{7.0e-15, 3.0e-15, 1.0e-15};
    const SurrogateEval s = mm_rate_surrogate(anchor, anchor, q);
    CHECK(s.value == doctest::Approx(avg_covert_rate(anchor, q)).epsilon(1e-14));
}

TEST_CASE("surrogate never exceeds the true rate") {
    const QuadratureRule q = gauss_legendre(32);
    const double sigma = 1.0e-15;
    for (int k = 0; k < 2000; ++k) {
        const LinkBudget anchor{
            philox_u01(5, static_cast<std::uint64_t>(k), 0, 0) * 20.0 * sigma,
            philox_u01(5, static_cast<std::uint64_t>(k), 0, 1) * 20.0 * sigma, sigma};
        const LinkBudget at{
            philox_u01(5, static_cast<std::uint64_t>(k), 0, 2) * 20.0 * sigma,
            philox_u01(5, static_cast<std::uint64_t>(k), 0, 3) * 20.0 * sigma, sigma};
        const SurrogateEval s = mm_rate_surrogate(at, anchor, q);
        CHECK(s.value <= avg_covert_rate(at, q) + 1e-12);
    }
}

TEST_CASE("surrogate gradient matches finite differences at the anchor") {
    const QuadratureRule q = gauss_legendre(32);
    const LinkBudget anchor{6.0e-15, 2.5e-15, 1.0e-15};
    const SurrogateEval s = mm_rate_surrogate(anchor, anchor, q);
    const double hs = 1e-6 * anchor.s;
    const double hi = 1e-6 * anchor.i;
    const double ds =
        (avg_covert_rate(LinkBudget{anchor.s + hs, anchor.i, anchor.sigma_b_sq}, q) -
         avg_covert_rate(LinkBudget{anchor.s - hs, anchor.i, anchor.sigma_b_sq}, q)) /
        (2.0 * hs);
    const double di =
        (avg_covert_rate(LinkBudget{anchor.s, anchor.i + hi, anchor.sigma_b_sq}, q) -
         avg_covert_rate(LinkBudget{anchor.s, anchor.i - hi, anchor.sigma_b_sq}, q)) /
        (2.0 * hi);
    CHECK(s.d_s == doctest::Approx(ds).epsilon(1e-6));
    CHECK(s.d_i == doctest::Approx(di).epsilon(1e-6));
}

TEST_CASE("surrogate validates noise consistency") {
    const QuadratureRule q = gauss_legendre(8);
    const LinkBudget anchor{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(mm_rate_surrogate(LinkBudget{1.0, 1.0, 2.0}, anchor, q),
                    ParamOutOfRange);
}
