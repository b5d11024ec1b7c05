#include "doctest.h"
#include "passcov/local_detect.hpp"

using namespace passcov;

namespace {

// sigma^2 = 1, jamming spread 2, covert lift 1:
// alpha1 = 3, alpha2 = 2, alpha3 = 4.
WardenProfile reference() { return make_profile(1.0, 1.0, 1.0, 2.0, 1.0); }

} // namespace

TEST_CASE("derived breakpoints of the reference profile") {
    const WardenProfile w = reference();
    CHECK(w.alpha1 == 3.0);
    CHECK(w.alpha2 == 2.0);
    CHECK(w.alpha3 == 4.0);
    CHECK_FALSE(w.degenerate_jamming);
}

TEST_CASE("false-alarm probability: plateau, ramp, cutoff") {
    const WardenProfile w = reference();
    CHECK(p_fa(w, 0.0) == 1.0);
    CHECK(p_fa(w, 0.5) == 1.0);
    CHECK(p_fa(w, 1.0) == 1.0);  // ramp start is continuous with the plateau
    CHECK(p_fa(w, 2.0) == 0.5);
    CHECK(p_fa(w, 2.5) == 0.25);
    CHECK(p_fa(w, 3.0) == 0.0);
    CHECK(p_fa(w, 10.0) == 0.0);
}

TEST_CASE("missed-detection probability: onset, ramp, saturation") {
    const WardenProfile w = reference();
    CHECK(p_md(w, 0.0) == 0.0);
    CHECK(p_md(w, 1.0) == 0.0);
    CHECK(p_md(w, 2.0) == 0.0);  // ramp start
    CHECK(p_md(w, 3.0) == 0.5);
    CHECK(p_md(w, 3.5) == 0.75);
    CHECK(p_md(w, 4.0) == 1.0);
    CHECK(p_md(w, 9.0) == 1.0);
}

TEST_CASE("error rates are monotone in the threshold and stay in [0,1]") {
    const WardenProfile w = make_profile(0.7, 1.3, 0.4, 1.7, 0.8);
    double fa_prev = 1.0, md_prev = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double tau = w.alpha3 * 1.2 * double(i) / 400.0;
        const double fa = p_fa(w, tau);
        const double md = p_md(w, tau);
        CHECK(fa >= 0.0);
        CHECK(fa <= 1.0);
        CHECK(md >= 0.0);
        CHECK(md <= 1.0);
        CHECK(fa <= fa_prev + 1e-15);
        CHECK(md >= md_prev - 1e-15);
        fa_prev = fa;
        md_prev = md;
    }
}

TEST_CASE("degenerate jamming collapses both ramps to indicators") {
    const WardenProfile w0 = make_profile(1.0, 1.0, 1.0, 0.0, 1.0); // p_j_max = 0
    CHECK(w0.degenerate_jamming);
    CHECK(p_fa(w0, 0.5) == 1.0);
    CHECK(p_fa(w0, 1.0) == 1.0);
    CHECK(p_fa(w0, 1.0000001) == 0.0);
    CHECK(p_md(w0, 2.0) == 0.0); // alpha2 = 2
    CHECK(p_md(w0, 2.0000001) == 1.0);

    const WardenProfile w1 = make_profile(1.0, 0.0, 1.0, 2.0, 1.0); // a_j = 0
    CHECK(w1.degenerate_jamming);
}

TEST_CASE("profile and threshold validation") {
    CHECK_THROWS_AS(make_profile(-0.1, 1.0, 1.0, 1.0, 1.0), ParamOutOfRange);
    CHECK_THROWS_AS(make_profile(1.0, -1.0, 1.0, 1.0, 1.0), ParamOutOfRange);
    CHECK_THROWS_AS(make_profile(1.0, 1.0, -1.0, 1.0, 1.0), ParamOutOfRange);
    CHECK_THROWS_AS(make_profile(1.0, 1.0, 1.0, -1.0, 1.0), ParamOutOfRange);
    CHECK_THROWS_AS(make_profile(1.0, 1.0, 1.0, 1.0, 0.0), ParamOutOfRange);
    const WardenProfile w = reference();
    CHECK_THROWS_AS(p_fa(w, -0.1), ParamOutOfRange);
    CHECK_THROWS_AS(p_md(w, -0.1), ParamOutOfRange);
}

TEST_CASE("ramp arithmetic cannot spill outside [0,1] near breakpoints") {
    // Profiles whose alpha sums round: exercise values immediately inside
    // the ramp ends.
    const WardenProfile w = make_profile(0.3, 0.1, 0.7, 0.3, 0.1);
    const double eps = 1e-15;
    CHECK(p_fa(w, w.sigma_w_sq * (1.0 + eps)) <= 1.0);
    CHECK(p_fa(w, w.alpha1 * (1.0 - eps)) >= 0.0);
    CHECK(p_md(w, w.alpha2 * (1.0 + eps)) >= 0.0);
    CHECK(p_md(w, w.alpha3 * (1.0 - eps)) <= 1.0);
}
