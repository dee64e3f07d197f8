#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavecouple/errors.hpp"
#include "wavecouple/geometry.hpp"

using namespace wavecouple;

TEST_CASE("time condition") {
    CHECK(check_time(1.0, 1.0, 0.2, 0.8, 1.0, 1.0));        // 1 > 0.4 twice
    CHECK_FALSE(check_time(0.4, 1.0, 0.2, 0.8, 1.0, 1.0));  // non-strict fails
    CHECK(check_time(1e-6, 1.0, 0.0, 1.0, 1.0, 1.0));       // a=0, b=L
    CHECK(check_time(0.5, 1.0, 0.2, 0.8, 4.0, 4.0));        // fast speeds relax it
}

TEST_CASE("admissible delta solves the doubled gap condition") {
    const double d = admissible_delta(1.0, 1.0, 0.2, 0.8, 1.0, 1.0);
    // oracle: solve 1-4d > 2(0.2+4d) => d < 0.05; search also caps at 0.075
    CHECK(d >= 0.025);
    CHECK(d < 0.05);
    CHECK(1.0 - 4 * d > 2 * (0.2 + 4 * d));
    CHECK(d < 0.5 * std::min(0.5, 0.3));
    // shrinking T toward the threshold drives delta to zero
    double prev = d;
    for (double T : {0.8, 0.6, 0.45}) {
        const double dd = admissible_delta(T, 1.0, 0.2, 0.8, 1.0, 1.0);
        CHECK(dd < prev);
        prev = dd;
    }
}

TEST_CASE("covering construction matches the center formula") {
    // b-a-2delta = 0.9, eps0 = 0.3: N=2, eps=0.3, x1=a+delta+0.15, x2=a+delta+0.75
    const double a = 0.1, b = 1.2, delta = 0.1;
    const CoveringSet c = build_covering(5.0, a, b, delta, 0.3, 1.0, 1.0);
    CHECK(c.size() == 2);
    CHECK(c.epsilon == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(c.centers[0] == doctest::Approx(a + delta + 0.15).epsilon(1e-13));
    CHECK(c.centers[1] == doctest::Approx(a + delta + 0.75).epsilon(1e-13));
    CHECK(c.rects.front().first == doctest::Approx(a + delta).epsilon(1e-13));
    CHECK(c.rects.back().second == doctest::Approx(b - delta).epsilon(1e-13));
    // gaps equal epsilon
    CHECK(c.rects[1].first - c.rects[0].second == doctest::Approx(0.3).epsilon(1e-12));
    // validation of a built covering never throws
    CHECK_NOTHROW(validate_covering(c));
}

TEST_CASE("degenerate single-rectangle covering") {
    const CoveringSet c = build_covering(5.0, 0.1, 1.2, 0.1, 0.9, 1.0, 1.0);
    CHECK(c.size() == 1);
    CHECK(c.rects[0].first == doctest::Approx(0.2));
    CHECK(c.rects[0].second == doctest::Approx(1.1));
    CHECK(gap_deltas(c).empty());
}

TEST_CASE("bad epsilon is rejected") {
    CHECK_THROWS_AS(build_covering(5.0, 0.1, 1.2, 0.1, 1.2, 1.0, 1.0), BadEpsilon);
    CHECK_THROWS_AS(build_covering(0.21, 0.1, 1.2, 0.1, 0.0301, 100.0, 0.5), BadEpsilon);
}

TEST_CASE("gap deltas satisfy their inequality and shrink with the gap") {
    // gap 0.3, T-2delta = 0.9 style example: solves 0.9-2d > 0.3+4d => d < 0.1
    CoveringSet c;
    c.T = 1.1;
    c.a = 0.0;
    c.b = 1.5;
    c.delta = 0.1;
    c.nu1 = c.nu2 = 1.0;
    c.epsilon = 0.3;
    c.rects = {{0.1, 0.4}, {0.7, 1.0}};
    c.centers = {0.25, 0.85};
    const auto ds = gap_deltas(c);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0] < 0.1);
    CHECK(ds[0] > 0.09);
    CHECK(c.T - 2 * ds[0] > (0.3 + 4 * ds[0]) * 1.0);
    // monotone decrease in the gap length
    CoveringSet wide = c;
    wide.rects = {{0.1, 0.35}, {0.75, 1.0}};
    const auto ds2 = gap_deltas(wide);
    CHECK(ds2[0] < ds[0]);
}

TEST_CASE("hull contains rectangles and stays near them") {
    const CoveringSet c = build_covering(5.0, 0.1, 1.2, 0.1, 0.3, 1.0, 1.0);
    Hull hull(c, 0.02, 0.02);
    CHECK(hull.contains(2.5, c.centers[0]));
    CHECK(hull.contains(c.delta, c.rects[0].first));  // rect corner inside
    CHECK_FALSE(hull.contains(2.5, c.rects[0].second + 0.05));
    CHECK_FALSE(hull.contains(0.01, c.centers[0]));
    // membership margin: points just inside the dilation
    CHECK(hull.contains(c.delta - 0.01, c.centers[0]));
    CHECK_FALSE(hull.contains(c.delta - 0.03, c.centers[0]));
}

TEST_CASE("sampled characteristics all meet the covering") {
    const CoveringSet c = build_covering(5.0, 0.1, 1.2, 0.1, 0.3, 1.0, 1.0);
    CHECK(characteristics_missing_covering(c, 1.5, 250) == 0);
}
