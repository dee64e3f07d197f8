#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavecouple/flat.hpp"
#include "wavecouple/jet.hpp"

using namespace wavecouple;

namespace {

// central finite differences of callable f at t, order n <= 4
template <class F>
double central_fd(const F& f, double t, int n, double h) {
    switch (n) {
        case 0: return f(t);
        case 1: return (f(t + h) - f(t - h)) / (2 * h);
        case 2: return (f(t + h) - 2 * f(t) + f(t - h)) / (h * h);
        case 3: return (f(t + 2 * h) - 2 * f(t + h) + 2 * f(t - h) - f(t - 2 * h)) / (2 * h * h * h);
        case 4:
            return (f(t + 2 * h) - 4 * f(t + h) + 6 * f(t) - 4 * f(t - h) + f(t - 2 * h)) /
                   (h * h * h * h);
        default: return 0.0;
    }
}

// Richardson convergence check: FD values at h, h/2, h/4 approach `exact`
// with errors shrinking by at least ~2^order_min
template <class F>
void check_fd_converges(const F& f, double t, int n, double exact, double h0,
                        double order_min = 1.7) {
    const double e1 = std::abs(central_fd(f, t, n, h0) - exact);
    const double e2 = std::abs(central_fd(f, t, n, h0 / 2) - exact);
    const double e3 = std::abs(central_fd(f, t, n, h0 / 4) - exact);
    const double scale = std::max(1.0, std::abs(exact));
    if (e1 < 1e-11 * scale) return;  // already at roundoff, nothing to measure
    const double o1 = std::log2(e1 / std::max(e2, 1e-300));
    const double o2 = std::log2(e2 / std::max(e3, 1e-300));
    CHECK(std::max(o1, o2) > order_min);
}

}  // namespace

TEST_CASE("jet arithmetic matches closed forms") {
    const double t0 = 0.7;
    const Jet t = Jet::variable(t0, 8);
    SUBCASE("product and quotient") {
        const Jet a = (t * t + 1.0) / (2.0 - t);
        auto f = [](double x) { return (x * x + 1) / (2 - x); };
        CHECK(a.value() == doctest::Approx(f(t0)).epsilon(1e-14));
        for (int n = 1; n <= 4; ++n)
            check_fd_converges(f, t0, n, a.derivative(n), 0.01);
    }
    SUBCASE("exp/log/pow round trips") {
        const Jet e = jet_exp(t);
        const Jet back = jet_log(e);
        for (int n = 0; n <= 8; ++n)
            CHECK(back.coeff(n) == doctest::Approx(t.coeff(n)).epsilon(1e-12));
        const Jet p = jet_pow(t, 1.0 / 3.0);
        const Jet cube = p * p * p;
        for (int n = 0; n <= 8; ++n)
            CHECK(cube.coeff(n) == doctest::Approx(t.coeff(n)).epsilon(1e-12));
    }
    SUBCASE("cbrt of negative leading value") {
        const Jet a = -2.0 - t;
        const Jet c = jet_cbrt(a);
        const Jet cube = c * c * c;
        for (int n = 0; n <= 8; ++n)
            CHECK(cube.coeff(n) == doctest::Approx(a.coeff(n)).epsilon(1e-12));
    }
    SUBCASE("derivative-of-jet equals jet-of-derivative") {
        const Jet a = jet_exp(t * t);
        const Jet ad = a.d();
        auto f = [](double x) { return 2 * x * std::exp(x * x); };
        CHECK(ad.value() == doctest::Approx(f(t0)).epsilon(1e-13));
        CHECK(ad.derivative(1) == doctest::Approx(central_fd(f, t0, 1, 1e-5)).epsilon(1e-7));
    }
}

TEST_CASE("jet composition re-derives identical coefficients") {
    // compose exp with its own truncation: exp(log-jet) == original
    const Jet t = Jet::variable(0.3, 8);
    const Jet inner = 1.0 + t * t;            // inner(0.3) = 1.09
    const Jet outer = jet_exp(Jet::variable(inner.value(), 8));
    const Jet composed = jet_compose(outer, inner);
    const Jet direct = jet_exp(inner);
    for (int n = 0; n <= 8; ++n)
        CHECK(composed.coeff(n) == doctest::Approx(direct.coeff(n)).epsilon(1e-12));
}

TEST_CASE("flat exponential vanishes with all derivatives at 0") {
    CHECK(exp_flat(0.0) == 0.0);
    CHECK(exp_flat(-1.0) == 0.0);
    const Jet s = Jet::variable(-0.2, 6);
    const Jet e = exp_flat(s);
    for (int n = 0; n <= 6; ++n) CHECK(e.coeff(n) == 0.0);
    // value channel agrees with std::exp on the positive side
    CHECK(exp_flat(0.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("smooth step plateaus and jets") {
    CHECK(smooth_step(-0.1) == 0.0);
    CHECK(smooth_step(1.1) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5).epsilon(1e-13));
    const Jet u = Jet::variable(0.37, 6);
    const Jet s = smooth_step(u);
    auto f = [](double x) { return smooth_step(x); };
    for (int n = 1; n <= 4; ++n)
        check_fd_converges(f, 0.37, n, s.derivative(n), 0.005);
}

TEST_CASE("poly bump flat support edges") {
    PolyBump b(7);
    CHECK(b(0.0) == 1.0);
    CHECK(b(1.0) == 0.0);
    CHECK(b(-1.2) == 0.0);
    const Jet inside = b.eval(Jet::variable(0.4, 6));
    auto f = [&b](double x) { return b(x); };
    for (int n = 1; n <= 4; ++n)
        check_fd_converges(f, 0.4, n, inside.derivative(n), 0.004);
}

TEST_CASE("gauss-legendre quadrature is near-exact on smooth integrands") {
    const double v = gl16([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(v == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
}
