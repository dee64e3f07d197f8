#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavecouple/errors.hpp"
#include "wavecouple/wavelab.hpp"

using namespace wavecouple;

namespace {

CauchySlice sine_slice(const Grid& g, double amp, int mode, double vel_amp = 0.0) {
    CauchySlice s;
    s.value.resize(g.nx);
    s.velocity.resize(g.nx);
    for (int j = 0; j < g.nx; ++j) {
        s.value[j] = amp * std::sin(mode * M_PI * g.x(j) / g.L);
        s.velocity[j] = vel_amp * std::sin(mode * M_PI * g.x(j) / g.L);
    }
    return s;
}

CauchySlice zero_slice(const Grid& g) {
    CauchySlice s;
    s.value.assign(g.nx, 0.0);
    s.velocity.assign(g.nx, 0.0);
    return s;
}

double energy(const CauchySlice& s, double nu, double dx) {
    double e = 0.0;
    for (size_t j = 0; j + 1 < s.value.size(); ++j) {
        const double gx = (s.value[j + 1] - s.value[j]) / dx;
        e += 0.5 * s.velocity[j] * s.velocity[j] + 0.5 * nu * nu * gx * gx;
    }
    return e * dx;
}

}  // namespace

TEST_CASE("zero data and traces give the zero solution") {
    const Grid g{1.0, 1.0, 101, 101};
    const auto sol = solve_forward(1.0, 1.0, CouplingSpec::cubic(), zero_slice(g),
                                   zero_slice(g), {}, {}, {}, {}, g);
    CHECK(sol.u.max_abs() == 0.0);
    CHECK(sol.v.max_abs() == 0.0);
}

TEST_CASE("uncoupled standing mode matches separation of variables") {
    const Grid g{1.0, 1.0, 201, 201};
    const double nu = 1.0;
    const auto sol = solve_forward(nu, nu, CouplingSpec::general(Poly2::zero(), Poly2::zero()),
                                   sine_slice(g, 1.0, 1), zero_slice(g), {}, {}, {}, {}, g);
    double worst = 0.0;
    for (int it = 0; it < g.nt; it += 13)
        for (int j = 0; j < g.nx; j += 7) {
            const double want = std::cos(M_PI * g.t(it)) * std::sin(M_PI * g.x(j));
            worst = std::max(worst, std::abs(sol.u.at(it, j) - want));
        }
    CHECK(worst < 2e-6);  // 4th-order scheme well below the O(dx^2) contract
}

TEST_CASE("reversal involution: backward of forward data returns the data") {
    const Grid g{0.8, 1.0, 161, 161};
    const auto fwd = solve_forward(1.3, 0.9, CouplingSpec::cubic(), sine_slice(g, 1e-2, 1),
                                   sine_slice(g, 1e-2, 2), {}, {}, {}, {}, g);
    CauchySlice uT = fwd.u_final, vT = fwd.v_final;
    const auto bwd =
        solve_backward(1.3, 0.9, CouplingSpec::cubic(), uT, vT, {}, {}, {}, {}, g);
    double worst = 0.0;
    for (int j = 0; j < g.nx; ++j) {
        worst = std::max(worst, std::abs(bwd.u.at(0, j) - 1e-2 * std::sin(M_PI * g.x(j))));
        worst = std::max(worst, std::abs(bwd.v.at(0, j) - 1e-2 * std::sin(2 * M_PI * g.x(j))));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("energy conservation of the order-2 leapfrog at CFL 0.9") {
    const Grid g{1.0, 1.0, 101, 801};
    const double drift = leapfrog_energy_drift(1.0, sine_slice(g, 1.0, 3), g, 0.9);
    CHECK(drift < 1e-6);
}

TEST_CASE("two-sided d'Alembert steers a sine mode to rest") {
    const double L = 1.0, nu = 1.0, T = 1.2 * L / nu;
    const Grid g{T, L, 801, 801};
    const CauchySlice init = sine_slice(g, 1.0, 1);
    const CauchySlice fin = zero_slice(g);
    const DalembertControl dc = dalembert_two_sided(nu, init, fin, T, L, 4);
    // re-solve the homogeneous equation driven by the traces and measure the
    // final energy against the initial energy
    const auto sol = solve_forward(nu, nu, CouplingSpec::general(Poly2::zero(), Poly2::zero()),
                                   init, zero_slice(g), [&](double t) { return dc.eval(t, 0.0); },
                                   [&](double t) { return dc.eval(t, L); }, {}, {}, g);
    const double e0 = energy(init, nu, g.dx());
    const double eT = energy(sol.u_final, nu, g.dx());
    INFO("energy ratio = ", eT / e0);
    CHECK(eT / e0 < 1e-6);
    CHECK_THROWS_AS(dalembert_two_sided(nu, init, fin, 0.9 * L / nu, L, 4), TimeTooShort);
}

TEST_CASE("transport sanity: a right-moving packet leaves through the traces") {
    const double L = 1.0, nu = 1.0, T = 1.5;
    const Grid g{T, L, 801, 801};
    CauchySlice init;
    init.value.resize(g.nx);
    init.velocity.resize(g.nx);
    const double w = 0.42;
    for (int j = 0; j < g.nx; ++j) {
        const double x = g.x(j);
        const double s = (x - 0.5) / w;
        const double q = 1.0 - s * s;
        const double phi = std::abs(s) < 1 ? std::pow(q, 8) : 0.0;
        const double dphi = std::abs(s) < 1 ? -16.0 * s * std::pow(q, 7) / w : 0.0;
        init.value[j] = phi;
        init.velocity[j] = -nu * dphi;
    }
    const DalembertControl dc = dalembert_two_sided(nu, init, zero_slice(g), T, L, 4);
    const auto sol = solve_forward(nu, nu, CouplingSpec::general(Poly2::zero(), Poly2::zero()),
                                   init, zero_slice(g), [&](double t) { return dc.eval(t, 0.0); },
                                   [&](double t) { return dc.eval(t, L); }, {}, {}, g);
    double fin = 0.0;
    for (int j = 0; j < g.nx; ++j) fin = std::max(fin, std::abs(sol.u_final.value[j]));
    CHECK(fin < 1e-8);
}

TEST_CASE("one-sided control keeps the uncontrolled edge homogeneous") {
    const double L = 1.0, nu = 1.0, T = 2.2 * L / nu;
    const Grid g{T, L, 401, 401};
    const CauchySlice init = sine_slice(g, 0.5, 2);
    const DalembertControl dc =
        dalembert_one_sided(nu, Side::right, init, zero_slice(g), T, L, 4);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) worst = std::max(worst, std::abs(dc.eval(T * i / 400.0, 0.0)));
    CHECK(worst < 1e-10);
    const auto sol = solve_forward(nu, nu, CouplingSpec::general(Poly2::zero(), Poly2::zero()),
                                   init, zero_slice(g), {},
                                   [&](double t) { return dc.eval(t, L); }, {}, {}, g);
    const double eT = energy(sol.u_final, nu, g.dx());
    const double e0 = energy(init, nu, g.dx());
    INFO("energy ratio = ", eT / e0);
    CHECK(eT / e0 < 1e-6);
    CHECK_THROWS_AS(dalembert_one_sided(nu, Side::right, init, zero_slice(g), 1.8 * L / nu, L, 4),
                    TimeTooShort);
}

TEST_CASE("picard strip control: zero coupling converges immediately") {
    const Grid g{2.0, 0.8, 161, 121};
    StripProblem prob;
    prob.nu1 = prob.nu2 = 1.0;
    prob.coupling = CouplingSpec::general(Poly2::zero(), Poly2::zero());
    prob.u0 = sine_slice(g, 1e-2, 1);
    prob.v0 = zero_slice(g);
    prob.uT = zero_slice(g);
    prob.vT = zero_slice(g);
    const ControlledStrip res = semilinear_boundary_control(prob, g);
    CHECK(res.iterations <= 2);
    for (int j = 0; j < g.nx; ++j)
        CHECK(std::abs(res.u.at(g.nt - 1, j)) < 1e-8);
}

TEST_CASE("picard strip control: small coupling contracts quickly") {
    const Grid g{2.0, 0.8, 161, 121};
    StripProblem prob;
    prob.nu1 = prob.nu2 = 1.0;
    // f1 = 1e-3 v, f2 = 1e-3 u: genuinely two-way coupled
    prob.coupling = CouplingSpec::general(Poly2({{0.0, 1e-3}}), Poly2({{0.0}, {1e-3}}));
    prob.u0 = sine_slice(g, 1e-2, 1);
    prob.v0 = sine_slice(g, 1e-2, 2);
    prob.uT = zero_slice(g);
    prob.vT = zero_slice(g);
    const ControlledStrip res = semilinear_boundary_control(prob, g);
    INFO("iterations = ", res.iterations, " contraction = ", res.contraction);
    CHECK(res.iterations <= 5);
    CHECK(res.contraction < 0.1);
    double fin = 0.0;
    for (int j = 0; j < g.nx; ++j)
        fin = std::max(fin, std::abs(res.u.at(g.nt - 1, j)) + std::abs(res.v.at(g.nt - 1, j)));
    CHECK(fin < 1e-6);
}

TEST_CASE("sidewise march reproduces a plane wave along characteristics") {
    const double nu = 2.0;
    const Grid g{1.0, 0.4, 101, 101};  // nu dt/dx = 5, sidewise-stable
    CHECK_THROWS_AS(sidewise_solve(nu, CauchySlice{}, 1, Grid{1.0, 0.4, 401, 41}),
                    CflViolation);
    auto F = [](double s) { return std::exp(-40.0 * s * s); };
    auto dF = [](double s) { return -80.0 * s * std::exp(-40.0 * s * s); };
    CauchySlice slice;
    slice.position = 0.0;
    slice.value.resize(g.nt);
    slice.velocity.resize(g.nt);
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        slice.value[it] = F(0.0 - nu * t + 0.5);
        slice.velocity[it] = dF(0.0 - nu * t + 0.5);
    }
    const Field f = sidewise_solve(nu, slice, 1, g,
                                   [&](double x) { return F(x + 0.5); },
                                   [&](double x) { return F(x - nu * 1.0 + 0.5); });
    double worst = 0.0;
    for (int it = 2; it < g.nt - 2; it += 11)
        for (int j = 0; j < g.nx; ++j)
            worst = std::max(worst,
                             std::abs(f.at(it, j) - F(g.x(j) - nu * g.t(it) + 0.5)));
    CHECK(worst < 8e-3);  // O(dx^2) sidewise march
}

TEST_CASE("characteristic flux identity for a traveling wave") {
    const double nu = 1.0;
    const Grid g{0.6, 2.0, 301, 601};
    Field u(g, "u"), h(g, "h");
    auto F = [](double s) { return std::sin(3.0 * s); };
    for (int it = 0; it < g.nt; ++it)
        for (int j = 0; j < g.nx; ++j) u.at(it, j) = F(g.x(j) - nu * g.t(it));
    SpatialFn u0{[&](double x, int order) {
        Jet r(order);
        double w = 3.0;
        for (int n = 0; n <= order; ++n) {
            const double d = (n % 4 == 0)   ? std::sin(w * x)
                             : (n % 4 == 1) ? std::cos(w * x)
                             : (n % 4 == 2) ? -std::sin(w * x)
                                            : -std::cos(w * x);
            double pw = 1.0, fact = 1.0;
            for (int i = 0; i < n; ++i) pw *= w;
            for (int i = 2; i <= n; ++i) fact *= i;
            r.coeff_ref(n) = d * pw / fact;
        }
        return r;
    }};
    SpatialFn u1{[&](double x, int order) {
        Jet r = u0.jet(x, order + 1).d();
        Jet s(order);
        for (int n = 0; n <= order; ++n) s.coeff_ref(n) = -nu * r.coeff(n);
        return s;
    }};
    const double defect = characteristic_flux_check(u, h, nu, u0, u1, 60);
    INFO("defect = ", defect);
    CHECK(defect < 1e-7);
}
