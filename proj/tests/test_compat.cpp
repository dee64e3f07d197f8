#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavecouple/compat.hpp"
#include "wavecouple/errors.hpp"

using namespace wavecouple;

namespace {

SpatialFn poly_fn(std::vector<double> coeffs) {
    return SpatialFn{[c = std::move(coeffs)](double x, int order) {
        const Jet xj = Jet::variable(x, order);
        Jet r(order);
        for (size_t k = c.size(); k-- > 0;) r = r * xj + c[k];
        return r;
    }};
}

SpatialFn sine_fn(double amp, int mode, double L) {
    return SpatialFn{[amp, mode, L](double x, int order) {
        // jets of amp*sin(m pi x / L) by rotating the (sin, cos) pair
        const double w = mode * M_PI / L;
        Jet r(order);
        double s = amp * std::sin(w * x), c = amp * std::cos(w * x);
        double pw = 1.0, fact = 1.0;
        for (int n = 0; n <= order; ++n) {
            const double d = (n % 4 == 0) ? s : (n % 4 == 1) ? c : (n % 4 == 2) ? -s : -c;
            r.coeff_ref(n) = d * pw / fact;
            pw *= w;
            fact *= (n + 1);
        }
        return r;
    }};
}

// bump with prescribed second derivative at x = 0 and flat higher structure
SpatialFn perturbation_bump(double second_derivative, double width) {
    return SpatialFn{[=](double x, int order) {
        const Jet xj = Jet::variable(x, order);
        const Jet u = xj / width;
        if (std::abs(x) >= width) return Jet(order);
        // x^2/2 * (1-u^4)^6 carries exactly one nonzero corner jet (n = 2)
        // among the orders the recurrence consumes at k = 4
        Jet b = 1.0 - (u * u) * (u * u);
        Jet b6 = b * b * b;
        b6 = b6 * b6;
        return (second_derivative * 0.5) * xj * xj * b6;
    }};
}

// Test-side oracle: propagate polynomial data through the PDE with exact
// polynomial algebra, u(t,x) = sum_m t^m/m! A_m(x).
struct PolyVec {
    std::vector<double> c;
    PolyVec d2() const {
        if (c.size() < 3) return {{0.0}};
        std::vector<double> r(c.size() - 2);
        for (size_t k = 2; k < c.size(); ++k)
            r[k - 2] = c[k] * static_cast<double>(k) * (k - 1);
        return {r};
    }
    double operator()(double x) const {
        double s = 0.0;
        for (size_t k = c.size(); k-- > 0;) s = s * x + c[k];
        return s;
    }
};

PolyVec mul(const PolyVec& a, const PolyVec& b) {
    std::vector<double> r(a.c.size() + b.c.size() - 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return {r};
}
PolyVec add(const PolyVec& a, const PolyVec& b, double s = 1.0) {
    std::vector<double> r(std::max(a.c.size(), b.c.size()), 0.0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += s * b.c[i];
    return {r};
}

double fact_of(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

PolyVec scaled(const PolyVec& a, double s) {
    PolyVec r = a;
    for (double& x : r.c) x *= s;
    return r;
}

// time-Taylor coefficients (d_t^m u)(0,x) of box_nu1 u = f1, box_nu2 v = f2
// for polynomial couplings au + bv + c u^3
struct TaylorOracle {
    std::vector<PolyVec> Au, Av;
    TaylorOracle(PolyVec u0, PolyVec u1, PolyVec v0, PolyVec v1, double nu1, double nu2,
                 double a1u, double a1v, double a2u, double a2v, double c2cube, int M) {
        Au = {u0, u1};
        Av = {v0, v1};
        for (int m = 0; m + 2 <= M; ++m) {
            // d_t^m (u^3) via the Leibniz multinomial over the series
            PolyVec cube{{0.0}};
            for (int p = 0; p <= m; ++p)
                for (int q = 0; p + q <= m; ++q) {
                    const int r = m - p - q;
                    const double multinom = fact_of(m) / (fact_of(p) * fact_of(q) * fact_of(r));
                    cube = add(cube, mul(Au[p], mul(Au[q], Au[r])), multinom);
                }
            const PolyVec fu = add(scaled(Au[m], a1u), scaled(Av[m], a1v));
            const PolyVec fv =
                add(add(scaled(Au[m], a2u), scaled(Av[m], a2v)), cube, c2cube);
            Au.push_back(add(scaled(Au[m].d2(), nu1 * nu1), fu));
            Av.push_back(add(scaled(Av[m].d2(), nu2 * nu2), fv));
        }
    }
};

}  // namespace

TEST_CASE("time jets of couplings") {
    // f2 = u^3 with u = t: coefficient of t^3 is 1, lower ones vanish
    Jet u(4);
    u.coeff_ref(1) = 1.0;
    Jet v(4);
    const Jet cube = time_jets_of_coupling(Poly2::cubic_u(), u, v, 3);
    CHECK(cube.coeff(3) == doctest::Approx(1.0));
    CHECK(cube.coeff(0) == 0.0);
    CHECK(cube.coeff(1) == 0.0);
    CHECK(cube.coeff(2) == 0.0);
    // n = 0 reduces to the pointwise value
    Jet u0 = Jet::constant(2.0, 4), v0 = Jet::constant(0.5, 4);
    CHECK(time_jets_of_coupling(Poly2::cubic_u(), u0, v0, 0).value() ==
          doctest::Approx(8.0));
    // linear coupling: jet is c * u_jet
    const Jet lin = time_jets_of_coupling(Poly2::linear_u(3.0), u, v, 3);
    for (int n = 0; n <= 3; ++n)
        CHECK(lin.coeff(n) == doctest::Approx(3.0 * u.coeff(n)));
}

TEST_CASE("corner derivatives: low orders match the recurrence by hand") {
    EndpointData data;
    data.u0 = poly_fn({0.0, 0.3, -0.2, 0.05});
    data.u1 = poly_fn({0.1, -0.4, 0.02});
    data.v0 = poly_fn({0.0, 0.2, 0.1});
    data.v1 = poly_fn({0.05, 0.1});
    const CouplingSpec spec = CouplingSpec::cubic();
    const double nu1 = 2.0, nu2 = 3.0, L = 1.0;
    // n = 1 at (0,0) for u is u1(0)
    CHECK(corner_derivative(data, spec, nu1, nu2, L, 1, Corner::initial_left, 1, 4) ==
          doctest::Approx(0.1));
    // n = 2 for u: nu1^2 u0''(0) + f1 = nu1^2 * (-0.4)
    CHECK(corner_derivative(data, spec, nu1, nu2, L, 2, Corner::initial_left, 1, 4) ==
          doctest::Approx(nu1 * nu1 * (-0.4)));
    // n = 2 for v: nu2^2 v0''(0) + u0(0)^3 = nu2^2 * 0.2 + 0
    CHECK(corner_derivative(data, spec, nu1, nu2, L, 2, Corner::initial_left, 2, 4) ==
          doctest::Approx(nu2 * nu2 * 0.2));
    // all-zero data gives zero for every n
    EndpointData zero;
    for (int n = 0; n <= 4; ++n)
        for (int eq = 1; eq <= 2; ++eq)
            CHECK(corner_derivative(zero, spec, nu1, nu2, L, n, Corner::final_right, eq, 4) ==
                  0.0);
}

TEST_CASE("oracle equivalence against exact Taylor propagation") {
    // polynomial data, coupling f1 = 0.3u - 0.1v, f2 = u + 0.5v + u^3
    PolyVec u0{{0.2, -0.1, 0.4, 0.05}}, u1{{-0.3, 0.2, -0.15}};
    PolyVec v0{{0.1, 0.3, -0.2}}, v1{{0.0, -0.1, 0.25}};
    const double nu1 = 1.3, nu2 = 0.8;
    TaylorOracle oracle(u0, u1, v0, v1, nu1, nu2, 0.3, -0.1, 1.0, 0.5, 1.0, 4);

    EndpointData data;
    data.u0 = poly_fn(u0.c);
    data.u1 = poly_fn(u1.c);
    data.v0 = poly_fn(v0.c);
    data.v1 = poly_fn(v1.c);
    const CouplingSpec spec = CouplingSpec::general(
        Poly2({{0.0, -0.1}, {0.3}}), Poly2({{0.0, 0.5}, {1.0}, {0.0}, {1.0}}));
    for (int n = 0; n <= 4; ++n) {
        const double cu =
            corner_derivative(data, spec, nu1, nu2, 1.0, n, Corner::initial_left, 1, 4);
        const double cv =
            corner_derivative(data, spec, nu1, nu2, 1.0, n, Corner::initial_left, 2, 4);
        CHECK(cu == doctest::Approx(oracle.Au[n](0.0)).epsilon(1e-10));
        CHECK(cv == doctest::Approx(oracle.Av[n](0.0)).epsilon(1e-10));
    }
}

TEST_CASE("compatibility report: sine data is compatible, a bump breaks n=2") {
    const double L = 8.7, nu = 750.0;
    const CouplingSpec spec = CouplingSpec::cubic();
    EndpointData data;
    data.u0 = sine_fn(1e-3, 1, L);
    data.v0 = sine_fn(1e-3, 1, L);
    CHECK(check_compatibility(data, spec, nu, nu, L, 4, 1e-9).empty());

    // perturbing u0''(0) by 1e-3 yields exactly one violation at n = 2, eq 1
    EndpointData pert;
    pert.u0 = perturbation_bump(1e-3, 0.3);
    const auto viols = check_compatibility(pert, spec, nu, nu, L, 4, 1e-9);
    REQUIRE(viols.size() == 1);
    CHECK(viols[0].corner == Corner::initial_left);
    CHECK(viols[0].equation == 1);
    CHECK(viols[0].n == 2);
    CHECK(viols[0].value == doctest::Approx(nu * nu * 1e-3).epsilon(1e-10));
}

TEST_CASE("order monotonicity of the violation list") {
    EndpointData pert;
    pert.u0 = perturbation_bump(2e-3, 0.25);
    pert.v0 = perturbation_bump(-1e-3, 0.25);
    const CouplingSpec spec = CouplingSpec::cubic();
    const auto v3 = check_compatibility(pert, spec, 1.0, 1.0, 1.0, 3, 1e-9);
    const auto v4 = check_compatibility(pert, spec, 1.0, 1.0, 1.0, 4, 1e-9);
    REQUIRE(v4.size() >= v3.size());
    for (size_t i = 0; i < v3.size(); ++i) {
        CHECK(v4[i].corner == v3[i].corner);
        CHECK(v4[i].equation == v3[i].equation);
        CHECK(v4[i].n == v3[i].n);
    }
}

TEST_CASE("boundary control jets") {
    const CouplingSpec spec = CouplingSpec::cubic();
    // zero data: zero jets
    EndpointData zero;
    for (const auto& req :
         boundary_control_jets(zero, spec, 1.0, 1.0, 1.0, 4, {Side::left}))
        for (double j : req.dt_jets) CHECK(j == 0.0);
    // n = 1 jet equals u1 at the controlled endpoint
    EndpointData data;
    data.u1 = poly_fn({0.7, 0.1});
    const auto reqs = boundary_control_jets(data, spec, 1.0, 1.0, 1.0, 3, {Side::left});
    bool found = false;
    for (const auto& req : reqs)
        if (req.corner == Corner::initial_left && req.equation == 1) {
            CHECK(req.dt_jets[1] == doctest::Approx(0.7));
            found = true;
        }
    CHECK(found);
}
