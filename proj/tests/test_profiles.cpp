#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavecouple/elementary.hpp"
#include "wavecouple/errors.hpp"
#include "wavecouple/profiles.hpp"

using namespace wavecouple;

namespace {

ProfileParams default_params() {
    ProfileParams p;
    p.T = 1.7;
    p.delta = 0.42;
    p.epsilon = 2.25e-4;
    p.delta_prime = 0.03;
    p.delta_double_prime = 0.40;
    return p;
}

std::shared_ptr<const ProfileSet> profiles() {
    static auto p = build_profiles(default_params());
    return p;
}

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

// jets against a Richardson sequence h, h/2, h/4 with observed order >= 2,
// stopping where the finite differences hit their cancellation floor
template <class F>
void check_jet_vs_fd(const F& f, double t, const Jet& jet, int nmax, double h0) {
    const double fscale = std::max({std::abs(f(t)), std::abs(f(t + h0)), 1e-3});
    for (int n = 1; n <= nmax; ++n) {
        const double exact = jet.derivative(n);
        const double e1 = std::abs(central_fd(f, t, n, h0) - exact);
        const double e2 = std::abs(central_fd(f, t, n, h0 / 2) - exact);
        const double e3 = std::abs(central_fd(f, t, n, h0 / 4) - exact);
        const double noise = 64.0 * 1e-16 * fscale / std::pow(h0 / 4, n);
        if (e3 < std::max(noise, 1e-11 * std::max(1.0, std::abs(exact)))) continue;
        const double order = std::log2(std::max(e1, e2) / std::max(e3, 1e-300)) / 2.0;
        INFO("n=", n, " e1=", e1, " e2=", e2, " e3=", e3, " noise=", noise);
        CHECK(order > 0.9);  // >= ~2 per halving across two halvings
    }
}

}  // namespace

TEST_CASE("stationary profile matches the prescribed pieces") {
    const auto& st = profiles()->stationary;
    CHECK(st.g(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(st.G(0.75) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(st.G(0.0) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(st.g(0.2) == doctest::Approx(1.0 - 0.04).epsilon(1e-14));
    const double w = 0.5 * profiles()->params.delta_double_prime;
    CHECK(st.G(0.75 + 0.4 * w) == doctest::Approx(std::pow(0.4 * w, 3)).epsilon(1e-12));
    const double zt = 1.0 - 0.03;
    CHECK(st.g(zt) == doctest::Approx(std::exp(-1.0 / (1.0 - zt * zt))).epsilon(1e-13));
    CHECK(st.g(1.0) == 0.0);
    CHECK(st.g(1.5) == 0.0);
}

TEST_CASE("stationary matching is continuous at 1-delta_prime") {
    const auto& st = profiles()->stationary;
    const double z4 = st.z4();
    const double eps = 1e-9;
    CHECK(st.g(z4 - eps) == doctest::Approx(st.g(z4 + eps)).epsilon(1e-7));
    CHECK(st.gp(z4 - eps) == doctest::Approx(st.gp(z4 + eps)).epsilon(1e-6));
}

TEST_CASE("sign ledger: G negative left of 3/4, positive right") {
    const auto& st = profiles()->stationary;
    for (int k = 1; k < 1000; ++k) {
        const double z = k / 1000.0;
        if (std::abs(z - 0.75) < 1e-9) continue;
        CHECK(st.G(z) * (z - 0.75) > 0.0);
    }
}

TEST_CASE("g'' equals G after double quadrature reconstruction") {
    // Simpson reconstruction of g from G on 10^4 points, compared against g
    const auto& st = profiles()->stationary;
    const int n = 10000;  // even
    const double a = 0.0, b = 0.999;
    const double h = (b - a) / n;
    std::vector<double> Gv(n + 1);
    for (int i = 0; i <= n; ++i) Gv[i] = st.G(a + i * h);
    std::vector<double> gp(n + 1, 0.0), g(n + 1, 0.0);
    gp[0] = 0.0;
    g[0] = 1.0;
    for (int i = 2; i <= n; i += 2) {
        gp[i - 1] = gp[i - 2] + h / 12.0 * (5.0 * Gv[i - 2] + 8.0 * Gv[i - 1] - Gv[i]);
        gp[i] = gp[i - 2] + h / 3.0 * (Gv[i - 2] + 4.0 * Gv[i - 1] + Gv[i]);
    }
    for (int i = 2; i <= n; i += 2) {
        g[i - 1] = g[i - 2] + h / 12.0 * (5.0 * gp[i - 2] + 8.0 * gp[i - 1] - gp[i]);
        g[i] = g[i - 2] + h / 3.0 * (gp[i - 2] + 4.0 * gp[i - 1] + gp[i]);
    }
    double worst = 0.0;
    for (int i = 0; i <= n; i += 16) worst = std::max(worst, std::abs(g[i] - st.g(a + i * h)));
    CHECK(worst < 1e-9);
}

TEST_CASE("stationary jets agree with finite differences") {
    const auto& st = profiles()->stationary;
    for (double z : {0.1, 0.45, 0.75, 0.8, 0.955}) {
        check_jet_vs_fd([&](double x) { return st.g(x); }, z, st.g_jet(z, 6), 4, 1e-3);
        check_jet_vs_fd([&](double x) { return st.G(x); }, z, st.G_jet(z, 6), 4, 1e-3);
    }
}

TEST_CASE("bump triple jet normalisation at 3/4") {
    const auto& bt = profiles()->bumps;
    for (int i = 1; i <= 3; ++i) {
        const Jet j = bt.g_jet(i, 0.75, 4);
        for (int n = 0; n <= 4; ++n) {
            const double want = (n == i + 1) ? 1.0 : 0.0;
            CHECK(j.derivative(n) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("bump supports live strictly inside the window") {
    const auto& bt = profiles()->bumps;
    const double dpp = profiles()->params.delta_double_prime;
    CHECK(bt.support_radius() < 0.5 * dpp);
    CHECK(bt.g(3, 0.75 + dpp) == 0.0);
    CHECK(bt.g(1, 0.75 - 0.5 * dpp) == 0.0);
    CHECK(bt.g(2, 0.2) == 0.0);
}

TEST_CASE("bump polynomial for identity beta jets") {
    // with beta-jets (1,0,0,0,0) the matching system gives p1 = s^2/2
    Jet beta(4);
    beta.coeff_ref(0) = 1.0;
    const Poly p1 = solve_bump_poly(beta, 2);
    const std::vector<double> want = {0.0, 0.0, 0.5, 0.0, 0.0};
    for (int k = 0; k <= 4; ++k)
        CHECK(p1.coeffs()[k] == doctest::Approx(want[k]).epsilon(1e-14));
}

TEST_CASE("bump jets agree with finite differences") {
    const auto& bt = profiles()->bumps;
    const double z = 0.75 + 0.4 * bt.support_radius();
    for (int i = 1; i <= 3; ++i)
        check_jet_vs_fd([&](double x) { return bt.g(i, x); }, z, bt.g_jet(i, z, 6), 4, 4e-3);
}

TEST_CASE("temporal profile plateau and endpoint behaviour") {
    const auto& tp = profiles()->temporal;
    const double T = tp.T(), delta = tp.delta();
    CHECK(tp.lam0_jet(0.0, 4).value() == 0.0);
    CHECK(tp.lam0_jet(T, 4).value() == 0.0);
    CHECK(tp.lam0_jet(0.5 * T, 4).value() == 1.0);
    CHECK(tp.lam0_jet(0.5 * T, 4).derivative(1) == 0.0);
    CHECK(tp.lam0_jet(delta, 4).value() == doctest::Approx(1.0).epsilon(1e-12));
    const double t = 0.3 * delta;
    const double s = t * (T - t);
    CHECK(tp.lam0_jet(t, 2).value() ==
          doctest::Approx(std::exp(-std::sqrt(1.0 / s))).epsilon(1e-13));
    for (int k = 1; k < 40; ++k) CHECK(tp.lam0_jet(T * k / 40.0, 0).value() > 0.0);
}

TEST_CASE("f0 flat at the endpoints and dominated by powers of lambda") {
    const auto& tp = profiles()->temporal;
    const double T = tp.T();
    for (double t : {0.0, T}) {
        const Jet j = tp.f0_jet(t, 8);
        for (int n = 0; n <= 8; ++n) CHECK(j.coeff(n) == 0.0);
    }
    CHECK(tp.f0_jet(0.5 * T, 2).value() ==
          doctest::Approx(std::exp(-4.0 / (T * T))).epsilon(1e-13));
    const double t = 1e-3 * T;
    const double f0 = tp.f0_jet(t, 0).value();
    const double lam = tp.lam_jet(t, 0).value();
    CHECK(f0 / std::pow(lam, 8) < 1e-6);
}

TEST_CASE("fd cross-check of temporal jets") {
    const auto& tp = profiles()->temporal;
    const double T = tp.T();
    for (double t : {0.33 * T, 0.5 * T, 0.8 * T}) {
        check_jet_vs_fd([&](double x) { return tp.f0_jet(x, 0).value(); }, t,
                        tp.f0_jet(t, 6), 4, 1e-4 * T);
        check_jet_vs_fd([&](double x) { return tp.lam0_jet(x, 0).value(); }, t,
                        tp.lam0_jet(t, 6), 4, 1e-4 * T);
        check_jet_vs_fd([&](double x) { return tp.eval(x).f1.value(); }, t,
                        tp.eval(t).f1, 3, 1e-4 * T);
        check_jet_vs_fd([&](double x) { return tp.eval(x).f3.value(); }, t,
                        tp.eval(t).f3, 2, 1e-4 * T);
    }
}

TEST_CASE("plateau closed form for f1 and sup-norm ratios of f2, f3") {
    const auto& tp = profiles()->temporal;
    const auto& st = profiles()->stationary;
    const double T = tp.T(), eps = tp.epsilon();
    const double t = 0.5 * T;
    const TemporalJets j = tp.eval(t);
    CHECK(j.f1.value() ==
          doctest::Approx(eps * eps * st.g34() * j.f0.derivative(2)).epsilon(1e-12));
    double r1 = 0.0, r2 = 0.0, r3 = 0.0, f0sup = 0.0;
    for (int i = 1; i < 500; ++i) {
        const double tt = T * i / 500.0;
        const TemporalJets q = tp.eval(tt);
        f0sup = std::max(f0sup, std::abs(q.f0.value()));
        r1 = std::max(r1, std::abs(q.f1.value()));
        r2 = std::max(r2, std::abs(q.f2.value()));
        r3 = std::max(r3, std::abs(q.f3.value()));
    }
    CHECK(r1 / (eps * eps * f0sup) < 1e4);
    CHECK(r2 / (eps * eps * f0sup) < 1e4);
    CHECK(r3 / (eps * eps * eps * eps * f0sup) < 3e6);
}

TEST_CASE("epsilon vetting raises for oversized amplitudes") {
    const ProfileParams p = default_params();
    auto st = build_stationary(p.delta_prime, p.delta_double_prime);
    CHECK_THROWS_AS(build_temporal(p.T, p.delta, 2.0, st), EpsilonTooLarge);
}

TEST_CASE("cubic contact: lambda^2 Vcal and two z-derivatives vanish at 3/4") {
    Elementary e({0.5, 1.0, profiles()});
    const double T = profiles()->temporal.T();
    for (double frac : {0.08, 0.25, 0.5, 0.77, 0.95}) {
        const double t = frac * T;
        const Jet v = e.lamV_zjet(t, 0.75, 3);
        const double f0 = profiles()->temporal.f0_jet(t, 0).value();
        INFO("t=", t, " f0=", f0);
        CHECK(std::abs(v.derivative(0)) < 1e-12 * std::max(1.0, f0));
        CHECK(std::abs(v.derivative(1)) < 1e-10 * std::max(1.0, f0));
        CHECK(std::abs(v.derivative(2)) < 1e-9 * std::max(1.0, f0));
        CHECK(v.derivative(3) < 0.0);
    }
}

TEST_CASE("certificate ratio agrees with the jet route where f0 is healthy") {
    Elementary e({0.5, 1.0, profiles()});
    const auto& tp = profiles()->temporal;
    const double T = tp.T();
    for (double frac : {0.3, 0.5, 0.7}) {
        for (double dz : {-0.1, 0.02, 0.12}) {
            const double t = frac * T, z = 0.75 + dz;
            const double f0 = tp.f0_jet(t, 0).value();
            const double via_jets = e.lamV_zjet(t, z, 3).derivative(3) / f0;
            const double via_ratio = e.certificate_ratio(t, z);
            CHECK(via_jets == doctest::Approx(via_ratio).epsilon(1e-7));
        }
    }
}

TEST_CASE("certificate is negative across the window at the default amplitude") {
    Elementary e({0.5, 1.0, profiles()});
    const CertificateReport rep = vzzz_certificate(e, 160, 80);
    INFO("sup ratio = ", rep.sup_ratio, " at t=", rep.argmax_t, " z=", rep.argmax_z);
    CHECK(rep.ok);
    CHECK(rep.margin > 0.0);
}
