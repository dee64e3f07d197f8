#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavecouple/errors.hpp"
#include "wavecouple/geometry.hpp"
#include "wavecouple/trajectory.hpp"

using namespace wavecouple;

namespace {

// desk-scale copy of the default scenario's profile block
ProfileParams scenario_profile(double epsilon) {
    ProfileParams p;
    p.T = 1.7;
    p.delta = 0.42;
    p.epsilon = epsilon;
    p.delta_prime = 0.03;
    p.delta_double_prime = 0.40;
    return p;
}

const double kNu = 750.0;

std::shared_ptr<const ProfileSet> profiles() {
    static auto p = build_profiles(scenario_profile(2.25e-4));
    return p;
}

ReturnTrajectory default_trajectory() {
    const CoveringSet c = build_covering(1.7, 3.5, 5.185, 0.42, 0.17, kNu, kNu);
    std::vector<Elementary> parts;
    for (double xc : c.centers) parts.push_back(Elementary({xc, kNu, profiles()}));
    return ReturnTrajectory(std::move(parts));
}

}  // namespace

TEST_CASE("vbar support, center value and endpoint flatness") {
    Elementary e({4.0, kNu, profiles()});
    const double T = e.T();
    // outside the support cone
    CHECK(e.vbar(0.5 * T, 4.0 + 1.1 * e.support_halfwidth(0.5 * T)) == 0.0);
    // at the center on the plateau: f0(t) * g(0) = f0(t)
    const double t = 0.5 * T;
    const double f0 = profiles()->temporal.f0_jet(t, 0).value();
    CHECK(e.vbar(t, 4.0) == doctest::Approx(f0).epsilon(1e-13));
    for (int ix = 0; ix <= 50; ++ix) CHECK(e.vbar(0.0, 3.5 + ix * 0.02) == 0.0);
}

TEST_CASE("lambda^2 V at the center equals 2 f0 + eps^2 f0''") {
    Elementary e({4.0, kNu, profiles()});
    const auto& tp = profiles()->temporal;
    const double t = 0.5 * tp.T(), eps = tp.epsilon();
    const Jet f0 = tp.f0_jet(t, 2);
    const double want = 2.0 * f0.value() + eps * eps * f0.derivative(2);
    const double lam2V = e.V(t, 4.0) * eps * eps;  // lambda = eps on the plateau
    CHECK(lam2V == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("V vanishes at t = 0 and is strictly negative right of the contact") {
    Elementary e({4.0, kNu, profiles()});
    const double T = e.T();
    for (int ix = 0; ix <= 20; ++ix) CHECK(e.V(0.0, 3.9 + 0.01 * ix) == 0.0);
    // sign sweep on z in (3/4, 1-delta'): V < 0 strictly
    const auto& tp = profiles()->temporal;
    for (double frac : {0.2, 0.5, 0.8}) {
        const double t = frac * T;
        const double lam = tp.lam_jet(t, 0).value();
        for (double z : {0.78, 0.85, 0.93, 0.96}) {
            const double x = 4.0 + kNu * lam * z;
            CHECK(e.V(t, x) < 0.0);
        }
        for (double z : {0.1, 0.4, 0.7}) {
            const double x = 4.0 + kNu * lam * z;
            CHECK(e.V(t, x) > 0.0);  // -f0 G > 0 left of 3/4
        }
    }
}

TEST_CASE("ubar cubes back to V exactly and has the prescribed support") {
    Elementary e({4.0, kNu, profiles()});
    const double T = e.T();
    double worst = 0.0;
    for (int it = 1; it < 40; ++it)
        for (int ix = 0; ix <= 80; ++ix) {
            const double t = T * it / 40.0, x = 3.7 + 0.6 * ix / 80.0;
            const double u = e.ubar(t, x), V = e.V(t, x);
            worst = std::max(worst, std::abs(u * u * u - V) / (1.0 + std::abs(V)));
            if (std::abs(x - 4.0) > e.support_halfwidth(t)) CHECK(u == 0.0);
        }
    CHECK(worst < 1e-14);
}

TEST_CASE("superposition requires disjoint supports and sums cubes") {
    auto traj = default_trajectory();
    CHECK(traj.parts().size() == 3);
    // overlapping copies refuse to build
    std::vector<Elementary> bad;
    bad.push_back(Elementary({4.0, kNu, profiles()}));
    bad.push_back(Elementary({4.0 + 0.5 * bad[0].support_halfwidth_max(), kNu, profiles()}));
    CHECK_THROWS_AS(ReturnTrajectory(std::move(bad)), OverlappingSupports);
    // residual of the superposed pair on a coarse sweep, after the
    // normalizing power-of-two scaling
    const Grid g{1.7, 8.7, 101, 201};
    traj.set_scale(traj.normalizing_scale(g));
    CHECK(traj.scale() < 1.0);
    CHECK(pde_residual_inf(traj, g, kNu) < 1e-8);
}

TEST_CASE("sampled triple: support box, endpoint flatness, scaling") {
    auto traj = default_trajectory();
    const Grid g{1.7, 8.7, 121, 241};
    const TrajectoryTriple tr = traj.sample(g, kNu);
    CHECK(tr.u.analytic);
    CHECK(endpoint_flatness(traj, g) <= 1e-12);
    // h vanishes outside the support box
    for (int ix = 0; ix < g.nx; ++ix) {
        if (g.x(ix) < tr.box.x0 || g.x(ix) > tr.box.x1) {
            for (int it = 0; it < g.nt; ++it) CHECK(tr.h.at(it, ix) == 0.0);
        }
    }
    // kappa = 1 identity
    const TrajectoryTriple same = scale_triple(tr, 1.0);
    CHECK(same.u.v == tr.u.v);
    // kappa = 1/2: residual homogeneity, box v - u^3 scales by kappa^3
    const TrajectoryTriple half = scale_triple(tr, 0.5);
    for (int it = 20; it < 100; it += 17)
        for (int ix = 5; ix < g.nx; ix += 29) {
            const double r_half = half.v.at(it, ix) -
                                  half.u.at(it, ix) * half.u.at(it, ix) * half.u.at(it, ix) / 1.0;
            const double r_base = tr.v.at(it, ix) -
                                  tr.u.at(it, ix) * tr.u.at(it, ix) * tr.u.at(it, ix) / 1.0;
            CHECK(r_half == doctest::Approx(0.125 * r_base).epsilon(1e-12));
        }
}

TEST_CASE("floor condition on the covering rectangles") {
    auto traj = default_trajectory();
    const CoveringSet c = build_covering(1.7, 3.5, 5.185, 0.42, 0.17, kNu, kNu);
    double floor = 1e300;
    for (int i = 0; i < c.size(); ++i) {
        for (int kt = 0; kt <= 40; ++kt)
            for (int kx = 0; kx <= 40; ++kx) {
                const double t = c.delta + (c.T - 2 * c.delta) * kt / 40.0;
                const double x =
                    c.rects[i].first + (c.rects[i].second - c.rects[i].first) * kx / 40.0;
                const double u = traj.ubar(t, x);
                floor = std::min(floor, 3.0 * u * u);
            }
    }
    CHECK(floor > 1e-10);
}

TEST_CASE("hbar refinement study shows at least second order") {
    Elementary e({4.0, kNu, profiles()});
    const double h0 = e.support_halfwidth_max() / 256.0;
    const RefinementReport rep = hbar_refinement_study(e, h0, 17, 33);
    INFO("d12=", rep.d12, " d23=", rep.d23, " order=", rep.order);
    CHECK(rep.order >= 1.9);
}

TEST_CASE("ubar FD derivative estimates stay bounded under refinement") {
    Elementary e({4.0, kNu, profiles()});
    const double h0 = e.support_halfwidth_max() * 2e-4;
    const double worst = ubar_derivative_boundedness(e, h0);
    INFO("worst ratio deviation = ", worst);
    CHECK(worst < 0.2);
}

TEST_CASE("certificate threshold epsilon exists between ours and 10x ours") {
    // ok at the scenario amplitude (checked in test_profiles); flips for large
    auto big = build_profiles(scenario_profile(3.0e-3));
    Elementary e({4.0, kNu, big});
    const CertificateReport rep = vzzz_certificate(e, 120, 60);
    CHECK_FALSE(rep.ok);
}

TEST_CASE("zeroed bumps kill the R remainder") {
    // with f1=f2=f3 identically absent the ratio reduces to the G-part;
    // probe by comparing certificate_ratio against the R0-only expression at
    // a plateau instant where lambda-dot vanishes
    Elementary e({4.0, kNu, profiles()});
    const auto& tp = profiles()->temporal;
    const auto& st = profiles()->stationary;
    const double t = 0.5 * tp.T();
    const double eps = tp.epsilon();
    for (double z : {0.70, 0.75, 0.80}) {
        const auto r = tp.ratios(t);
        const double F2 = r.F2.value();
        const Jet Gj = st.G_jet(z, 3);
        // plateau: lam = eps, lam' = lam'' = 0
        const double r0_only = -Gj.derivative(3) + eps * eps * F2 * Gj.derivative(1);
        const double phi_terms = e.certificate_ratio(t, z) - r0_only;
        // remainder from the bumps is eps^2-small relative to 6
        CHECK(std::abs(phi_terms) < 1.0);
    }
}
