#include "wavecouple/verify.hpp"

#include <cmath>
#include <sstream>

#include "wavecouple/report.hpp"
#include "wavecouple/wavelab.hpp"

namespace wavecouple {

namespace {

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(6);
    o << v;
    return o.str();
}

CriterionResult item(const std::string& name, bool pass, const std::string& details) {
    return {name, pass, details};
}

SpatialFn scale_fn(const SpatialFn& f, double s) {
    return SpatialFn{[f, s](double x, int order) { return s * f.jet(x, order); }};
}

EndpointData scale_data(const EndpointData& d, double au, double av) {
    EndpointData r;
    r.u0 = scale_fn(d.u0, au);
    r.u1 = scale_fn(d.u1, au);
    r.u0f = scale_fn(d.u0f, au);
    r.u1f = scale_fn(d.u1f, au);
    r.v0 = scale_fn(d.v0, av);
    r.v1 = scale_fn(d.v1, av);
    r.v0f = scale_fn(d.v0f, av);
    r.v1f = scale_fn(d.v1f, av);
    return r;
}

}  // namespace

std::string VerifySummary::text() const {
    std::string out;
    for (const auto& i : items)
        out += (i.pass ? "PASS " : "FAIL ") + i.name + "  [" + i.details + "]\n";
    return out;
}

TrajectoryRun run_trajectory(const Scenario& s) {
    TrajectoryRun run;
    run.scenario = s;
    run.covering = build_covering(s.T, s.a, s.b, s.delta, s.epsilon0, s.nu1, s.nu2);
    ProfileParams pp;
    pp.T = s.T;
    pp.delta = s.delta;
    pp.epsilon = run.covering.epsilon / s.nu2;
    pp.delta_prime = s.delta_prime;
    pp.delta_double_prime = s.delta_double_prime;
    pp.jet_order = s.jet_order;
    run.profiles = build_profiles(pp);
    std::vector<Elementary> parts;
    for (double xc : run.covering.centers)
        parts.push_back(Elementary({xc, s.nu2, run.profiles}));
    run.traj = std::make_unique<ReturnTrajectory>(std::move(parts));
    const Grid g = s.grid();
    run.traj->set_scale(s.kappa > 0.0 ? s.kappa : run.traj->normalizing_scale(g));
    run.triple = run.traj->sample(g, s.nu1);
    return run;
}

SteerRun run_steer(const Scenario& s, bool with_trajectory, double alpha) {
    SteerRun run;
    if (with_trajectory) {
        run.traj = run_trajectory(s);
    } else {
        run.traj.scenario = s;
        run.traj.covering = build_covering(s.T, s.a, s.b, s.delta, s.epsilon0, s.nu1, s.nu2);
    }
    run.plan = build_plan(run.traj.covering);
    SteerConfig cfg;
    cfg.nu1 = s.nu1;
    cfg.nu2 = s.nu2;
    cfg.grid = s.grid();
    cfg.audit_refine = s.audit_refine;
    cfg.compat_order = s.compat_order;
    cfg.compat_tol = s.tol_compat;
    cfg.picard_tol = s.tol_picard * alpha;
    cfg.base_coupling = s.make_coupling();
    EndpointData data = s.make_data();
    if (alpha != 1.0) data = scale_data(data, alpha, alpha * alpha * alpha);
    run.steer = steer_two_controls(cfg, run.plan, run.traj.traj.get(), data);
    return run;
}

ReduceRun run_reduce(const Scenario& s, bool with_trajectory, double alpha,
                     double tol_scale) {
    ReduceRun run;
    run.steer = run_steer(s, with_trajectory, alpha);
    const Grid g = s.grid();
    const CoveringSet& cov = run.steer.traj.covering;
    const double mt = 0.25 * cov.delta;
    const double mx = std::min(0.25 * cov.delta, 0.2 * cov.epsilon);
    run.hull = Hull(cov, mt, mx);

    PipelineState z;
    z.nu1 = s.nu1;
    z.nu2 = s.nu2;
    z.traj = with_trajectory ? run.steer.traj.traj.get() : nullptr;
    if (with_trajectory) {
        const TrajectoryTriple& tr = run.steer.traj.triple;
        z.u = tr.u;
        z.v = tr.v;
        z.h = tr.h;
        for (size_t i = 0; i < z.u.v.size(); ++i) {
            z.u.v[i] += run.steer.steer.u.v[i];
            z.v.v[i] += run.steer.steer.v.v[i];
        }
    } else {
        z.u = run.steer.steer.u;
        z.v = run.steer.steer.v;
        z.h = Field(g, "h");
    }
    const Field u0_row = z.u, v0_row = z.v;  // copies for the slice-move check

    const CouplingSpec spec = s.make_coupling();
    ReduceOptions opt;
    opt.tol = s.tol_newton * tol_scale;
    run.reduced = reduce_to_one_control(std::move(z), spec, run.hull, opt);

    // diagnostics: slice movement, h support band, v-equation residual
    const PipelineState& zf = run.reduced.z;
    double mv = 0.0;
    for (int j = 0; j < g.nx; ++j) {
        mv = std::max(mv, std::abs(zf.u.at(0, j) - u0_row.at(0, j)));
        mv = std::max(mv, std::abs(zf.u.at(g.nt - 1, j) - u0_row.at(g.nt - 1, j)));
        mv = std::max(mv, std::abs(zf.v.at(0, j) - v0_row.at(0, j)));
        mv = std::max(mv, std::abs(zf.v.at(g.nt - 1, j) - v0_row.at(g.nt - 1, j)));
    }
    run.slice_move = mv;
    double hb = 0.0;
    for (int it = 0; it < g.nt; ++it)
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            if (x < s.a - 2.5 * g.dx() || x > s.b + 2.5 * g.dx())
                hb = std::max(hb, std::abs(zf.h.at(it, j)));
        }
    run.h_outside_band = hb;
    const Residual r = apply_D(zf, spec);
    run.v_residual = r.inf2();
    return run;
}

std::vector<CriterionResult> verify_trajectory_block(const Scenario& s) {
    std::vector<CriterionResult> out;
    TrajectoryRun run = run_trajectory(s);
    const Grid g = s.grid();

    const double resid = pde_residual_inf(*run.traj, g, s.nu2);
    const Elementary& probe = run.traj->parts().front();
    const RefinementReport ref =
        hbar_refinement_study(probe, probe.support_halfwidth_max() / 256.0, 17, 33);
    out.push_back(item("return_trajectory_exactness",
                       resid <= s.tol_pde && ref.order >= 1.9,
                       "residual=" + fmt(resid) + " fd_order=" + fmt(ref.order)));

    const double flat = endpoint_flatness(*run.traj, g);
    out.push_back(item("endpoint_flatness", flat <= s.tol_endpoint, "max=" + fmt(flat)));

    const CertificateReport cert = vzzz_certificate(probe, 400, 160);
    const double bounded =
        ubar_derivative_boundedness(probe, probe.support_halfwidth_max() * 2e-4);
    out.push_back(item("regularity_certificate", cert.ok && bounded < 0.2,
                       "sup_ratio=" + fmt(cert.sup_ratio) + " C=" + fmt(cert.margin) +
                           " fd_ratio_dev=" + fmt(bounded)));

    double floor = 1e300;
    std::string per_rect;
    for (int i = 0; i < run.covering.size(); ++i) {
        double fi = 1e300;
        for (int kt = 0; kt <= 40; ++kt)
            for (int kx = 0; kx <= 40; ++kx) {
                const double t =
                    run.covering.delta + (s.T - 2 * run.covering.delta) * kt / 40.0;
                const double x = run.covering.rects[i].first +
                                 (run.covering.rects[i].second - run.covering.rects[i].first) *
                                     kx / 40.0;
                const double u = run.traj->ubar(t, x);
                fi = std::min(fi, 3.0 * u * u);
            }
        per_rect += (i ? " " : "") + fmt(fi);
        floor = std::min(floor, fi);
    }
    out.push_back(item("sign_floor_condition", floor >= 1e-10, "per_rect=" + per_rect));

    bool cov_ok = true;
    std::string cov_note = "valid";
    try {
        validate_covering(run.covering);
    } catch (const Error& e) {
        cov_ok = false;
        cov_note = e.what();
    }
    const int missing = characteristics_missing_covering(run.covering, s.L, 250);
    out.push_back(item("covering_validity", cov_ok && missing == 0,
                       cov_note + " missing_characteristics=" + fmt(missing)));
    return out;
}

std::vector<CriterionResult> verify_dalembert_block() {
    std::vector<CriterionResult> out;
    const double L = 1.0, nu = 1.0;
    const Grid g2{1.2 * L / nu, L, 801, 801};
    auto sine = [&](const Grid& g) {
        CauchySlice s;
        s.value.resize(g.nx);
        s.velocity.assign(g.nx, 0.0);
        for (int j = 0; j < g.nx; ++j) s.value[j] = std::sin(M_PI * g.x(j) / L);
        return s;
    };
    auto zero = [&](const Grid& g) {
        CauchySlice s;
        s.value.assign(g.nx, 0.0);
        s.velocity.assign(g.nx, 0.0);
        return s;
    };
    auto energy = [&](const CauchySlice& s, const Grid& g) {
        double e = 0.0;
        for (int j = 0; j + 1 < g.nx; ++j) {
            const double gx = (s.value[j + 1] - s.value[j]) / g.dx();
            e += 0.5 * s.velocity[j] * s.velocity[j] + 0.5 * nu * nu * gx * gx;
        }
        return e * g.dx();
    };
    const CouplingSpec none = CouplingSpec::general(Poly2::zero(), Poly2::zero());

    const DalembertControl two = dalembert_two_sided(nu, sine(g2), zero(g2), g2.T, L, 4);
    const auto sol2 = solve_forward(nu, nu, none, sine(g2), zero(g2),
                                    [&](double t) { return two.eval(t, 0.0); },
                                    [&](double t) { return two.eval(t, L); }, {}, {}, g2);
    const double ratio2 = energy(sol2.u_final, g2) / energy(sine(g2), g2);
    bool short2 = false;
    try {
        dalembert_two_sided(nu, sine(g2), zero(g2), 0.9 * L / nu, L, 4);
    } catch (const TimeTooShort&) {
        short2 = true;
    }

    const Grid g1{2.2 * L / nu, L, 801, 801};
    const DalembertControl one =
        dalembert_one_sided(nu, Side::right, sine(g1), zero(g1), g1.T, L, 4);
    const auto sol1 = solve_forward(nu, nu, none, sine(g1), zero(g1), {},
                                    [&](double t) { return one.eval(t, L); }, {}, {}, g1);
    const double ratio1 = energy(sol1.u_final, g1) / energy(sine(g1), g1);
    bool short1 = false;
    try {
        dalembert_one_sided(nu, Side::right, sine(g1), zero(g1), 1.8 * L / nu, L, 4);
    } catch (const TimeTooShort&) {
        short1 = true;
    }
    out.push_back(item("linear_boundary_control",
                       ratio2 <= 1e-6 && ratio1 <= 1e-6 && short2 && short1,
                       "two_sided_energy=" + fmt(ratio2) + " one_sided_energy=" + fmt(ratio1) +
                           " short_raised=" + (short2 && short1 ? "yes" : "no")));
    return out;
}

std::vector<CriterionResult> verify_steering_block(const Scenario& s) {
    std::vector<CriterionResult> out;
    SteerRun big = run_steer(s, true);
    const double rel1 = big.steer.h1_outside / std::max(big.steer.h1_peak, 1e-300);
    const double rel2 = big.steer.h2_outside / std::max(big.steer.h2_peak, 1e-300);
    const double ratio_h1 = big.steer.h1_peak / big.steer.data_norm;
    const double ratio_h2 = big.steer.h2_peak / big.steer.data_norm;

    SteerRun small = run_steer(s, true, 0.0625);  // a 16x shrink, power of two
    const double sr1 = small.steer.h1_peak / small.steer.data_norm;
    const double sr2 = small.steer.h2_peak / small.steer.data_norm;
    const double drift = std::max(std::abs(std::log2(std::max(sr1, 1e-300) / ratio_h1)),
                                  std::abs(std::log2(std::max(sr2, 1e-300) / ratio_h2)));
    out.push_back(item(
        "two_control_steering",
        big.steer.endpoint_error <= 1e-5 && rel1 <= s.tol_support && rel2 <= s.tol_support &&
            drift < 2.0,
        "final_err=" + fmt(big.steer.endpoint_error) + " outside1=" + fmt(rel1) +
            " outside2=" + fmt(rel2) + " ratio_h1=" + fmt(ratio_h1) + " ratio_h2=" +
            fmt(ratio_h2) + " shrunk_ratio_h1=" + fmt(sr1) + " shrunk_ratio_h2=" + fmt(sr2)));

    // locality of the infinitesimal inverse: a residual bump in a sub-box
    // with margin delta moves nothing outside its dilation
    {
        const Grid g = s.grid();
        const CoveringSet& cov = big.traj.covering;
        PipelineState z;
        z.nu1 = s.nu1;
        z.nu2 = s.nu2;
        z.traj = big.traj.traj.get();
        z.u = big.traj.triple.u;
        z.v = big.traj.triple.v;
        z.h = big.traj.triple.h;
        const Hull hull(cov, 0.25 * cov.delta, std::min(0.25 * cov.delta, 0.2 * cov.epsilon));
        const double tc = 0.5 * s.T, xc = cov.centers[0];
        const double rt = 0.25 * (s.T - 2 * cov.delta), rx = 0.2 * cov.epsilon;
        Field r1(g, "r1"), r2(g, "r2");
        for (int it = 0; it < g.nt; ++it)
            for (int j = 0; j < g.nx; ++j) {
                const double qt = (g.t(it) - tc) / rt, qx = (g.x(j) - xc) / rx;
                const double q = qt * qt + qx * qx;
                r2.at(it, j) = q < 1.0 ? std::pow(1.0 - q, 4) : 0.0;
            }
        const CouplingSpec spec = s.make_coupling();
        CouplingSpec working = spec;
        working.floor = 1e-6;
        const Increment inc = infinitesimal_inverse(z, working, r1, r2, hull);
        double leak_du = 0.0, leak_dh = 0.0;
        const double dil = 0.5 * cov.delta;
        for (int it = 0; it < g.nt; ++it)
            for (int j = 0; j < g.nx; ++j) {
                const double dt_ = std::abs(g.t(it) - tc), dx_ = std::abs(g.x(j) - xc);
                if (dt_ > rt + dil || dx_ > rx + dil) {
                    leak_du = std::max(leak_du, std::abs(inc.du.at(it, j)));
                    if (dt_ > rt + dil + 3 * g.dt() || dx_ > rx + dil + 3 * g.dx())
                        leak_dh = std::max(leak_dh, std::abs(inc.dh.at(it, j)));
                }
            }
        // dh carries -r1 = the wave-operator consistency of the state; budget
        // it against the stencil-bleed allowance
        out.push_back(item("inverse_locality", leak_du <= 1e-12 && leak_dh <= 1e-6,
                           "du_leak=" + fmt(leak_du) + " dh_leak=" + fmt(leak_dh)));
    }
    return out;
}

std::vector<CriterionResult> verify_reduction_block(const Scenario& s) {
    std::vector<CriterionResult> out;
    ReduceRun run = run_reduce(s, true);
    const bool pass = run.reduced.iterations <= 8 && run.reduced.final_residual <= s.tol_newton &&
                      run.h_outside_band == 0.0 && run.slice_move <= 1e-7 &&
                      run.v_residual <= s.tol_newton;
    out.push_back(item("reduction_to_one_control", pass,
                       "iters=" + fmt(run.reduced.iterations) + " residual=" +
                           fmt(run.reduced.final_residual) + " h_outside_band=" +
                           fmt(run.h_outside_band) + " slice_move=" + fmt(run.slice_move) +
                           " v_residual=" + fmt(run.v_residual)));
    return out;
}

std::vector<CriterionResult> verify_scaling_block(const Scenario& s) {
    std::vector<CriterionResult> out;
    ReduceRun base = run_reduce(s, true, 1.0, 1.0);
    double worst = 0.0;
    double ratio0 = 0.0;
    std::string ratios;
    for (double alpha : {0.5, 0.25}) {
        ReduceRun scaled = run_reduce(s, true, alpha, alpha * alpha * alpha);
        const Grid g = s.grid();
        // rescale (alpha^-1 u, alpha^-3 v, alpha^-1 h) against the base run;
        // the return part is alpha-independent and cancels in the comparison
        for (size_t i = 0; i < base.reduced.z.u.v.size(); ++i) {
            const double du =
                scaled.reduced.z.u.v[i] / alpha - base.reduced.z.u.v[i];
            const double dv = scaled.reduced.z.v.v[i] / (alpha * alpha * alpha) -
                              base.reduced.z.v.v[i];
            const double dh = scaled.reduced.z.h.v[i] / alpha - base.reduced.z.h.v[i];
            worst = std::max({worst, std::abs(du), std::abs(dv), std::abs(dh)});
        }
        // control-norm ratio in the degenerate-estimate form
        double hnorm = 0.0;
        for (double x : scaled.reduced.z.h.v) hnorm = std::max(hnorm, std::abs(x));
        const double M = alpha * base.steer.steer.data_norm +
                         std::cbrt(alpha * alpha * alpha * base.steer.steer.data_norm);
        const double ratio = hnorm / alpha / M * alpha;  // alpha^-1 h over M/alpha
        if (ratio0 == 0.0) ratio0 = ratio;
        worst = std::max(worst, 0.0);
        ratios += " " + fmt(ratio);
        if (std::abs(ratio / ratio0 - 1.0) > 0.1) worst = std::max(worst, 1.0);
    }
    out.push_back(item("cubic_scaling_equivariance", worst <= 1e-9,
                       "worst_field_dev=" + fmt(worst) + " ratios=" + ratios));
    return out;
}

std::vector<CriterionResult> verify_compat_block(const Scenario& s) {
    std::vector<CriterionResult> out;
    const CouplingSpec spec = s.make_coupling();
    // return-trajectory endpoint data vanishes identically
    EndpointData zero;
    const bool empty_ok =
        check_compatibility(zero, spec, s.nu1, s.nu2, s.L, 4, s.tol_compat).empty();

    // a second-derivative perturbation shows up as exactly one violation
    EndpointData pert;
    pert.u0 = SpatialFn{[](double x, int order) {
        const double width = 0.3;
        const Jet xj = Jet::variable(x, order);
        const Jet u = xj / width;
        if (std::abs(x) >= width) return Jet(order);
        Jet b = 1.0 - (u * u) * (u * u);
        Jet b6 = b * b * b;
        b6 = b6 * b6;
        return (1e-3 * 0.5) * xj * xj * b6;
    }};
    const auto viols = check_compatibility(pert, spec, s.nu1, s.nu2, s.L, 4, s.tol_compat);
    const bool pert_ok = viols.size() == 1 && viols[0].corner == Corner::initial_left &&
                         viols[0].equation == 1 && viols[0].n == 2;

    // Taylor-propagation oracle on polynomial data (independent x-polynomial
    // algebra, coefficients propagated through the PDE directly)
    double oracle_err = 0.0;
    {
        const double nu1 = 1.3, nu2 = 0.8;
        std::vector<double> u0 = {0.2, -0.1, 0.4, 0.05}, u1 = {-0.3, 0.2, -0.15};
        std::vector<double> v0 = {0.1, 0.3, -0.2}, v1 = {0.0, -0.1, 0.25};
        auto poly_fn = [](std::vector<double> c) {
            return SpatialFn{[c = std::move(c)](double x, int order) {
                const Jet xj = Jet::variable(x, order);
                Jet r(order);
                for (size_t k = c.size(); k-- > 0;) r = r * xj + c[k];
                return r;
            }};
        };
        EndpointData data;
        data.u0 = poly_fn(u0);
        data.u1 = poly_fn(u1);
        data.v0 = poly_fn(v0);
        data.v1 = poly_fn(v1);
        const CouplingSpec cubic = CouplingSpec::cubic();
        // oracle: A_{m+2} = nu^2 A_m'' + row(f); cubic coupling in the v row
        auto d2 = [](const std::vector<double>& c) {
            std::vector<double> r(std::max<size_t>(c.size(), 2) - 2, 0.0);
            for (size_t k = 2; k < c.size(); ++k) r[k - 2] = c[k] * k * (k - 1);
            return r;
        };
        auto mul = [](const std::vector<double>& a, const std::vector<double>& b) {
            std::vector<double> r(a.size() + b.size() - 1, 0.0);
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
            return r;
        };
        auto axpy = [](std::vector<double>& a, const std::vector<double>& b, double s) {
            if (a.size() < b.size()) a.resize(b.size(), 0.0);
            for (size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
        };
        auto fact = [](int n) {
            double f = 1;
            for (int i = 2; i <= n; ++i) f *= i;
            return f;
        };
        std::vector<std::vector<double>> Au = {u0, u1}, Av = {v0, v1};
        for (int m = 0; m + 2 <= 4; ++m) {
            std::vector<double> cube = {0.0};
            for (int p = 0; p <= m; ++p)
                for (int q = 0; p + q <= m; ++q) {
                    const int r = m - p - q;
                    axpy(cube, mul(Au[p], mul(Au[q], Au[r])),
                         fact(m) / (fact(p) * fact(q) * fact(r)));
                }
            std::vector<double> next_u = d2(Au[m]);
            for (double& x : next_u) x *= nu1 * nu1;
            std::vector<double> next_v = d2(Av[m]);
            for (double& x : next_v) x *= nu2 * nu2;
            axpy(next_v, cube, 1.0);
            Au.push_back(next_u);
            Av.push_back(next_v);
        }
        for (int n = 0; n <= 4; ++n) {
            const double cu =
                corner_derivative(data, cubic, nu1, nu2, 1.0, n, Corner::initial_left, 1, 4);
            const double cv =
                corner_derivative(data, cubic, nu1, nu2, 1.0, n, Corner::initial_left, 2, 4);
            oracle_err = std::max(oracle_err, std::abs(cu - Au[n][0]));
            oracle_err = std::max(oracle_err, std::abs(cv - Av[n][0]));
        }
    }
    out.push_back(item("compatibility_engine",
                       empty_ok && pert_ok && oracle_err <= 1e-10,
                       std::string("zero_data_empty=") + (empty_ok ? "yes" : "no") +
                           " single_violation=" + (pert_ok ? "yes" : "no") +
                           " oracle_err=" + fmt(oracle_err)));
    return out;
}

std::vector<CriterionResult> verify_nondegenerate_block(const Scenario& sbase) {
    std::vector<CriterionResult> out;
    Scenario s = sbase;
    s.coupling = "linear+cubic";
    SteerRun steer = run_steer(s, false);
    const double rel1 = steer.steer.h1_outside / std::max(steer.steer.h1_peak, 1e-300);
    const double rel2 = steer.steer.h2_outside / std::max(steer.steer.h2_peak, 1e-300);
    ReduceRun red = run_reduce(s, false);
    const bool pass = steer.steer.endpoint_error <= 1e-5 && rel1 <= s.tol_support &&
                      rel2 <= s.tol_support && red.reduced.iterations <= 8 &&
                      red.reduced.final_residual <= s.tol_newton &&
                      red.v_residual <= s.tol_newton;
    out.push_back(item("nondegenerate_path", pass,
                       "final_err=" + fmt(steer.steer.endpoint_error) + " outside1=" +
                           fmt(rel1) + " outside2=" + fmt(rel2) + " iters=" +
                           fmt(red.reduced.iterations) + " residual=" +
                           fmt(red.reduced.final_residual)));
    return out;
}

VerifySummary run_verify(const Scenario& traj_scn, const Scenario& steer_scn) {
    VerifySummary sum;
    auto append = [&sum](std::vector<CriterionResult> v) {
        for (auto& x : v) sum.items.push_back(std::move(x));
    };
    append(verify_trajectory_block(traj_scn));
    append(verify_dalembert_block());
    append(verify_steering_block(steer_scn));
    append(verify_reduction_block(steer_scn));
    append(verify_scaling_block(steer_scn));
    append(verify_compat_block(steer_scn));
    append(verify_nondegenerate_block(steer_scn));
    return sum;
}

}  // namespace wavecouple
