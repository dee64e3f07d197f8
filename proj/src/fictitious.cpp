#include "wavecouple/fictitious.hpp"

#include <cmath>

namespace wavecouple {

double SteeringPlan::phi(double t) const {
    const double d = covering.delta, T = covering.T;
    // flat step from 1 to 0, transitioning strictly inside [delta, T-delta]
    return 1.0 - smooth_step((t - 1.05 * d) / (T - 2.1 * d));
}

double SteeringPlan::xi(double x) const {
    double boxes = 0.0;
    for (int i = 0; i < covering.size(); ++i) {
        const double ml = (i == 0) ? covering.delta : gap_margins[i - 1];
        const double mr = (i + 1 == covering.size()) ? covering.delta : gap_margins[i];
        const double a = covering.rects[i].first, b = covering.rects[i].second;
        boxes += smooth_step((x - a - inset) / (ml - inset)) *
                 smooth_step((b - inset - x) / (mr - inset));
    }
    return 1.0 - std::min(1.0, boxes);
}

SteeringPlan build_plan(const CoveringSet& covering) {
    SteeringPlan plan;
    plan.covering = covering;
    plan.gap_margins = gap_deltas(covering);
    // each rectangle must fit its outer margin (delta on the first/last
    // side, delta_i at the gaps) plus a nonempty core
    const double eps = covering.epsilon;
    const double room = eps - covering.delta - 0.05 * eps;
    if (!(room > 0.0))
        throw BadEpsilon("covering rectangles too narrow for the steering margins");
    for (size_t i = 0; i < plan.gap_margins.size(); ++i)
        plan.gap_margins[i] = std::min({plan.gap_margins[i], 0.45 * eps, room});
    return plan;
}

namespace {

CauchySlice slice_from(const SpatialFn& val, const SpatialFn& vel, const Grid& g) {
    CauchySlice s;
    s.value.resize(g.nx);
    s.velocity.resize(g.nx);
    for (int j = 0; j < g.nx; ++j) {
        s.value[j] = val(g.x(j));
        s.velocity[j] = vel(g.x(j));
    }
    return s;
}

// restriction of field rows to a strip's x-window by interpolation
struct StripWindow {
    double x_lo = 0.0, x_hi = 0.0;
    Grid grid;      // local grid over [0, x_hi-x_lo] x [t1, t2] shifted to 0
    bool left_controlled = true, right_controlled = true;
};

double interp_row(const Field& f, int row, double x) {
    const Grid& g = f.grid;
    const double fx = x / g.dx();
    int base = std::clamp(static_cast<int>(fx) - 2, 0, g.nx - 6);
    std::vector<double> nodes(6);
    for (int i = 0; i < 6; ++i) nodes[i] = (base + i) * g.dx();
    const std::vector<double> w = fd_weights(x, nodes, 0);
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += w[i] * f.at(row, base + i);
    return s;
}

// value and d/dt of a field at (row, x) using a 6-row stencil
void value_and_dt(const Field& f, int row, double x, double& val, double& dval) {
    const Grid& g = f.grid;
    int base = std::clamp(row - 2, 0, g.nt - 6);
    std::vector<double> nodes(6), vals(6);
    for (int i = 0; i < 6; ++i) {
        nodes[i] = (base + i - row) * g.dt();
        vals[i] = interp_row(f, base + i, x);
    }
    const std::vector<double> w0 = fd_weights(0.0, nodes, 0);
    const std::vector<double> w1 = fd_weights(0.0, nodes, 1);
    val = dval = 0.0;
    for (int i = 0; i < 6; ++i) {
        val += w0[i] * vals[i];
        dval += w1[i] * vals[i];
    }
}

}  // namespace

SupportAudit support_audit(const Field& h, const CoveringSet& c) {
    SupportAudit a;
    const Grid& g = h.grid;
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            const double v = std::abs(h.at(it, j));
            a.peak = std::max(a.peak, v);
            if (!c.in_rect(t, x)) a.outside = std::max(a.outside, v);
            // the tighter band: rectangles shrunk by delta on each side in x
            bool in2 = t >= 2.0 * c.delta && t <= c.T - 2.0 * c.delta;
            if (in2) {
                bool inside_any = false;
                for (const auto& r : c.rects)
                    if (x >= r.first + c.delta && x <= r.second - c.delta) inside_any = true;
                in2 = inside_any;
            }
            if (!in2) a.outside2 = std::max(a.outside2, v);
        }
    }
    return a;
}

SteeringResult steer_two_controls(const SteerConfig& cfg, const SteeringPlan& plan,
                                  const ReturnTrajectory* shift, const EndpointData& data) {
    const CoveringSet& cov = plan.covering;
    const double T = cfg.grid.T, L = cfg.grid.L;

    // compatibility gate at the configured order; the shift vanishes flat at
    // the corners so the unshifted coupling is the right reduction there
    {
        const auto viols = check_compatibility(data, cfg.base_coupling, cfg.nu1, cfg.nu2, L,
                                               cfg.compat_order, cfg.compat_tol);
        if (!viols.empty())
            throw DataIncompatible("endpoint data violates the corner conditions");
    }

    // build everything on the refined grid, emit on the coarse one
    Grid fine = cfg.grid;
    fine.nt = cfg.audit_refine * (cfg.grid.nt - 1) + 1;

    const CouplingSpec coupling =
        shift ? CouplingSpec::cubic_shifted(shift) : cfg.base_coupling;

    const CauchySlice u0 = slice_from(data.u0, data.u1, fine);
    const CauchySlice v0 = slice_from(data.v0, data.v1, fine);
    const CauchySlice uT = slice_from(data.u0f, data.u1f, fine);
    const CauchySlice vT = slice_from(data.v0f, data.v1f, fine);

    const SystemSolution F =
        solve_forward(cfg.nu1, cfg.nu2, coupling, u0, v0, {}, {}, {}, {}, fine, cfg.solver);
    const SystemSolution B =
        solve_backward(cfg.nu1, cfg.nu2, coupling, uT, vT, {}, {}, {}, {}, fine, cfg.solver);

    // seam rows: phi is 1 up to t1 and 0 from t2 on
    const int row1 = static_cast<int>(std::floor(cov.delta / fine.dt()));
    const int row2 = static_cast<int>(std::ceil((T - cov.delta) / fine.dt()));
    const double t1 = fine.t(row1), t2 = fine.t(row2);

    // strip windows: outer one-sided pieces plus one two-sided piece per gap
    std::vector<StripWindow> wins;
    {
        StripWindow wl;
        wl.x_lo = 0.0;
        wl.x_hi = cov.a + 2.0 * cov.delta;
        wl.left_controlled = false;  // physical boundary at x = 0
        wins.push_back(wl);
        for (int i = 0; i + 1 < cov.size(); ++i) {
            StripWindow w;
            w.x_lo = cov.rects[i].second - plan.gap_margins[i];
            w.x_hi = cov.rects[i + 1].first + plan.gap_margins[i];
            wins.push_back(w);
        }
        StripWindow wr;
        wr.x_lo = cov.b - 2.0 * cov.delta;
        wr.x_hi = L;
        wr.right_controlled = false;
        wins.push_back(wr);
    }

    SteeringPlan iplan = plan;
    iplan.inset = 3.0 * fine.dx();
    if (!(iplan.inset < 0.5 * cov.delta))
        throw BadEpsilon("grid too coarse for the margin inset");
    for (double m : iplan.gap_margins)
        if (!(iplan.inset < 0.5 * m))
            throw BadEpsilon("grid too coarse for the gap margin inset");

    SteeringResult res;
    std::vector<ControlledStrip> strips;
    std::vector<Grid> strip_grids;
    for (auto& w : wins) {
        const double ell = w.x_hi - w.x_lo;
        Grid sg;
        sg.T = t2 - t1;
        sg.L = ell;
        sg.nt = row2 - row1 + 1;
        sg.nx = std::max(9, static_cast<int>(std::round(ell / fine.dx())) + 1);
        StripProblem prob;
        prob.nu1 = cfg.nu1;
        prob.nu2 = cfg.nu2;
        prob.coupling = coupling;
        prob.x0_global = w.x_lo;
        prob.t0_global = t1;
        prob.left_controlled = w.left_controlled;
        prob.right_controlled = w.right_controlled;
        prob.k = cfg.compat_order;
        prob.tol = cfg.picard_tol;
        auto window_slice = [&](const SystemSolution& sol, int row, CauchySlice& su,
                                CauchySlice& sv) {
            su.value.resize(sg.nx);
            su.velocity.resize(sg.nx);
            sv.value.resize(sg.nx);
            sv.velocity.resize(sg.nx);
            for (int j = 0; j < sg.nx; ++j) {
                const double x = w.x_lo + sg.L * j / (sg.nx - 1);
                value_and_dt(sol.u, row, x, su.value[j], su.velocity[j]);
                value_and_dt(sol.v, row, x, sv.value[j], sv.velocity[j]);
            }
        };
        window_slice(F, row1, prob.u0, prob.v0);
        window_slice(B, row2, prob.uT, prob.vT);
        ControlledStrip cs;
        try {
            cs = semilinear_boundary_control(prob, sg, cfg.solver);
        } catch (const Error& e) {
            throw PicardDiverged("strip [" + std::to_string(w.x_lo) + ", " +
                                 std::to_string(w.x_hi) + "] failed: " + e.what());
        }
        res.picard_iterations = std::max(res.picard_iterations, cs.iterations);
        strips.push_back(std::move(cs));
        strip_grids.push_back(sg);
    }

    auto strip_value = [&](double t, double x, int which, bool v_component) {
        const StripWindow& w = wins[which];
        const Grid& sg = strip_grids[which];
        const Field& f = v_component ? strips[which].v : strips[which].u;
        const double xs = x - w.x_lo;
        if (t <= t1) {
            const int row = static_cast<int>(std::round(t / fine.dt()));
            return interp_row(v_component ? F.v : F.u, row, x);
        }
        if (t >= t2) {
            const int row = static_cast<int>(std::round(t / fine.dt()));
            return interp_row(v_component ? B.v : B.u, row, x);
        }
        const int row = static_cast<int>(std::round((t - t1) / sg.dt()));
        const double fx = xs / sg.dx();
        int base = std::clamp(static_cast<int>(fx) - 2, 0, sg.nx - 6);
        std::vector<double> nodes(6);
        for (int i = 0; i < 6; ++i) nodes[i] = (base + i) * sg.dx();
        const std::vector<double> wts = fd_weights(xs, nodes, 0);
        double s = 0.0;
        for (int i = 0; i < 6; ++i) s += wts[i] * f.at(row, base + i);
        return s;
    };

    auto which_strip = [&](double x) {
        for (size_t i = 0; i < wins.size(); ++i)
            if (x >= wins[i].x_lo - 1e-12 && x <= wins[i].x_hi + 1e-12)
                return static_cast<int>(i);
        return -1;
    };

    // assemble the blended pair on the fine grid
    Field fu(fine, "u"), fv(fine, "v");
    for (int it = 0; it < fine.nt; ++it) {
        const double t = fine.t(it);
        const double ph = iplan.phi(t);
        for (int j = 0; j < fine.nx; ++j) {
            const double x = fine.x(j);
            const double xv = iplan.xi(x);
            const double tu = ph * F.u.at(it, j) + (1.0 - ph) * B.u.at(it, j);
            const double tv = ph * F.v.at(it, j) + (1.0 - ph) * B.v.at(it, j);
            double su = tu, sv = tv;
            if (xv > 0.0) {
                const int wi = which_strip(x);
                if (wi >= 0) {
                    su = strip_value(t, x, wi, false);
                    sv = strip_value(t, x, wi, true);
                }
            }
            fu.at(it, j) = xv * su + (1.0 - xv) * tu;
            fv.at(it, j) = xv * sv + (1.0 - xv) * tv;
        }
    }

    // residual controls on the fine grid
    Field fh1 = box_fd4(fu, cfg.nu1);
    Field fh2 = box_fd4(fv, cfg.nu2);
    for (int it = 0; it < fine.nt; ++it) {
        const double t = fine.t(it);
        for (int j = 0; j < fine.nx; ++j) {
            const double x = fine.x(j);
            fh1.at(it, j) -= coupling.f1(t, x, fu.at(it, j), fv.at(it, j));
            fh2.at(it, j) -= coupling.f2(t, x, fu.at(it, j), fv.at(it, j));
        }
    }

    const SupportAudit a1 = support_audit(fh1, cov);
    const SupportAudit a2 = support_audit(fh2, cov);
    res.h1_peak = a1.peak;
    res.h2_peak = a2.peak;
    res.h1_outside = a1.outside;
    res.h2_outside = a2.outside;
    res.h1_outside2 = a1.outside2;
    res.h2_outside2 = a2.outside2;

    // emit on the coarse grid
    res.u = Field(cfg.grid, "u");
    res.v = Field(cfg.grid, "v");
    res.h1 = Field(cfg.grid, "h1");
    res.h2 = Field(cfg.grid, "h2");
    for (int it = 0; it < cfg.grid.nt; ++it)
        for (int j = 0; j < cfg.grid.nx; ++j) {
            res.u.at(it, j) = fu.at(it * cfg.audit_refine, j);
            res.v.at(it, j) = fv.at(it * cfg.audit_refine, j);
            res.h1.at(it, j) = fh1.at(it * cfg.audit_refine, j);
            res.h2.at(it, j) = fh2.at(it * cfg.audit_refine, j);
        }

    // endpoint fidelity and norms
    double err = 0.0, dn = 0.0;
    for (int j = 0; j < cfg.grid.nx; ++j) {
        const double x = cfg.grid.x(j);
        err = std::max(err, std::abs(res.u.at(0, j) - data.u0(x)));
        err = std::max(err, std::abs(res.v.at(0, j) - data.v0(x)));
        err = std::max(err, std::abs(res.u.at(cfg.grid.nt - 1, j) - data.u0f(x)));
        err = std::max(err, std::abs(res.v.at(cfg.grid.nt - 1, j) - data.v0f(x)));
        for (const SpatialFn* f : {&data.u0, &data.u1, &data.v0, &data.v1, &data.u0f,
                                   &data.u1f, &data.v0f, &data.v1f})
            dn = std::max(dn, std::abs((*f)(x)));
    }
    res.endpoint_error = err;
    res.data_norm = dn;
    res.u_norm = res.u.max_abs();
    res.v_norm = res.v.max_abs();
    return res;
}

}  // namespace wavecouple
