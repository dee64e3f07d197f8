#include "wavecouple/reducer.hpp"

#include <cmath>

namespace wavecouple {

namespace {

// box_nu2 v with the return part routed through the algebraic identity
// box vbar = ubar^3; only the perturbation v - vbar goes through the
// finite-difference operator
Field box_v_analytic(const PipelineState& z) {
    if (!z.traj) return box_fd4(z.v, z.nu2);
    const Grid& g = z.v.grid;
    Field pert = z.v;
    Field cube(g, "ubar3");
    for (int it = 0; it < g.nt; ++it) {
        const auto rc = z.traj->row(g.t(it));
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            pert.at(it, j) -= z.traj->vbar_on_row(rc, x);
            const double ub = z.traj->ubar_on_row(rc, x);
            cube.at(it, j) = ub * ub * ub;
        }
    }
    Field r = box_fd4(pert, z.nu2);
    for (size_t i = 0; i < r.v.size(); ++i) r.v[i] += cube.v[i];
    return r;
}

}  // namespace

Residual apply_D(const PipelineState& z, const CouplingSpec& spec) {
    const Grid& g = z.u.grid;
    Residual r;
    r.r1 = box_fd4(z.u, z.nu1);
    r.r2 = box_v_analytic(z);
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            const double u = z.u.at(it, j), v = z.v.at(it, j);
            r.r1.at(it, j) -= spec.f1(t, x, u, v) + z.h.at(it, j);
            r.r2.at(it, j) -= spec.f2(t, x, u, v);
        }
    }
    r.r1.name = "r1";
    r.r2.name = "r2";
    return r;
}

Residual linearize(const PipelineState& z, const CouplingSpec& spec, const Field& du,
                   const Field& dv, const Field& dh) {
    const Grid& g = z.u.grid;
    Residual r;
    r.r1 = box_fd4(du, z.nu1);
    r.r2 = box_fd4(dv, z.nu2);
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            const double u = z.u.at(it, j), v = z.v.at(it, j);
            r.r1.at(it, j) -= spec.df1_du(t, x, u, v) * du.at(it, j) +
                              spec.df1_dv(t, x, u, v) * dv.at(it, j) + dh.at(it, j);
            r.r2.at(it, j) -= spec.df2_du(t, x, u, v) * du.at(it, j) +
                              spec.df2_dv(t, x, u, v) * dv.at(it, j);
        }
    }
    return r;
}

Increment infinitesimal_inverse(const PipelineState& z, const CouplingSpec& spec,
                                const Field& r1, const Field& r2, const Hull& hull) {
    const Grid& g = z.u.grid;
    Increment inc;
    inc.du = Field(g, "du");
    inc.dv = Field(g, "dv");
    inc.dh = Field(g, "dh");
    // floor over the hull
    double dmax = 0.0;
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            if (!hull.contains(t, x)) continue;
            dmax = std::max(dmax,
                            std::abs(spec.df2_du(t, x, z.u.at(it, j), z.v.at(it, j))));
        }
    }
    const double floor = spec.floor * std::max(dmax, 1e-300);
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            if (!hull.contains(t, x)) continue;
            const double d = spec.df2_du(t, x, z.u.at(it, j), z.v.at(it, j));
            if (std::abs(d) < floor)
                throw FloorViolated("df2/du dipped below the floor on the hull");
            inc.du.at(it, j) = -r2.at(it, j) / d;
        }
    }
    // dh balances the first equation exactly at the stencil level
    inc.dh = box_fd4(inc.du, z.nu1);
    for (int it = 0; it < g.nt; ++it) {
        const double t = g.t(it);
        for (int j = 0; j < g.nx; ++j) {
            const double x = g.x(j);
            inc.dh.at(it, j) -= spec.df1_du(t, x, z.u.at(it, j), z.v.at(it, j)) *
                                    inc.du.at(it, j) +
                                r1.at(it, j);
        }
    }
    return inc;
}

ReduceResult reduce_to_one_control(PipelineState z, const CouplingSpec& spec,
                                   const Hull& hull, const ReduceOptions& opt) {
    CouplingSpec working = spec;
    working.floor = opt.floor_scale;
    ReduceResult res;
    Residual r = apply_D(z, working);
    double rn = std::max(r.inf1(), r.inf2());
    res.trace.residual_inf.push_back(rn);
    res.trace.damping.push_back(1.0);
    for (int it = 0; it < opt.max_iterations; ++it) {
        if (rn <= opt.tol) break;
        Field nr1 = r.r1, nr2 = r.r2;
        const Increment inc = infinitesimal_inverse(z, working, nr1, nr2, hull);
        double damping = 1.0;
        bool accepted = false;
        for (int half = 0; half < 8; ++half) {
            PipelineState trial = z;
            for (size_t i = 0; i < trial.u.v.size(); ++i) {
                trial.u.v[i] += damping * inc.du.v[i];
                trial.v.v[i] += damping * inc.dv.v[i];
                trial.h.v[i] += damping * inc.dh.v[i];
            }
            const Residual rt = apply_D(trial, working);
            const double rtn = std::max(rt.inf1(), rt.inf2());
            if (rtn < rn || rtn <= opt.tol) {
                z = std::move(trial);
                r = rt;
                rn = rtn;
                accepted = true;
                break;
            }
            damping *= 0.5;
        }
        res.trace.residual_inf.push_back(rn);
        res.trace.damping.push_back(damping);
        res.iterations = it + 1;
        if (!accepted)
            throw NewtonStalled("residual plateau in the damped Newton loop");
    }
    if (rn > opt.tol) throw NewtonStalled("Newton loop exhausted its iterations");
    res.final_residual = rn;
    res.z = std::move(z);
    return res;
}

}  // namespace wavecouple
