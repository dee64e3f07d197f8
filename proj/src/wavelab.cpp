#include "wavecouple/wavelab.hpp"

#include "wavecouple/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace wavecouple {

namespace {

// 6-point Lagrange interpolation on a uniform table
double interp6(const std::vector<double>& tab, double lo, double ds, double s, int deriv = 0) {
    const int n = static_cast<int>(tab.size());
    if (n == 1) return deriv == 0 ? tab[0] : 0.0;
    double u = (s - lo) / ds;
    int base = static_cast<int>(std::floor(u)) - 2;
    base = std::max(0, std::min(base, n - 6));
    std::vector<double> nodes(6);
    for (int i = 0; i < 6; ++i) nodes[i] = (base + i) * ds;
    const std::vector<double> w = fd_weights(s - lo, nodes, deriv);
    double r = 0.0;
    for (int i = 0; i < 6; ++i) r += w[i] * tab[base + i];
    return r;
}

// cumulative Simpson prefix integral of uniform samples
std::vector<double> prefix_integral(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<double> F(n, 0.0);
    for (int i = 1; i < n; ++i) {
        if (i >= 2) {
            F[i] = F[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        } else {
            // half panel by the 3-point rule
            F[i] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
        }
    }
    for (int i = 3; i < n; i += 2)
        F[i] = F[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1 < n ? i + 1 : i]);
    return F;
}

// second-derivative application along a row with 4th-order interior stencil
// and one-sided closures
struct RowDxx {
    int n = 0;
    double h = 1.0;
    std::vector<double> interior;
    std::vector<std::vector<double>> edge;
    RowDxx() = default;
    RowDxx(int n_, double h_) : n(n_), h(h_) {
        std::vector<double> off = {-2 * h, -h, 0, h, 2 * h};
        interior = fd_weights(0.0, off, 2);
        for (int r = 0; r < 2; ++r) {
            std::vector<double> nodes(6);
            for (int i = 0; i < 6; ++i) nodes[i] = (i - r) * h;
            edge.push_back(fd_weights(0.0, nodes, 2));
        }
    }
    void apply(const double* u, double* out) const {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            if (j >= 2 && j <= n - 3) {
                for (int o = -2; o <= 2; ++o) s += interior[o + 2] * u[j + o];
            } else if (j < 2) {
                for (int i = 0; i < 6; ++i) s += edge[j][i] * u[i];
            } else {
                for (int i = 0; i < 6; ++i) s += edge[n - 1 - j][i] * u[n - 1 - i];
            }
            out[j] = s;
        }
    }
};

struct RowSource {
    std::function<void(double t, const std::vector<double>& xs, const double* u,
                       const double* v, double* s1, double* s2)>
        eval;
};

RowSource coupling_source(const CouplingSpec& coupling,
                          std::function<double(double)> time_of) {
    if (coupling.kind == CouplingSpec::Kind::cubic_shifted && coupling.shift) {
        // cache the shift row once per time level
        return RowSource{[&coupling, time_of = std::move(time_of)](
                             double t, const std::vector<double>& xs, const double* u,
                             const double* v, double* s1, double* s2) {
            (void)v;
            const double tp = time_of ? time_of(t) : t;
            const auto rc = coupling.shift->row(tp);
            for (size_t j = 0; j < xs.size(); ++j) {
                const double ub = coupling.shift->ubar_on_row(rc, xs[j]);
                s1[j] = 0.0;
                s2[j] = u[j] * u[j] * u[j] + 3.0 * ub * u[j] * u[j] + 3.0 * ub * ub * u[j];
            }
        }};
    }
    return RowSource{[&coupling, time_of = std::move(time_of)](
                         double t, const std::vector<double>& xs, const double* u,
                         const double* v, double* s1, double* s2) {
        const double tp = time_of ? time_of(t) : t;
        for (size_t j = 0; j < xs.size(); ++j) {
            s1[j] = coupling.f1(tp, xs[j], u[j], v[j]);
            s2[j] = coupling.f2(tp, xs[j], u[j], v[j]);
        }
    }};
}

SystemSolution run_forward(double nu1, double nu2, const RowSource& source,
                           const CauchySlice& u0, const CauchySlice& v0, TraceFn u_left,
                           TraceFn u_right, TraceFn v_left, TraceFn v_right,
                           const Grid& grid, const SolveOptions& opt) {
    const int nx = grid.nx;
    if (static_cast<int>(u0.value.size()) != nx || static_cast<int>(v0.value.size()) != nx)
        throw OutOfDomain("initial slices must live on the grid x-nodes");
    const double numax = std::max(nu1, nu2);
    const double dt_out = grid.dt();
    const double dt_max = opt.cfl * grid.dx() / numax;
    const int ksub = std::max(opt.min_substeps,
                              static_cast<int>(std::ceil(dt_out / dt_max)));
    const double dt = dt_out / ksub;
    const int nsub = ksub * (grid.nt - 1);

    RowDxx dxx(nx, grid.dx());
    std::vector<double> xs(nx);
    for (int j = 0; j < nx; ++j) xs[j] = grid.x(j);

    SystemSolution out;
    out.substeps_per_output = ksub;
    out.u = Field(grid, "u");
    out.v = Field(grid, "v");

    auto bc = [&](std::vector<double>& row, const TraceFn& left, const TraceFn& right,
                  double t) {
        row[0] = left ? left(t) : 0.0;
        row[nx - 1] = right ? right(t) : 0.0;
    };

    std::vector<double> uP = u0.value, vP = v0.value;  // step n-1
    std::vector<double> uC(nx), vC(nx);                // step n
    std::vector<double> lu(nx), lv(nx), s1(nx), s2(nx), a1(nx), a2(nx), la1(nx), la2(nx);
    std::vector<double> s1p(nx, 0.0), s2p(nx, 0.0), s1pp(nx, 0.0), s2pp(nx, 0.0);

    // Taylor start: u1 = u0 + dt w + dt^2/2 A + dt^3/6 L w + dt^4/24 L A
    source.eval(0.0, xs, uP.data(), vP.data(), s1.data(), s2.data());
    dxx.apply(uP.data(), lu.data());
    dxx.apply(vP.data(), lv.data());
    for (int j = 0; j < nx; ++j) {
        a1[j] = nu1 * nu1 * lu[j] + s1[j];
        a2[j] = nu2 * nu2 * lv[j] + s2[j];
    }
    dxx.apply(u0.velocity.data(), la1.data());
    dxx.apply(v0.velocity.data(), la2.data());
    std::vector<double> lla1(nx), lla2(nx);
    dxx.apply(a1.data(), lla1.data());
    dxx.apply(a2.data(), lla2.data());
    for (int j = 0; j < nx; ++j) {
        uC[j] = uP[j] + dt * u0.velocity[j] + 0.5 * dt * dt * a1[j] +
                dt * dt * dt / 6.0 * nu1 * nu1 * la1[j] +
                dt * dt * dt * dt / 24.0 * nu1 * nu1 * lla1[j];
        vC[j] = vP[j] + dt * v0.velocity[j] + 0.5 * dt * dt * a2[j] +
                dt * dt * dt / 6.0 * nu2 * nu2 * la2[j] +
                dt * dt * dt * dt / 24.0 * nu2 * nu2 * lla2[j];
    }
    bc(uC, u_left, u_right, dt);
    bc(vC, v_left, v_right, dt);
    s1p = s1;
    s2p = s2;
    s1pp = s1;
    s2pp = s2;

    for (int j = 0; j < nx; ++j) {
        out.u.at(0, j) = uP[j];
        out.v.at(0, j) = vP[j];
    }

    // ring of trailing rows for the one-sided time derivative at T
    std::vector<std::vector<double>> tail_u, tail_v;
    const int tail_keep = 6;
    auto push_tail = [&](const std::vector<double>& u, const std::vector<double>& v) {
        tail_u.push_back(u);
        tail_v.push_back(v);
        if (static_cast<int>(tail_u.size()) > tail_keep) {
            tail_u.erase(tail_u.begin());
            tail_v.erase(tail_v.begin());
        }
    };
    push_tail(uP, vP);
    push_tail(uC, vC);

    std::vector<double> uN(nx), vN(nx);
    for (int n = 1; n < nsub; ++n) {
        const double t = n * dt;
        source.eval(t, xs, uC.data(), vC.data(), s1.data(), s2.data());
        dxx.apply(uC.data(), lu.data());
        dxx.apply(vC.data(), lv.data());
        for (int j = 0; j < nx; ++j) {
            a1[j] = nu1 * nu1 * lu[j] + s1[j];
            a2[j] = nu2 * nu2 * lv[j] + s2[j];
        }
        if (opt.scheme_order >= 4) {
            dxx.apply(a1.data(), la1.data());
            dxx.apply(a2.data(), la2.data());
            const double c = dt * dt * dt * dt / 12.0;
            const double idt2 = 1.0 / (dt * dt);
            for (int j = 0; j < nx; ++j) {
                const double stt1 = (s1[j] - 2.0 * s1p[j] + s1pp[j]) * idt2;
                const double stt2 = (s2[j] - 2.0 * s2p[j] + s2pp[j]) * idt2;
                uN[j] = 2.0 * uC[j] - uP[j] + dt * dt * a1[j] +
                        c * (nu1 * nu1 * la1[j] + stt1);
                vN[j] = 2.0 * vC[j] - vP[j] + dt * dt * a2[j] +
                        c * (nu2 * nu2 * la2[j] + stt2);
            }
        } else {
            for (int j = 0; j < nx; ++j) {
                uN[j] = 2.0 * uC[j] - uP[j] + dt * dt * a1[j];
                vN[j] = 2.0 * vC[j] - vP[j] + dt * dt * a2[j];
            }
        }
        bc(uN, u_left, u_right, t + dt);
        bc(vN, v_left, v_right, t + dt);
        std::swap(uP, uC);
        std::swap(uC, uN);
        std::swap(vP, vC);
        std::swap(vC, vN);
        std::swap(s1pp, s1p);
        std::swap(s1p, s1);
        std::swap(s2pp, s2p);
        std::swap(s2p, s2);
        push_tail(uC, vC);
        if ((n + 1) % ksub == 0) {
            const int row = (n + 1) / ksub;
            double mx = 0.0;
            for (int j = 0; j < nx; ++j) {
                out.u.at(row, j) = uC[j];
                out.v.at(row, j) = vC[j];
                mx = std::max(mx, std::abs(uC[j]) + std::abs(vC[j]));
            }
            if (mx > opt.blowup) throw BlowUp("field exceeded the small-data regime bound");
        }
    }

    out.u_final.position = grid.T;
    out.v_final.position = grid.T;
    out.u_final.value = uC;
    out.v_final.value = vC;
    out.u_final.velocity.assign(nx, 0.0);
    out.v_final.velocity.assign(nx, 0.0);
    const int m = static_cast<int>(tail_u.size());
    std::vector<double> nodes(m);
    for (int i = 0; i < m; ++i) nodes[i] = (i - (m - 1)) * dt;
    const std::vector<double> wd = fd_weights(0.0, nodes, 1);
    for (int j = 0; j < nx; ++j) {
        double su = 0.0, sv = 0.0;
        for (int i = 0; i < m; ++i) {
            su += wd[i] * tail_u[i][j];
            sv += wd[i] * tail_v[i][j];
        }
        out.u_final.velocity[j] = su;
        out.v_final.velocity[j] = sv;
    }
    return out;
}

}  // namespace

double BoundaryTrace::operator()(double t) const {
    if (value.empty()) return 0.0;
    return interp6(value, 0.0, dt(), std::clamp(t, 0.0, T));
}

SystemSolution solve_forward(double nu1, double nu2, const CouplingSpec& coupling,
                             const CauchySlice& u0, const CauchySlice& v0, TraceFn u_left,
                             TraceFn u_right, TraceFn v_left, TraceFn v_right,
                             const Grid& grid, const SolveOptions& opt) {
    return run_forward(nu1, nu2, coupling_source(coupling, {}), u0, v0, std::move(u_left),
                       std::move(u_right), std::move(v_left), std::move(v_right), grid, opt);
}

SystemSolution solve_backward(double nu1, double nu2, const CouplingSpec& coupling,
                              const CauchySlice& uT, const CauchySlice& vT, TraceFn u_left,
                              TraceFn u_right, TraceFn v_left, TraceFn v_right,
                              const Grid& grid, const SolveOptions& opt) {
    const double T = grid.T;
    CauchySlice u0 = uT, v0 = vT;
    for (double& w : u0.velocity) w = -w;
    for (double& w : v0.velocity) w = -w;
    auto rev = [T](TraceFn f) -> TraceFn {
        if (!f) return {};
        return [T, f = std::move(f)](double t) { return f(T - t); };
    };
    SystemSolution r = run_forward(
        nu1, nu2, coupling_source(coupling, [T](double t) { return T - t; }), u0, v0,
        rev(std::move(u_left)), rev(std::move(u_right)), rev(std::move(v_left)),
        rev(std::move(v_right)), grid, opt);
    // flip back to forward time
    SystemSolution out = r;
    for (int it = 0; it < grid.nt; ++it)
        for (int j = 0; j < grid.nx; ++j) {
            out.u.at(it, j) = r.u.at(grid.nt - 1 - it, j);
            out.v.at(it, j) = r.v.at(grid.nt - 1 - it, j);
        }
    // the reversed run's final slice is the t = 0 slice of the original
    out.u_final.position = 0.0;
    out.v_final.position = 0.0;
    for (double& w : out.u_final.velocity) w = -w;
    for (double& w : out.v_final.velocity) w = -w;
    return out;
}

namespace {

// C^k bridge across [s0, s1]: a flat-step blend of damped Taylor
// extensions from the two junctions. The damping keeps the bridge bounded
// even when the gap spans many data wavelengths, where a plain two-point
// Hermite polynomial would blow up.
void bridge_gap(std::vector<double>& tab, double lo, double ds, double s0, double s1, int k) {
    const int n = static_cast<int>(tab.size());
    const int i0 = static_cast<int>(std::floor((s0 - lo) / ds));
    const int i1 = static_cast<int>(std::ceil((s1 - lo) / ds));
    if (i0 < 8 || i1 > n - 9) throw TimeTooShort("bridge gap touches the table edge");
    const int m = k + 1;
    if (m > 7) throw OrderTooLow("bridge order exceeds the stencil width");
    std::vector<double> jl(m), jr(m);
    for (int d = 0; d < m; ++d) {
        std::vector<double> nodes(8), nodes2(8);
        for (int i = 0; i < 8; ++i) nodes[i] = -(7 - i) * ds;
        const std::vector<double> w = fd_weights(0.0, nodes, d);
        double sum = 0.0;
        for (int i = 0; i < 8; ++i) sum += w[i] * tab[i0 - 7 + i];
        jl[d] = sum;
        for (int i = 0; i < 8; ++i) nodes2[i] = i * ds;
        const std::vector<double> w2 = fd_weights(0.0, nodes2, d);
        double sum2 = 0.0;
        for (int i = 0; i < 8; ++i) sum2 += w2[i] * tab[i1 + i];
        jr[d] = sum2;
    }
    const double h = (i1 - i0) * ds;
    const double w0 = std::min(0.25 * h, 32.0 * ds);  // damping scale
    auto damped = [&](const std::vector<double>& jets, double xi) {
        double acc = jets[0], pw = 1.0, fact = 1.0;
        const double damp = std::exp(-(xi / w0) * (xi / w0));
        for (int d = 1; d < m; ++d) {
            pw *= xi;
            fact *= d;
            acc += jets[d] * pw / fact * damp;
        }
        return acc;
    };
    for (int idx = i0 + 1; idx < i1; ++idx) {
        const double s = lo + idx * ds;
        const double W = smooth_step((s - s0) / h);
        tab[idx] = (1.0 - W) * damped(jl, s - s0) + W * damped(jr, s - s1);
    }
}

DalembertControl build_dalembert(double nu, Side control_side, bool one_sided,
                                 const CauchySlice& initial, const CauchySlice& final_slice,
                                 double T, double ell, int k) {
    if (initial.value.size() < 8 || final_slice.value.size() != initial.value.size())
        throw OutOfDomain("dalembert slices need matching sizes >= 8");
    const double reach = nu * T;
    const double need = one_sided ? 2.0 * ell : ell;
    if (!(reach > need * (1.0 + 1e-9)))
        throw TimeTooShort("horizon too short for d'Alembert control");

    // mirror so the control sits on the right
    const bool mirrored = one_sided && control_side == Side::left;
    CauchySlice ini = initial, fin = final_slice;
    if (mirrored) {
        std::reverse(ini.value.begin(), ini.value.end());
        std::reverse(ini.velocity.begin(), ini.velocity.end());
        std::reverse(fin.value.begin(), fin.value.end());
        std::reverse(fin.velocity.begin(), fin.velocity.end());
    }

    DalembertControl dc;
    dc.nu = nu;
    dc.T = T;
    dc.ell = ell;
    dc.one_sided = one_sided;
    dc.control_side = control_side;
    const int nd = static_cast<int>(ini.value.size());
    const double dsd = ell / (nd - 1);
    const int refine = 4;
    dc.ds = dsd / refine;
    const double pad = 2.0 * ell + 8.0 * dc.ds;

    const std::vector<double> Y1 = prefix_integral(ini.velocity, dsd);
    const std::vector<double> Y1f = prefix_integral(fin.velocity, dsd);

    auto data_at = [&](const std::vector<double>& tab, double x) {
        return interp6(tab, 0.0, dsd, x);
    };

    // all region tests carry a half-node tolerance and clamp their data
    // argument, so every table node lands in exactly one filled branch
    const double htol = 0.5 * dc.ds;
    if (!one_sided) {
        dc.f_lo = -reach - pad;
        dc.g_lo = -pad;
        const int nF = static_cast<int>(std::round((ell + pad - dc.f_lo) / dc.ds)) + 1;
        const int nG = static_cast<int>(std::round((ell + reach + pad - dc.g_lo) / dc.ds)) + 1;
        dc.F.assign(nF, 0.0);
        dc.G.assign(nG, 0.0);
        for (int i = 0; i < nF; ++i) {
            const double s = dc.f_lo + i * dc.ds;
            if (s >= -htol) {
                const double x = std::clamp(s, 0.0, ell);
                dc.F[i] = 0.5 * (data_at(ini.value, x) - data_at(Y1, x) / nu);
            } else if (s <= ell - reach + htol) {
                const double x = std::clamp(s + reach, 0.0, ell);
                dc.F[i] = 0.5 * (data_at(fin.value, x) - data_at(Y1f, x) / nu);
            }
        }
        for (int i = 0; i < nG; ++i) {
            const double s = dc.g_lo + i * dc.ds;
            if (s <= ell + htol) {
                const double x = std::clamp(s, 0.0, ell);
                dc.G[i] = 0.5 * (data_at(ini.value, x) + data_at(Y1, x) / nu);
            } else if (s >= reach - htol) {
                const double x = std::clamp(s - reach, 0.0, ell);
                dc.G[i] = 0.5 * (data_at(fin.value, x) + data_at(Y1f, x) / nu);
            }
        }
        bridge_gap(dc.F, dc.f_lo, dc.ds, ell - reach, 0.0, k);
        bridge_gap(dc.G, dc.g_lo, dc.ds, ell, reach, k);
    } else {
        // control on the right; reflection F(-s) = -G(s) at the left edge
        dc.g_lo = -pad;
        const int nG = static_cast<int>(std::round((ell + reach + pad - dc.g_lo) / dc.ds)) + 1;
        dc.G.assign(nG, 0.0);
        for (int i = 0; i < nG; ++i) {
            const double s = dc.g_lo + i * dc.ds;
            if (s <= ell + htol) {
                const double x = std::clamp(s, 0.0, ell);
                dc.G[i] = 0.5 * (data_at(ini.value, x) + data_at(Y1, x) / nu);
            } else if (s >= reach - ell - htol && s <= reach + htol) {
                const double x = std::clamp(reach - s, 0.0, ell);
                dc.G[i] = 0.5 * (-data_at(fin.value, x) + data_at(Y1f, x) / nu);
            } else if (s > reach) {
                const double x = std::clamp(s - reach, 0.0, ell);
                dc.G[i] = 0.5 * (data_at(fin.value, x) + data_at(Y1f, x) / nu);
            }
        }
        bridge_gap(dc.G, dc.g_lo, dc.ds, ell, reach - ell, k);
        // F on [0, ell] from the initial data, consistent with the reflection
        dc.f_lo = -pad;
        const int nF = static_cast<int>(std::round((ell + pad - dc.f_lo) / dc.ds)) + 1;
        dc.F.assign(nF, 0.0);
        for (int i = 0; i < nF; ++i) {
            const double s = dc.f_lo + i * dc.ds;
            if (s >= -htol) {
                const double x = std::clamp(s, 0.0, ell);
                dc.F[i] = 0.5 * (data_at(ini.value, x) - data_at(Y1, x) / nu);
            }
        }
    }
    if (mirrored) {
        // evaluation mirrors back through eval(); mark by flipping the side
        dc.control_side = Side::left;
    }
    return dc;
}

}  // namespace

double DalembertControl::eval(double t, double x) const {
    double xx = x;
    if (one_sided && control_side == Side::left) xx = ell - x;
    const double sF = xx - nu * t, sG = xx + nu * t;
    double f;
    if (one_sided && sF < 0.0) {
        f = -interp6(G, g_lo, ds, -sF);
    } else {
        f = interp6(F, f_lo, ds, sF);
    }
    return f + interp6(G, g_lo, ds, sG);
}

double DalembertControl::eval_dt(double t, double x) const {
    double xx = x;
    if (one_sided && control_side == Side::left) xx = ell - x;
    const double sF = xx - nu * t, sG = xx + nu * t;
    double fp;
    if (one_sided && sF < 0.0) {
        fp = interp6(G, g_lo, ds, -sF, 1);
    } else {
        fp = interp6(F, f_lo, ds, sF, 1);
    }
    return nu * (interp6(G, g_lo, ds, sG, 1) - fp);
}

BoundaryTrace DalembertControl::trace(Side side, int samples) const {
    BoundaryTrace tr;
    tr.side = side;
    tr.T = T;
    tr.value.resize(samples);
    const double x = side == Side::left ? 0.0 : ell;
    for (int i = 0; i < samples; ++i) tr.value[i] = eval(T * i / (samples - 1.0), x);
    return tr;
}

DalembertControl dalembert_two_sided(double nu, const CauchySlice& initial,
                                     const CauchySlice& final_slice, double T, double ell,
                                     int k) {
    return build_dalembert(nu, Side::right, false, initial, final_slice, T, ell, k);
}

DalembertControl dalembert_one_sided(double nu, Side control_side,
                                     const CauchySlice& initial,
                                     const CauchySlice& final_slice, double T, double ell,
                                     int k) {
    return build_dalembert(nu, control_side, true, initial, final_slice, T, ell, k);
}

ControlledStrip semilinear_boundary_control(const StripProblem& prob, const Grid& strip_grid,
                                            const SolveOptions& opt) {
    const int nx = strip_grid.nx, nt = strip_grid.nt;
    const double T = strip_grid.T, ell = strip_grid.L;
    const bool two_sided = prob.left_controlled && prob.right_controlled;
    const double reach = std::min(prob.nu1, prob.nu2) * T;
    if (!(reach > (two_sided ? ell : 2.0 * ell) * (1.0 + 1e-9)))
        throw TimeTooShort("strip horizon below the d'Alembert threshold");

    ControlledStrip res;
    Field wu(strip_grid, "u"), wv(strip_grid, "v");
    for (int it = 0; it < nt; ++it) {
        const double a = strip_grid.t(it) / T;
        for (int j = 0; j < nx; ++j) {
            wu.at(it, j) = (1 - a) * prob.u0.value[j] + a * prob.uT.value[j];
            wv.at(it, j) = (1 - a) * prob.v0.value[j] + a * prob.vT.value[j];
        }
    }

    const Side ctrl = prob.left_controlled ? Side::left : Side::right;
    double prev_diff = 0.0;
    for (int m = 0; m < prob.max_iterations; ++m) {
        // frozen source from the previous iterate
        RowSource src{[&](double t, const std::vector<double>& xs, const double*,
                          const double*, double* s1, double* s2) {
            const double frac = std::clamp(t / T, 0.0, 1.0) * (nt - 1);
            int i0 = std::clamp(static_cast<int>(std::floor(frac)) - 2, 0, nt - 6);
            std::vector<double> nodes(6);
            for (int i = 0; i < 6; ++i) nodes[i] = (i0 + i) * strip_grid.dt();
            const std::vector<double> w = fd_weights(t, nodes, 0);
            const double tg = prob.t0_global + t;
            const bool shifted =
                prob.coupling.kind == CouplingSpec::Kind::cubic_shifted && prob.coupling.shift;
            ReturnTrajectory::RowCache rc;
            if (shifted) rc = prob.coupling.shift->row(tg);
            for (size_t j = 0; j < xs.size(); ++j) {
                double uu = 0.0, vv = 0.0;
                for (int i = 0; i < 6; ++i) {
                    uu += w[i] * wu.at(i0 + i, static_cast<int>(j));
                    vv += w[i] * wv.at(i0 + i, static_cast<int>(j));
                }
                const double xg = prob.x0_global + xs[j];
                if (shifted) {
                    const double ub = prob.coupling.shift->ubar_on_row(rc, xg);
                    s1[j] = 0.0;
                    s2[j] = uu * uu * uu + 3.0 * ub * uu * uu + 3.0 * ub * ub * uu;
                } else {
                    s1[j] = prob.coupling.f1(tg, xg, uu, vv);
                    s2[j] = prob.coupling.f2(tg, xg, uu, vv);
                }
            }
        }};
        CauchySlice zero_u, zero_v;
        zero_u.value.assign(nx, 0.0);
        zero_u.velocity.assign(nx, 0.0);
        zero_v = zero_u;
        SystemSolution part = run_forward(prob.nu1, prob.nu2, src, zero_u, zero_v, {}, {},
                                          {}, {}, strip_grid, opt);
        // homogeneous controlled parts reach (data - particular) at T
        CauchySlice tu = prob.uT, tv = prob.vT;
        for (int j = 0; j < nx; ++j) {
            tu.value[j] -= part.u_final.value[j];
            tu.velocity[j] -= part.u_final.velocity[j];
            tv.value[j] -= part.v_final.value[j];
            tv.velocity[j] -= part.v_final.velocity[j];
        }
        DalembertControl hu =
            two_sided ? dalembert_two_sided(prob.nu1, prob.u0, tu, T, ell, prob.k)
                      : dalembert_one_sided(prob.nu1, ctrl, prob.u0, tu, T, ell, prob.k);
        DalembertControl hv =
            two_sided ? dalembert_two_sided(prob.nu2, prob.v0, tv, T, ell, prob.k)
                      : dalembert_one_sided(prob.nu2, ctrl, prob.v0, tv, T, ell, prob.k);

        double diff = 0.0;
        for (int it = 0; it < nt; ++it) {
            const double t = strip_grid.t(it);
            for (int j = 0; j < nx; ++j) {
                const double x = strip_grid.x(j);
                const double nu_ = part.u.at(it, j) + hu.eval(t, x);
                const double nv_ = part.v.at(it, j) + hv.eval(t, x);
                diff = std::max(diff, std::abs(nu_ - wu.at(it, j)));
                diff = std::max(diff, std::abs(nv_ - wv.at(it, j)));
                wu.at(it, j) = nu_;
                wv.at(it, j) = nv_;
            }
        }
        res.iterations = m + 1;
        if (m > 0 && prev_diff > 0.0) res.contraction = std::max(res.contraction, diff / prev_diff);
        if (diff < prob.tol) {
            res.u = wu;
            res.v = wv;
            // the particular part carries zero Dirichlet values, so the
            // strip's edge values are exactly the d'Alembert traces
            res.u_left = hu.trace(Side::left, 4 * nt);
            res.u_right = hu.trace(Side::right, 4 * nt);
            res.v_left = hv.trace(Side::left, 4 * nt);
            res.v_right = hv.trace(Side::right, 4 * nt);
            return res;
        }
        if (m > 2 && diff > prev_diff * 1.5)
            throw PicardDiverged("strip iteration is growing; data too large");
        prev_diff = diff;
    }
    throw PicardDiverged("strip iteration failed to settle");
}

Field sidewise_solve(double nu, const CauchySlice& x_slice, int direction, const Grid& grid,
                     const std::function<double(double)>& row0,
                     const std::function<double(double)>& rowT) {
    const int nt = grid.nt, nx = grid.nx;
    if (!(nu * grid.dt() / grid.dx() >= 1.0 / 0.95))
        throw CflViolation("sidewise marching needs nu dt/dx >= 1/0.95");
    if (static_cast<int>(x_slice.value.size()) != nt)
        throw OutOfDomain("sidewise slice must live on the grid t-nodes");
    const int j0 = static_cast<int>(std::round(x_slice.position / grid.dx()));
    Field out(grid, "sidewise");
    std::vector<double> colP = x_slice.value, colC(nt), colN(nt);
    const double h = grid.dx() * direction;
    // first marched column by Taylor in x
    for (int it = 0; it < nt; ++it) {
        double utt = 0.0;
        if (it >= 1 && it <= nt - 2)
            utt = (x_slice.value[it + 1] - 2 * x_slice.value[it] + x_slice.value[it - 1]) /
                  (grid.dt() * grid.dt());
        colC[it] = x_slice.value[it] + h * x_slice.velocity[it] +
                   0.5 * h * h * utt / (nu * nu);
    }
    colC[0] = row0 ? row0(grid.x(j0) + h) : 0.0;
    colC[nt - 1] = rowT ? rowT(grid.x(j0) + h) : 0.0;
    for (int it = 0; it < nt; ++it) out.at(it, j0) = colP[it];
    int j = j0 + direction;
    if (j >= 0 && j < nx)
        for (int it = 0; it < nt; ++it) out.at(it, j) = colC[it];
    while (true) {
        const int jn = j + direction;
        if (jn < 0 || jn >= nx) break;
        for (int it = 1; it < nt - 1; ++it) {
            const double utt =
                (colC[it + 1] - 2 * colC[it] + colC[it - 1]) / (grid.dt() * grid.dt());
            colN[it] = 2 * colC[it] - colP[it] + h * h * utt / (nu * nu);
        }
        colN[0] = row0 ? row0(grid.x(jn)) : 0.0;
        colN[nt - 1] = rowT ? rowT(grid.x(jn)) : 0.0;
        for (int it = 0; it < nt; ++it) out.at(it, jn) = colN[it];
        std::swap(colP, colC);
        std::swap(colC, colN);
        j = jn;
    }
    return out;
}

double characteristic_flux_check(const Field& u, const Field& h, double nu1,
                                 const SpatialFn& u0, const SpatialFn& u1, int samples) {
    const Grid& g = u.grid;
    const Field ut = [&] {
        Field f(g, "ut");
        // 4th-order first derivative in t
        for (int it = 0; it < g.nt; ++it)
            for (int j = 0; j < g.nx; ++j) {
                int base = std::clamp(it - 2, 0, g.nt - 5);
                std::vector<double> nodes(5);
                for (int i = 0; i < 5; ++i) nodes[i] = (base + i - it) * g.dt();
                const std::vector<double> w = fd_weights(0.0, nodes, 1);
                double s = 0.0;
                for (int i = 0; i < 5; ++i) s += w[i] * u.at(base + i, j);
                f.at(it, j) = s;
            }
        return f;
    }();
    const Field ux = [&] {
        Field f(g, "ux");
        for (int it = 0; it < g.nt; ++it)
            for (int j = 0; j < g.nx; ++j) {
                int base = std::clamp(j - 2, 0, g.nx - 5);
                std::vector<double> nodes(5);
                for (int i = 0; i < 5; ++i) nodes[i] = (base + i - j) * g.dx();
                const std::vector<double> w = fd_weights(0.0, nodes, 1);
                double s = 0.0;
                for (int i = 0; i < 5; ++i) s += w[i] * u.at(it, base + i);
                f.at(it, j) = s;
            }
        return f;
    }();
    auto sample_field = [&](const Field& f, double t, double x) {
        const double ft = t / g.dt(), fx = x / g.dx();
        const int it = std::clamp(static_cast<int>(ft), 0, g.nt - 2);
        const int ix = std::clamp(static_cast<int>(fx), 0, g.nx - 2);
        const double at = ft - it, ax = fx - ix;
        return (1 - at) * ((1 - ax) * f.at(it, ix) + ax * f.at(it, ix + 1)) +
               at * ((1 - ax) * f.at(it + 1, ix) + ax * f.at(it + 1, ix + 1));
    };
    double worst = 0.0;
    int used = 0;
    for (int s = 0; s < samples; ++s) {
        const double t = g.T * (0.25 + 0.5 * s / (samples - 1.0));
        const double x_launch = g.L * (0.15 + 0.7 * ((s * 29) % samples) / samples);
        const double x_end = x_launch - nu1 * t;
        if (x_end < 0.0 || x_end > g.L) continue;
        // trapezoid along the characteristic s -> x_launch - nu1 (t - s)... the
        // segment runs from (0, x_launch) to (t, x_launch - nu1 t)
        const int nq = 400;
        double integral = 0.0;
        for (int i = 0; i <= nq; ++i) {
            const double ts = t * i / nq;
            const double xs = x_launch - nu1 * ts;
            const double w = (i == 0 || i == nq) ? 0.5 : 1.0;
            integral += w * sample_field(h, ts, xs);
        }
        integral *= t / nq;
        const double lhs = integral;
        const double rhs = sample_field(ut, t, x_end) + nu1 * sample_field(ux, t, x_end) -
                           u1(x_launch) - nu1 * u0.jet(x_launch, 1).derivative(1);
        worst = std::max(worst, std::abs(lhs - rhs));
        ++used;
    }
    if (used == 0) throw CharacteristicExitsDomain("no sampled characteristic stays inside");
    return worst;
}

double leapfrog_energy_drift(double nu, const CauchySlice& u0, const Grid& grid, double cfl) {
    const int nx = grid.nx;
    const double dx = grid.dx();
    const double dt = cfl * dx / nu;
    const int steps = static_cast<int>(grid.T / dt);
    std::vector<double> up = u0.value, uc(nx), un(nx);
    for (int j = 1; j < nx - 1; ++j) {
        const double lap = (u0.value[j + 1] - 2 * u0.value[j] + u0.value[j - 1]) / (dx * dx);
        uc[j] = u0.value[j] + dt * u0.velocity[j] + 0.5 * dt * dt * nu * nu * lap;
    }
    uc[0] = uc[nx - 1] = 0.0;
    auto energy = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double e = 0.0;
        for (int j = 0; j < nx - 1; ++j) {
            const double vt = (b[j] - a[j]) / dt;
            const double gx1 = (a[j + 1] - a[j]) / dx;
            const double gx2 = (b[j + 1] - b[j]) / dx;
            e += 0.5 * vt * vt + 0.5 * nu * nu * gx1 * gx2;
        }
        return e * dx;
    };
    const double e0 = energy(up, uc);
    double drift = 0.0;
    for (int n = 1; n < steps; ++n) {
        for (int j = 1; j < nx - 1; ++j) {
            const double lap = (uc[j + 1] - 2 * uc[j] + uc[j - 1]) / (dx * dx);
            un[j] = 2 * uc[j] - up[j] + dt * dt * nu * nu * lap;
        }
        un[0] = un[nx - 1] = 0.0;
        std::swap(up, uc);
        std::swap(uc, un);
        drift = std::max(drift, std::abs(energy(up, uc) - e0) / std::abs(e0));
    }
    return drift;
}

}  // namespace wavecouple
