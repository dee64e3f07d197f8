#include "wavecouple/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace wavecouple {

ReturnTrajectory::ReturnTrajectory(std::vector<Elementary> parts)
    : parts_(std::move(parts)) {
    if (parts_.empty()) throw OutOfDomain("superposition needs at least one part");
    std::sort(parts_.begin(), parts_.end(), [](const Elementary& a, const Elementary& b) {
        return a.params().x0 < b.params().x0;
    });
    for (size_t i = 0; i + 1 < parts_.size(); ++i) {
        const double hi = parts_[i].params().x0 + parts_[i].support_halfwidth_max();
        const double lo = parts_[i + 1].params().x0 - parts_[i + 1].support_halfwidth_max();
        if (hi > lo + 1e-12 * (1.0 + std::abs(hi)))
            throw OverlappingSupports("elementary supports overlap");
    }
}

int ReturnTrajectory::part_index(double x) const {
    for (size_t i = 0; i < parts_.size(); ++i) {
        const double c = parts_[i].params().x0;
        if (std::abs(x - c) < parts_[i].support_halfwidth_max()) return static_cast<int>(i);
    }
    return -1;
}

double ReturnTrajectory::ubar(double t, double x) const {
    const int i = part_index(x);
    return i < 0 ? 0.0 : kappa_ * parts_[i].ubar(t, x);
}
double ReturnTrajectory::vbar(double t, double x) const {
    const int i = part_index(x);
    return i < 0 ? 0.0 : kappa_ * kappa_ * kappa_ * parts_[i].vbar(t, x);
}
double ReturnTrajectory::V(double t, double x) const {
    const int i = part_index(x);
    return i < 0 ? 0.0 : kappa_ * kappa_ * kappa_ * parts_[i].V(t, x);
}

double ReturnTrajectory::normalizing_scale(const Grid& grid) const {
    double sup = 0.0;
    for (int it = 0; it < grid.nt; ++it) {
        const RowCache rc = row(grid.t(it));
        for (int ix = 0; ix < grid.nx; ++ix) {
            const int i = part_index(grid.x(ix));
            if (i >= 0)
                sup = std::max(sup, std::abs(std::cbrt(parts_[i].V_on_row(rc.rows[i], grid.x(ix)))));
        }
    }
    if (sup == 0.0) return 1.0;
    double kappa = 1.0;
    while (kappa * sup > 1.0) kappa *= 0.5;
    while (kappa * sup <= 0.5) kappa *= 2.0;
    return kappa;
}

SupportBox ReturnTrajectory::support() const {
    SupportBox b;
    b.t0 = 0.0;
    b.t1 = parts_.front().T();
    b.x0 = parts_.front().params().x0 - parts_.front().support_halfwidth_max();
    b.x1 = parts_.back().params().x0 + parts_.back().support_halfwidth_max();
    return b;
}

ReturnTrajectory::RowCache ReturnTrajectory::row(double t) const {
    RowCache rc;
    rc.t = t;
    rc.rows.reserve(parts_.size());
    for (const auto& p : parts_) rc.rows.push_back(p.row(t));
    return rc;
}

double ReturnTrajectory::ubar_on_row(const RowCache& rc, double x) const {
    const int i = part_index(x);
    return i < 0 ? 0.0 : kappa_ * std::cbrt(parts_[i].V_on_row(rc.rows[i], x));
}
double ReturnTrajectory::vbar_on_row(const RowCache& rc, double x) const {
    const int i = part_index(x);
    return i < 0 ? 0.0 : kappa_ * kappa_ * kappa_ * parts_[i].vbar_on_row(rc.rows[i], x);
}

TrajectoryTriple ReturnTrajectory::sample(const Grid& grid, double nu1) const {
    TrajectoryTriple tr;
    tr.kind = TrajectoryKind::ret;
    tr.box = support();
    tr.u = Field(grid, "ubar");
    tr.v = Field(grid, "vbar");
    tr.u.analytic = tr.v.analytic = true;
    for (int it = 0; it < grid.nt; ++it) {
        const RowCache rc = row(grid.t(it));
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x(ix);
            tr.u.at(it, ix) = ubar_on_row(rc, x);
            tr.v.at(it, ix) = vbar_on_row(rc, x);
        }
    }
    tr.h = box_fd4(tr.u, nu1);
    tr.h.name = "hbar";
    tr.h.analytic = false;
    for (int it = 0; it < grid.nt; ++it)
        for (int ix = 0; ix < grid.nx; ++ix)
            if (!tr.box.contains(grid.t(it), grid.x(ix))) tr.h.at(it, ix) = 0.0;
    return tr;
}

TrajectoryTriple scale_triple(const TrajectoryTriple& triple, double kappa) {
    TrajectoryTriple r = triple;
    const double k3 = kappa * kappa * kappa;
    for (double& x : r.u.v) x *= kappa;
    for (double& x : r.v.v) x *= k3;
    for (double& x : r.h.v) x *= kappa;
    return r;
}

double pde_residual_inf(const ReturnTrajectory& traj, const Grid& grid, double /*nu2*/) {
    double worst = 0.0;
    for (int it = 0; it < grid.nt; ++it) {
        const auto rc = traj.row(grid.t(it));
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double u = traj.ubar_on_row(rc, grid.x(ix));
            const double k3 = traj.scale() * traj.scale() * traj.scale();
            double V = 0.0;
            for (size_t k = 0; k < traj.parts().size(); ++k) {
                const auto& p = traj.parts()[k];
                if (std::abs(grid.x(ix) - p.params().x0) < p.support_halfwidth_max())
                    V += k3 * p.V_on_row(rc.rows[k], grid.x(ix));
            }
            worst = std::max(worst, std::abs(V - u * u * u));
        }
    }
    return worst;
}

double endpoint_flatness(const ReturnTrajectory& traj, const Grid& grid) {
    double worst = 0.0;
    const double T = traj.parts().front().T();
    for (double t : {0.0, T}) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x(ix);
            worst = std::max(worst, std::abs(traj.vbar(t, x)));
            worst = std::max(worst, std::abs(traj.ubar(t, x)));
            for (const auto& p : traj.parts()) {
                const Jet vt = p.vbar_tjet(t, x, 1);
                worst = std::max(worst, std::abs(vt.derivative(1)));
            }
        }
    }
    return worst;
}

namespace {

// box_{nu} of pointwise-evaluated ubar on a small uniform patch with spacing
// ht x hx; returns values on the interior probe lattice
std::vector<double> local_box(const Elementary& e, double t0, double x0c, double ht,
                              double hx, int nt, int nx, double nu) {
    std::vector<double> u(static_cast<size_t>(nt + 8) * (nx + 8));
    auto U = [&](int it, int ix) -> double& {
        return u[static_cast<size_t>(it) * (nx + 8) + ix];
    };
    for (int it = 0; it < nt + 8; ++it) {
        const auto row = e.row(t0 + (it - 4) * ht);
        for (int ix = 0; ix < nx + 8; ++ix)
            U(it, ix) = std::cbrt(e.V_on_row(row, x0c + (ix - 4) * hx));
    }
    std::vector<double> out(static_cast<size_t>(nt) * nx);
    const double wt[5] = {-1, 16, -30, 16, -1};
    for (int it = 0; it < nt; ++it)
        for (int ix = 0; ix < nx; ++ix) {
            double dtt = 0.0, dxx = 0.0;
            for (int o = -2; o <= 2; ++o) {
                dtt += wt[o + 2] * U(it + 4 + o, ix + 4);
                dxx += wt[o + 2] * U(it + 4, ix + 4 + o);
            }
            out[static_cast<size_t>(it) * nx + ix] =
                dtt / (12 * ht * ht) - nu * nu * dxx / (12 * hx * hx);
        }
    return out;
}

}  // namespace

RefinementReport hbar_refinement_study(const Elementary& e, double h0, int nt_probe,
                                       int nx_probe) {
    // probed on the smooth bulk left of the contact window; the contact line
    // itself is covered by the pointwise derivative probes, where the cube
    // root of the floating-point floor of V would otherwise pollute the norms
    const double T = e.T();
    const double t0 = 0.45 * T;
    const double xc = e.params().x0 - 0.40 * e.support_halfwidth_max();
    const double ht0 = h0, hx0 = h0;
    // levels h, h/2, h/4 share the level-0 lattice points
    std::vector<std::vector<double>> lv;
    for (int k = 0; k < 3; ++k) {
        const int s = 1 << k;
        std::vector<double> full = local_box(e, t0, xc, ht0 / s, hx0 / s,
                                             (nt_probe - 1) * s + 1, (nx_probe - 1) * s + 1,
                                             e.params().nu2);
        std::vector<double> sub(static_cast<size_t>(nt_probe) * nx_probe);
        for (int it = 0; it < nt_probe; ++it)
            for (int ix = 0; ix < nx_probe; ++ix)
                sub[static_cast<size_t>(it) * nx_probe + ix] =
                    full[(static_cast<size_t>(it) * s) * ((nx_probe - 1) * s + 1) + ix * s];
        lv.push_back(std::move(sub));
    }
    RefinementReport rep;
    double n12 = 0.0, n23 = 0.0;
    for (size_t i = 0; i < lv[0].size(); ++i) {
        n12 += (lv[0][i] - lv[1][i]) * (lv[0][i] - lv[1][i]);
        n23 += (lv[1][i] - lv[2][i]) * (lv[1][i] - lv[2][i]);
    }
    rep.d12 = std::sqrt(n12 / lv[0].size());
    rep.d23 = std::sqrt(n23 / lv[0].size());
    rep.order = std::log2(rep.d12 / std::max(rep.d23, 1e-300));
    return rep;
}

double ubar_derivative_boundedness(const Elementary& e, double h0) {
    const double T = e.T();
    double worst = 0.0;
    for (double frac : {0.3, 0.5, 0.7}) {
        const double t = frac * T;
        const double lam = e.support_halfwidth(t);
        const double x0 = e.params().x0;
        const double probes[3] = {x0 + 0.75 * lam, x0 + lam, x0};
        // the center line rides on a large smooth offset; FD needs a wider
        // step there to stay above the cancellation floor
        const double steps[3] = {h0, h0, 30.0 * h0};
        for (int pi = 0; pi < 3; ++pi) {
            const double xp = probes[pi];
            for (int n = 1; n <= 3; ++n) {
                double prev = 0.0;
                for (int k = 0; k < 3; ++k) {
                    const double h = steps[pi] / (1 << k);
                    auto f = [&](double x) { return e.ubar(t, x); };
                    double est = 0.0;
                    // center-free stencils: at the contact line the cube root
                    // of the floating-point floor of V spikes at the center
                    if (n == 1) est = (f(xp + h) - f(xp - h)) / (2 * h);
                    if (n == 2)
                        est = (f(xp + 2 * h) + f(xp - 2 * h) - f(xp + h) - f(xp - h)) /
                              (3 * h * h);
                    if (n == 3)
                        est = (f(xp + 2 * h) - 2 * f(xp + h) + 2 * f(xp - h) - f(xp - 2 * h)) /
                              (2 * h * h * h);
                    if (k == 2) {
                        const double scale = std::max(std::abs(prev), std::abs(est));
                        if (scale > 1e-6 * std::pow(1.0 / lam, n))
                            worst = std::max(worst, std::abs(est / prev - 1.0));
                    }
                    prev = est;
                }
            }
        }
    }
    return worst;
}

}  // namespace wavecouple
