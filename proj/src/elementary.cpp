#include "wavecouple/elementary.hpp"

#include <cmath>

#include "wavecouple/errors.hpp"

namespace wavecouple {

Elementary::Elementary(const ElementaryParams& params)
    : p_(params), prof_(params.profiles) {
    if (!prof_) throw OutOfDomain("elementary trajectory needs built profiles");
}

double Elementary::support_halfwidth(double t) const {
    const Jet l0 = prof_->temporal.lam0_jet(t, 0);
    return p_.nu2 * epsilon() * l0.value();
}

double Elementary::zcoord(double x, double lam) const {
    return std::abs(x - p_.x0) / (p_.nu2 * lam);
}

Elementary::Row Elementary::row(double t) const {
    Row r;
    r.t = t;
    const double T = prof_->temporal.T();
    if (t <= 0.0 || t >= T) return r;
    const TemporalJets j = prof_->temporal.eval(t);
    r.zero = false;
    r.lam = j.lam.value();
    r.lamd = j.lam.derivative(1);
    r.lamdd = j.lam.derivative(2);
    const Jet* f[4] = {&j.f0, &j.f1, &j.f2, &j.f3};
    for (int i = 0; i < 4; ++i) {
        r.f[i] = f[i]->value();
        r.fd[i] = f[i]->derivative(1);
        r.fdd[i] = f[i]->derivative(2);
    }
    return r;
}

double Elementary::vbar_on_row(const Row& r, double x) const {
    if (r.zero) return 0.0;
    const double z = zcoord(x, r.lam);
    if (z >= 1.0) return 0.0;
    double s = r.f[0] * prof_->stationary.g(z);
    for (int i = 1; i <= 3; ++i) s += r.f[i] * prof_->bumps.g(i, z);
    return s;
}

double Elementary::V_on_row(const Row& r, double x) const {
    if (r.zero) return 0.0;
    const double z = zcoord(x, r.lam);
    if (z >= 1.0) return 0.0;
    const double lam = r.lam, ld = r.lamd, ldd = r.lamdd;
    const double a = lam * ldd - 2.0 * ld * ld;
    const double b = 1.0 - z * z * ld * ld;
    const auto& st = prof_->stationary;
    double lam2V = -b * r.f[0] * st.G(z) + lam * lam * r.fdd[0] * st.g(z) -
                   2.0 * z * ld * lam * r.fd[0] * st.gp(z) - z * a * r.f[0] * st.gp(z);
    for (int i = 1; i <= 3; ++i) {
        const Jet gj = prof_->bumps.g_jet(i, z, 2);
        const double g = gj.coeff(0), gp = gj.derivative(1), gpp = gj.derivative(2);
        lam2V += lam * lam * r.fdd[i] * g - 2.0 * z * ld * lam * r.fd[i] * gp -
                 r.f[i] * (z * a * gp + b * gpp);
    }
    return lam2V / (lam * lam);
}

double Elementary::vbar(double t, double x) const { return vbar_on_row(row(t), x); }
double Elementary::V(double t, double x) const { return V_on_row(row(t), x); }

double Elementary::ubar(double t, double x) const { return std::cbrt(V(t, x)); }

Jet Elementary::lamV_zjet(double t, double z, int order) const {
    const Row r = row(t);
    if (r.zero) return Jet(order);
    const double lam = r.lam, ld = r.lamd, ldd = r.lamdd;
    const double a = lam * ldd - 2.0 * ld * ld;
    const Jet zj = Jet::variable(z, order);
    const Jet b = 1.0 - zj * zj * (ld * ld);
    const Jet g0 = prof_->stationary.g_jet(z, order + 2);
    const Jet g0p = g0.d();
    const Jet G = g0p.d();
    Jet lam2V = -b * r.f[0] * G + (lam * lam * r.fdd[0]) * g0.truncated(order) -
                (2.0 * ld * lam * r.fd[0]) * (zj * g0p) - (a * r.f[0]) * (zj * g0p);
    for (int i = 1; i <= 3; ++i) {
        const Jet gi = prof_->bumps.g_jet(i, z, order + 2);
        const Jet gip = gi.d();
        const Jet gipp = gip.d();
        lam2V = lam2V + (lam * lam * r.fdd[i]) * gi.truncated(order) -
                (2.0 * ld * lam * r.fd[i]) * (zj * gip) -
                r.f[i] * ((a * zj) * gip + b * gipp);
    }
    return lam2V;
}

double Elementary::certificate_ratio(double t, double z) const {
    const auto& tp = prof_->temporal;
    const TemporalRatios rj = tp.ratios(t);
    const double lam = rj.lam.value(), ld = rj.lam.derivative(1), ldd = rj.lam.derivative(2);
    const double F1 = rj.F1.value(), F2 = rj.F2.value();
    const double b = 1.0 - z * z * ld * ld;
    const Jet Gj = prof_->stationary.G_jet(z, 3);
    const double Gp = Gj.derivative(1), Gpp = Gj.derivative(2), G3 = Gj.derivative(3);
    double ratio = -b * G3;
    // R0/f0
    ratio += z * (8.0 * ld * ld - lam * ldd) * Gpp - 2.0 * z * ld * lam * F1 * Gpp +
             (12.0 * ld * ld - 3.0 * lam * ldd) * Gp - 6.0 * ld * lam * F1 * Gp +
             lam * lam * F2 * Gp;
    // R/f0
    const Jet* phis[3] = {&rj.phi1, &rj.phi2, &rj.phi3};
    for (int i = 1; i <= 3; ++i) {
        const Jet& ph = *phis[i - 1];
        const double p0 = ph.value();
        const double p1 = ph.derivative(1) + p0 * F1;
        const double p2 = ph.derivative(2) + 2.0 * ph.derivative(1) * F1 + p0 * F2;
        const Jet gi = prof_->bumps.g_jet(i, z, 5);
        const double g3 = gi.derivative(3), g4 = gi.derivative(4), g5 = gi.derivative(5);
        ratio += lam * lam * p2 * g3 - 2.0 * p1 * ld * lam * (3.0 * g3 + z * g4) -
                 p0 * ((3.0 * ldd * lam - 12.0 * ld * ld) * g3 +
                       z * (lam * ldd - 8.0 * ld * ld) * g4 + b * g5);
    }
    return ratio;
}

Jet Elementary::vbar_tjet(double t, double x, int order) const {
    const auto& tp = prof_->temporal;
    const double T = tp.T();
    if (t <= 0.0 || t >= T) return Jet(order);
    const TemporalJets j = tp.eval(t);
    const double lam_v = j.lam.value();
    const double dx = std::abs(x - p_.x0) / p_.nu2;
    const Jet zj = dx * jet_recip(j.lam);
    if (zj.value() >= 1.0) return Jet(order);
    const Jet* f[4] = {&j.f0, &j.f1, &j.f2, &j.f3};
    Jet s(order);
    const double z0 = dx / lam_v;
    for (int i = 0; i < 4; ++i) {
        const Jet gi = (i == 0) ? prof_->stationary.g_jet(z0, order)
                                : prof_->bumps.g_jet(i, z0, order);
        s = s + f[i]->truncated(order) * jet_compose(gi, zj.truncated(order));
    }
    return s;
}

CertificateReport vzzz_certificate(const Elementary& e, int nt, int nz) {
    const auto& prof = *e.params().profiles;
    const double T = prof.temporal.T();
    const double w = 0.5 * prof.params.delta_double_prime;
    CertificateReport rep;
    rep.sup_ratio = -1e300;
    for (int i = 1; i < nt; ++i) {
        const double t = T * i / nt;
        for (int k = 0; k <= nz; ++k) {
            const double z = 0.75 - w + 2.0 * w * k / nz;
            const double r = e.certificate_ratio(t, z);
            if (r > rep.sup_ratio) {
                rep.sup_ratio = r;
                rep.argmax_t = t;
                rep.argmax_z = z;
            }
        }
    }
    rep.margin = -rep.sup_ratio;
    rep.ok = rep.sup_ratio < 0.0;
    return rep;
}

}  // namespace wavecouple
