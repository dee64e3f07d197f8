#include "wavecouple/temporal.hpp"

#include <cmath>
#include <vector>

#include "wavecouple/errors.hpp"

namespace wavecouple {

namespace {

// interior sweep with geometric refinement toward both endpoints, where the
// lambda/f0 factors peak
std::vector<double> time_sweep(double T) {
    std::vector<double> ts;
    const int n = 2048;
    for (int i = 1; i < n; ++i) ts.push_back(T * i / n);
    for (int k = 12; k <= 60; ++k) {
        const double t = T * std::pow(0.7, k);
        if (t > 0.0) {
            ts.push_back(t);
            ts.push_back(T - t);
        }
    }
    return ts;
}

}  // namespace

Jet TemporalProfiles::w_jet(double t, int order) const {
    const Jet tj = Jet::variable(t, order);
    return -jet_recip(tj * (T_ - tj));
}

Jet TemporalProfiles::sigma_jet(double t, int order) const {
    const double h = 0.5 * delta_;
    if (t <= h || t >= T_ - h) return Jet::constant(1.0, order);
    if (t >= delta_ && t <= T_ - delta_) return Jet(order);
    const Jet tj = Jet::variable(t, order);
    if (t < delta_) return 1.0 - smooth_step((tj - h) / h);
    return 1.0 - smooth_step(((T_ - h) - tj) / h);
}

Jet TemporalProfiles::lam0_jet(double t, int order) const {
    if (t < 0.0 || t > T_) throw OutOfDomain("lam0 evaluated outside [0,T]");
    if (t == 0.0 || t == T_) return Jet(order);
    if (t >= delta_ && t <= T_ - delta_) return Jet::constant(1.0, order);
    const Jet q = jet_sqrt(-w_jet(t, order));
    const double h = 0.5 * delta_;
    if (t <= h || t >= T_ - h) {
        const double e = -q.value();
        if (e < -745.0) return Jet(order);
        return jet_exp(-q);
    }
    return jet_exp(-(q * sigma_jet(t, order)));
}

Jet TemporalProfiles::f0_jet(double t, int order) const {
    if (t < 0.0 || t > T_) throw OutOfDomain("f0 evaluated outside [0,T]");
    if (t == 0.0 || t == T_) return Jet(order);
    const Jet tj = Jet::variable(t, order);
    return exp_flat(tj * (T_ - tj));
}

TemporalJets TemporalProfiles::eval(double t) const {
    TemporalJets r;
    r.lam0 = lam0_jet(t, K_);
    r.lam = eps_ * r.lam0;
    r.f0 = f0_jet(t, K_);
    const Jet& lam = r.lam;
    const Jet ld = lam.d();
    const Jet ldd = ld.d();
    const Jet f0d = r.f0.d();
    const Jet f0dd = f0d.d();
    const Jet D = 1.0 - (0.75 * ld) * (0.75 * ld);
    const Jet invD = jet_recip(D);
    // f1 kills lambda^2 V at z = 3/4
    r.f1 = invD * (lam * lam * g34_ * f0dd - 1.5 * ld * lam * gp34_ * f0d -
                   0.75 * (lam * ldd - 2.0 * ld * ld) * gp34_ * r.f0);
    const Jet f1d = r.f1.d();
    // f2 kills lambda^2 V_z at z = 3/4
    r.f2 = invD * (gp34_ * (lam * lam * f0dd - 2.0 * ld * lam * f0d -
                            (lam * ldd - 2.0 * ld * ld) * r.f0) -
                   1.5 * ld * lam * f1d - 0.75 * (lam * ldd - 4.0 * ld * ld) * r.f1);
    const Jet f1dd = f1d.d();
    const Jet f2d = r.f2.d();
    // f3 kills lambda^2 V_zz at z = 3/4
    r.f3 = invD * (lam * lam * f1dd - 4.0 * lam * ld * f1d -
                   (2.0 * lam * ldd - 6.0 * ld * ld) * r.f1 -
                   0.75 * (lam * ldd - 6.0 * ld * ld) * r.f2 - 1.5 * ld * lam * f2d);
    return r;
}

TemporalRatios TemporalProfiles::ratios(double t) const {
    if (!(t > 0.0 && t < T_)) throw OutOfDomain("ratio channel needs t in (0,T)");
    TemporalRatios r;
    r.lam = eps_ * lam0_jet(t, K_);
    const Jet w = w_jet(t, K_);
    r.F1 = w.d();
    r.F2 = r.F1.d() + r.F1 * r.F1;
    const Jet& lam = r.lam;
    const Jet ld = lam.d();
    const Jet ldd = ld.d();
    const Jet D = 1.0 - (0.75 * ld) * (0.75 * ld);
    const Jet invD = jet_recip(D);
    r.phi1 = invD * (lam * lam * g34_ * r.F2 - 1.5 * ld * lam * gp34_ * r.F1 -
                     0.75 * (lam * ldd - 2.0 * ld * ld) * gp34_);
    const Jet f1r_d = r.phi1.d() + r.phi1 * r.F1;  // (f1)'/f0
    r.phi2 = invD * (gp34_ * (lam * lam * r.F2 - 2.0 * ld * lam * r.F1 -
                              (lam * ldd - 2.0 * ld * ld)) -
                     1.5 * ld * lam * f1r_d - 0.75 * (lam * ldd - 4.0 * ld * ld) * r.phi1);
    const Jet f1r_dd = r.phi1.d().d() + 2.0 * r.phi1.d() * r.F1 + r.phi1 * r.F2;
    const Jet f2r_d = r.phi2.d() + r.phi2 * r.F1;
    r.phi3 = invD * (lam * lam * f1r_dd - 4.0 * lam * ld * f1r_d -
                     (2.0 * lam * ldd - 6.0 * ld * ld) * r.phi1 -
                     0.75 * (lam * ldd - 6.0 * ld * ld) * r.phi2 - 1.5 * ld * lam * f2r_d);
    return r;
}

TemporalProfiles build_temporal(double T, double delta, double epsilon,
                                const StationaryProfile& stationary, int jet_order) {
    if (!(T > 0.0) || !(delta > 0.0) || !(delta < 0.5 * T))
        throw OutOfDomain("need 0 < delta < T/2");
    if (!(epsilon > 0.0)) throw OutOfDomain("epsilon must be positive");
    if (jet_order < 6 || jet_order > 12) throw OrderTooLow("jet order must lie in [6,12]");
    TemporalProfiles tp;
    tp.T_ = T;
    tp.delta_ = delta;
    tp.eps_ = epsilon;
    tp.K_ = jet_order;
    tp.g34_ = stationary.g34();
    tp.gp34_ = stationary.gp34();

    double dmax = 0.0, c0 = 0.0, c1 = 0.0, c2 = 0.0;
    for (double t : time_sweep(T)) {
        const Jet l0 = tp.lam0_jet(t, 4);
        const double l0d = l0.derivative(1);
        dmax = std::max(dmax, std::abs(l0d));
        const Jet lam = epsilon * l0;
        const Jet ld = lam.d();
        const Jet q = jet_recip(1.0 - (0.75 * ld) * (0.75 * ld));
        c0 = std::max(c0, std::abs(q.derivative(0)));
        c1 = std::max(c1, std::abs(q.derivative(1)));
        c2 = std::max(c2, std::abs(q.derivative(2)));
    }
    tp.lam0_dot_sup_ = dmax;
    if (std::max(c0, std::max(c1, c2)) > 10.0)
        throw EpsilonTooLarge("C^2 norm of 1/(1-(3/4 lam')^2) exceeds 10");
    const double worst = epsilon * dmax;  // z = 1 end of the strip
    if (1.0 - worst * worst <= 0.5)
        throw EpsilonTooLarge("1-(eps z lam0')^2 dips to 1/2 on the sweep");
    return tp;
}

}  // namespace wavecouple
