#include "wavecouple/stationary.hpp"

#include <algorithm>
#include <cmath>

#include "wavecouple/errors.hpp"

namespace wavecouple {

namespace {

double tail_g(double z) { return exp_flat(1.0 - z * z); }

Jet tail_g_jet(const Jet& z) { return exp_flat(1.0 - z * z); }

Jet tail_G_jet(const Jet& z) {
    // g'' of exp(-1/(1-z^2)): (6z^4-2)/(1-z^2)^4 * exp(-1/(1-z^2))
    const Jet s = 1.0 - z * z;
    if (s.value() <= 0.0) return Jet(z.order());
    const Jet z2 = z * z;
    const Jet num = 6.0 * z2 * z2 - 2.0;
    const Jet s2 = s * s;
    return num / (s2 * s2) * exp_flat(s);
}

double tail_gp(double z, int /*unused*/ = 0) {
    const double s = 1.0 - z * z;
    if (s <= 0.0) return 0.0;
    return -2.0 * z / (s * s) * exp_flat(s);
}

}  // namespace

double StationaryProfile::base_G(double z) const {
    if (z <= z2_) {
        const double w = smooth_step((z - z1_) / (z2_ - z1_));
        const double cub = (z - 0.75) * (z - 0.75) * (z - 0.75);
        return -2.0 + w * (cub + 2.0);
    }
    const double w = smooth_step((z - z3_) / (z4_ - z3_));
    const double cub = (z - 0.75) * (z - 0.75) * (z - 0.75);
    const double s = 1.0 - z * z;
    const double tail = (6.0 * z * z * z * z - 2.0) / (s * s * s * s) * exp_flat(s);
    return (1.0 - w) * cub + w * tail;
}

Jet StationaryProfile::base_G_jet(const Jet& z) const {
    const Jet cub = (z - 0.75) * (z - 0.75) * (z - 0.75);
    if (z.value() <= z2_) {
        const Jet w = smooth_step((z - z1_) / (z2_ - z1_));
        return -2.0 + w * (cub + 2.0);
    }
    const Jet w = smooth_step((z - z3_) / (z4_ - z3_));
    return (1.0 - w) * cub + w * tail_G_jet(z);
}

double StationaryProfile::bump_n(double z) const {
    return -bump_((z - nl_center_) / nl_radius_);
}
double StationaryProfile::bump_p(double z) const {
    return bump_((z - pr_center_) / pr_radius_);
}
Jet StationaryProfile::bump_n_jet(const Jet& z) const {
    return -bump_.eval((z - nl_center_) / nl_radius_);
}
Jet StationaryProfile::bump_p_jet(const Jet& z) const {
    return bump_.eval((z - pr_center_) / pr_radius_);
}

double StationaryProfile::G_total_mid(double z) const {
    if (z <= z2_) return base_G(z) + amp_left_ * bump_n(z);
    if (z < z3_) return (z - 0.75) * (z - 0.75) * (z - 0.75);
    return base_G(z) + amp_right_ * bump_p(z);
}

double StationaryProfile::int_G(double z) const {
    auto it = std::upper_bound(panel_edges_.begin(), panel_edges_.end(), z);
    size_t i = (it == panel_edges_.begin()) ? 0 : (it - panel_edges_.begin() - 1);
    i = std::min(i, panel_edges_.size() - 2);
    const double lo = panel_edges_[i];
    return pre_G_[i] + gl16([this](double t) { return G_total_mid(t); }, lo, z);
}

double StationaryProfile::int_tauG(double z) const {
    auto it = std::upper_bound(panel_edges_.begin(), panel_edges_.end(), z);
    size_t i = (it == panel_edges_.begin()) ? 0 : (it - panel_edges_.begin() - 1);
    i = std::min(i, panel_edges_.size() - 2);
    const double lo = panel_edges_[i];
    return pre_tauG_[i] + gl16([this](double t) { return t * G_total_mid(t); }, lo, z);
}

double StationaryProfile::G(double z) const {
    if (z < 0.0) throw OutOfDomain("stationary profile needs z >= 0");
    if (z <= z1_) return -2.0;
    if (z < z4_) return G_total_mid(z);
    if (z < 1.0) {
        const double s = 1.0 - z * z;
        return (6.0 * z * z * z * z - 2.0) / (s * s * s * s) * exp_flat(s);
    }
    return 0.0;
}

double StationaryProfile::gp(double z) const {
    if (z < 0.0) throw OutOfDomain("stationary profile needs z >= 0");
    if (z <= z1_) return -2.0 * z;
    if (z < z4_) return -2.0 * z1_ + int_G(z);
    if (z < 1.0) return tail_gp(z);
    return 0.0;
}

double StationaryProfile::g(double z) const {
    if (z < 0.0) throw OutOfDomain("stationary profile needs z >= 0");
    if (z <= z1_) return 1.0 - z * z;
    if (z < z4_)
        return (1.0 - z1_ * z1_) - 2.0 * z1_ * (z - z1_) + z * int_G(z) - int_tauG(z);
    if (z < 1.0) return tail_g(z);
    return 0.0;
}

Jet StationaryProfile::G_jet(double z, int order) const {
    if (z < 0.0) throw OutOfDomain("stationary profile needs z >= 0");
    const Jet zj = Jet::variable(z, order);
    if (z <= z1_) return Jet::constant(-2.0, order);
    if (z <= z2_) return base_G_jet(zj) + amp_left_ * bump_n_jet(zj);
    if (z < z3_) {
        const Jet c = zj - 0.75;
        return c * c * c;
    }
    if (z < z4_) return base_G_jet(zj) + amp_right_ * bump_p_jet(zj);
    if (z < 1.0) return tail_G_jet(zj);
    return Jet(order);
}

Jet StationaryProfile::g_jet(double z, int order) const {
    if (z < 0.0) throw OutOfDomain("stationary profile needs z >= 0");
    const Jet zj = Jet::variable(z, order);
    if (z <= z1_) return 1.0 - zj * zj;
    if (z < z4_) {
        Jet r(order);
        r.coeff_ref(0) = g(z);
        if (order >= 1) r.coeff_ref(1) = gp(z);
        if (order >= 2) {
            const Jet Gj = G_jet(z, std::max(0, order - 2));
            for (int n = 0; n + 2 <= order; ++n)
                r.coeff_ref(n + 2) = Gj.coeff(n) / ((n + 1.0) * (n + 2.0));
        }
        return r;
    }
    if (z < 1.0) return tail_g_jet(zj);
    return Jet(order);
}

StationaryProfile build_stationary(double delta_prime, double delta_double_prime) {
    if (!(delta_prime > 0.0 && delta_prime < 0.25))
        throw NoSolution("delta_prime must lie in (0, 1/4)");
    if (!(delta_double_prime > 0.0 && delta_double_prime < 0.5))
        throw NoSolution("delta_double_prime must lie in (0, 1/2)");
    const double w = 0.5 * delta_double_prime;
    StationaryProfile sp;
    sp.dp_ = delta_prime;
    sp.dpp_ = delta_double_prime;
    sp.z1_ = delta_double_prime;
    sp.z2_ = 0.75 - w;
    sp.z3_ = 0.75 + w;
    sp.z4_ = 1.0 - delta_prime;
    if (!(sp.z2_ - sp.z1_ > 0.02) || !(sp.z4_ - sp.z3_ > 0.015))
        throw NoSolution("template ranges too narrow");
    if (!(sp.z3_ > 0.765))
        throw NoSolution("cubic window must end right of the tail sign change");

    sp.nl_center_ = 0.5 * (sp.z1_ + sp.z2_);
    sp.nl_radius_ = 0.40 * (sp.z2_ - sp.z1_);
    sp.pr_center_ = 0.5 * (sp.z3_ + sp.z4_);
    sp.pr_radius_ = 0.42 * (sp.z4_ - sp.z3_);

    // panels between all structural breakpoints, width <= ~1e-3
    std::vector<double> breaks = {sp.z1_,
                                  sp.nl_center_ - sp.nl_radius_,
                                  sp.nl_center_ + sp.nl_radius_,
                                  sp.z2_,
                                  sp.z3_,
                                  sp.pr_center_ - sp.pr_radius_,
                                  sp.pr_center_ + sp.pr_radius_,
                                  sp.z4_};
    std::sort(breaks.begin(), breaks.end());
    sp.panel_edges_.clear();
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double len = breaks[i + 1] - breaks[i];
        if (len <= 0.0) continue;
        const int np = std::max(1, static_cast<int>(std::ceil(len / 1e-3)));
        for (int k = 0; k < np; ++k)
            sp.panel_edges_.push_back(breaks[i] + len * k / np);
    }
    sp.panel_edges_.push_back(sp.z4_);

    // integrals of the three G components, linear in the amplitudes
    const size_t m = sp.panel_edges_.size();
    std::vector<double> ib(m, 0.0), in(m, 0.0), ip(m, 0.0);
    std::vector<double> tb(m, 0.0), tn(m, 0.0), tp(m, 0.0);
    auto base = [&sp](double t) {
        if (t <= sp.z2_) return sp.base_G(t);
        if (t < sp.z3_) return (t - 0.75) * (t - 0.75) * (t - 0.75);
        return sp.base_G(t);
    };
    for (size_t i = 0; i + 1 < m; ++i) {
        const double lo = sp.panel_edges_[i], hi = sp.panel_edges_[i + 1];
        ib[i + 1] = ib[i] + gl16(base, lo, hi);
        in[i + 1] = in[i] + gl16([&sp](double t) { return sp.bump_n(t); }, lo, hi);
        ip[i + 1] = ip[i] + gl16([&sp](double t) { return sp.bump_p(t); }, lo, hi);
        tb[i + 1] = tb[i] + gl16([&](double t) { return t * base(t); }, lo, hi);
        tn[i + 1] = tn[i] + gl16([&sp](double t) { return t * sp.bump_n(t); }, lo, hi);
        tp[i + 1] = tp[i] + gl16([&sp](double t) { return t * sp.bump_p(t); }, lo, hi);
    }

    // match g and g' against the tail at z4
    const double z1 = sp.z1_, z4 = sp.z4_;
    const double g1 = 1.0 - z1 * z1, gp1 = -2.0 * z1;
    const double rhs1 = tail_gp(z4) - gp1 - ib[m - 1];
    const double rhs2 = tail_g(z4) - g1 - gp1 * (z4 - z1) - (z4 * ib[m - 1] - tb[m - 1]);
    const double a11 = in[m - 1], a12 = ip[m - 1];
    const double a21 = z4 * in[m - 1] - tn[m - 1], a22 = z4 * ip[m - 1] - tp[m - 1];
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-12)
        throw NoSolution("amplitude matching system is singular");
    sp.amp_left_ = (rhs1 * a22 - rhs2 * a12) / det;
    sp.amp_right_ = (a11 * rhs2 - a21 * rhs1) / det;

    sp.pre_G_.assign(m, 0.0);
    sp.pre_tauG_.assign(m, 0.0);
    for (size_t i = 0; i < m; ++i) {
        sp.pre_G_[i] = ib[i] + sp.amp_left_ * in[i] + sp.amp_right_ * ip[i];
        sp.pre_tauG_[i] = tb[i] + sp.amp_left_ * tn[i] + sp.amp_right_ * tp[i];
    }

    // sign ledger: G(z)(z - 3/4) > 0 away from the cubic contact point.
    // Close to z = 1 the tail underflows to an exact zero; only require
    // nonnegativity there.
    for (int k = 1; k < 4000; ++k) {
        const double z = k / 4000.0;
        if (std::abs(z - 0.75) < 1e-9) continue;
        const double v = sp.G(z) * (z - 0.75);
        const bool underflowed = z > 0.75 && exp_flat(1.0 - z * z) == 0.0;
        if (!(v > 0.0) && !(underflowed && v == 0.0))
            throw NoSolution("solved amplitudes violate the sign condition on G");
    }

    sp.g34_ = sp.g(0.75);
    sp.gp34_ = sp.gp(0.75);
    return sp;
}

}  // namespace wavecouple
