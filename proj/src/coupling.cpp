#include "wavecouple/coupling.hpp"

#include "wavecouple/errors.hpp"
#include "wavecouple/trajectory.hpp"

namespace wavecouple {

double Poly2::operator()(double u, double v) const {
    double s = 0.0;
    for (size_t k = c_.size(); k-- > 0;) {
        double row = 0.0;
        for (size_t l = c_[k].size(); l-- > 0;) row = row * v + c_[k][l];
        s = s * u + row;
    }
    return s;
}

double Poly2::du(double u, double v) const { return derivative_u()(u, v); }
double Poly2::dv(double u, double v) const { return derivative_v()(u, v); }

Jet Poly2::eval(const Jet& u, const Jet& v) const {
    const int order = std::min(u.order(), v.order());
    Jet s(order);
    for (size_t k = c_.size(); k-- > 0;) {
        Jet row(order);
        for (size_t l = c_[k].size(); l-- > 0;) row = row * v + c_[k][l];
        s = s * u + row;
    }
    return s;
}

Poly2 Poly2::derivative_u() const {
    if (c_.size() <= 1) return Poly2();
    std::vector<std::vector<double>> d(c_.begin() + 1, c_.end());
    for (size_t k = 0; k < d.size(); ++k)
        for (double& x : d[k]) x *= static_cast<double>(k + 1);
    return Poly2(std::move(d));
}

Poly2 Poly2::derivative_v() const {
    std::vector<std::vector<double>> d;
    for (const auto& row : c_) {
        if (row.size() <= 1) {
            d.push_back({0.0});
            continue;
        }
        std::vector<double> r(row.begin() + 1, row.end());
        for (size_t l = 0; l < r.size(); ++l) r[l] *= static_cast<double>(l + 1);
        d.push_back(std::move(r));
    }
    return Poly2(std::move(d));
}

double CouplingSpec::f1(double, double, double u, double v) const {
    switch (kind) {
        case Kind::general: return f1_poly(u, v);
        default: return 0.0;  // cubic system has no coupling in the u equation
    }
}

double CouplingSpec::f2(double t, double x, double u, double v) const {
    switch (kind) {
        case Kind::general: return f2_poly(u, v);
        case Kind::cubic: return u * u * u;
        case Kind::cubic_shifted: {
            const double ub = shift ? shift->ubar(t, x) : 0.0;
            return u * u * u + 3.0 * ub * u * u + 3.0 * ub * ub * u;
        }
    }
    return 0.0;
}

double CouplingSpec::df1_du(double, double, double u, double v) const {
    return kind == Kind::general ? f1_poly.du(u, v) : 0.0;
}
double CouplingSpec::df1_dv(double, double, double u, double v) const {
    return kind == Kind::general ? f1_poly.dv(u, v) : 0.0;
}
double CouplingSpec::df2_du(double t, double x, double u, double v) const {
    switch (kind) {
        case Kind::general: return f2_poly.du(u, v);
        case Kind::cubic: return 3.0 * u * u;
        case Kind::cubic_shifted: {
            const double ub = shift ? shift->ubar(t, x) : 0.0;
            return 3.0 * (u + ub) * (u + ub);
        }
    }
    return 0.0;
}
double CouplingSpec::df2_dv(double, double, double u, double v) const {
    return kind == Kind::general ? f2_poly.dv(u, v) : 0.0;
}

Jet time_jets_of_coupling(const Poly2& f, const Jet& u_jet, const Jet& v_jet, int n) {
    if (u_jet.order() < n || v_jet.order() < n)
        throw OrderTooLow("coupling jets need order >= n");
    return f.eval(u_jet.truncated(n), v_jet.truncated(n));
}

}  // namespace wavecouple
