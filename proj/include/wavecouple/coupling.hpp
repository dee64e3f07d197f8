#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "wavecouple/jet.hpp"

namespace wavecouple {

// Bivariate polynomial sum c[k][l] u^k v^l. All couplings in this laboratory
// are polynomial, which keeps the corner-jet machinery exact.
class Poly2 {
  public:
    Poly2() : c_{{0.0}} {}
    explicit Poly2(std::vector<std::vector<double>> coeffs) : c_(std::move(coeffs)) {}

    static Poly2 zero() { return Poly2(); }
    static Poly2 cubic_u() { return Poly2({{0}, {0}, {0}, {1}}); }        // u^3
    static Poly2 linear_u(double s) { return Poly2({{0}, {s}}); }         // s*u
    static Poly2 linear_plus_cubic_u() { return Poly2({{0}, {1}, {0}, {1}}); }

    double operator()(double u, double v) const;
    double du(double u, double v) const;
    double dv(double u, double v) const;
    Jet eval(const Jet& u, const Jet& v) const;
    Poly2 derivative_u() const;
    Poly2 derivative_v() const;
    const std::vector<std::vector<double>>& coeffs() const { return c_; }

  private:
    std::vector<std::vector<double>> c_;
};

class ReturnTrajectory;

// Coupling of the second-order system: box_nu1 u = f1(u,v) + h,
// box_nu2 v = f2(u,v). The shifted kind works in perturbation variables
// around a return trajectory: f2(u) = u^3 + 3 ubar u^2 + 3 ubar^2 u.
struct CouplingSpec {
    enum class Kind { general, cubic, cubic_shifted };
    Kind kind = Kind::cubic;
    Poly2 f1_poly, f2_poly;                 // general kind
    const ReturnTrajectory* shift = nullptr;  // cubic_shifted
    double floor = 1e-6;

    static CouplingSpec cubic() {
        CouplingSpec s;
        s.kind = Kind::cubic;
        s.f1_poly = Poly2::zero();
        s.f2_poly = Poly2::cubic_u();
        return s;
    }
    static CouplingSpec cubic_shifted(const ReturnTrajectory* traj) {
        CouplingSpec s = cubic();
        s.kind = Kind::cubic_shifted;
        s.shift = traj;
        return s;
    }
    static CouplingSpec general(Poly2 f1, Poly2 f2) {
        CouplingSpec s;
        s.kind = Kind::general;
        s.f1_poly = std::move(f1);
        s.f2_poly = std::move(f2);
        return s;
    }

    double f1(double t, double x, double u, double v) const;
    double f2(double t, double x, double u, double v) const;
    double df1_du(double t, double x, double u, double v) const;
    double df1_dv(double t, double x, double u, double v) const;
    double df2_du(double t, double x, double u, double v) const;
    double df2_dv(double t, double x, double u, double v) const;
};

// time jet of f(u(t), v(t)) to order n via jet composition
Jet time_jets_of_coupling(const Poly2& f, const Jet& u_jet, const Jet& v_jet, int n);

}  // namespace wavecouple
