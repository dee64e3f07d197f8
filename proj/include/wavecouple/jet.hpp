#pragma once

#include <array>
#include <cmath>

#include "wavecouple/errors.hpp"

namespace wavecouple {

// Truncated Taylor expansion of a scalar function of one variable.
// coeff(n) stores f^(n)(t0)/n!; order() is the truncation degree K.
// All arithmetic is exact on the retained coefficients.
class Jet {
  public:
    static constexpr int kMaxOrder = 15;

    Jet() : n_(0) { c_[0] = 0.0; }
    explicit Jet(int order) : n_(check_order(order)) { c_.fill(0.0); }

    static Jet constant(double value, int order) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }
    // The identity map t -> t expanded at t0 = value.
    static Jet variable(double value, int order) {
        Jet j(order);
        j.c_[0] = value;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return n_; }
    double value() const { return c_[0]; }
    double coeff(int n) const { return n <= n_ ? c_[n] : 0.0; }
    double& coeff_ref(int n) { return c_[n]; }

    // n-th derivative value, n! * c_n.
    double derivative(int n) const {
        if (n > n_) return 0.0;
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return f * c_[n];
    }

    Jet truncated(int order) const {
        Jet r(std::min(order, n_));
        for (int k = 0; k <= r.n_; ++k) r.c_[k] = c_[k];
        return r;
    }

    // Jet of f', one order lower.
    Jet d() const {
        if (n_ == 0) throw OrderTooLow("jet derivative needs order >= 1");
        Jet r(n_ - 1);
        for (int k = 0; k <= r.n_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (int k = 0; k <= n_; ++k) r.c_[k] = -r.c_[k];
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r(std::min(a.n_, b.n_));
        for (int k = 0; k <= r.n_; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r(std::min(a.n_, b.n_));
        for (int k = 0; k <= r.n_; ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(std::min(a.n_, b.n_));
        for (int n = 0; n <= r.n_; ++n) {
            double s = 0.0;
            for (int k = 0; k <= n; ++k) s += a.c_[k] * b.c_[n - k];
            r.c_[n] = s;
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet operator+(const Jet& a, double s) {
        Jet r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(const Jet& a, double s) {
        Jet r = a;
        for (int k = 0; k <= r.n_; ++k) r.c_[k] *= s;
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

  private:
    static int check_order(int order) {
        if (order < 0 || order > kMaxOrder) throw OrderTooLow("jet order out of range");
        return order;
    }

    std::array<double, kMaxOrder + 1> c_{};
    int n_;
};

Jet jet_recip(const Jet& a);
Jet jet_exp(const Jet& a);
Jet jet_log(const Jet& a);
Jet jet_pow(const Jet& a, double p);
Jet jet_sqrt(const Jet& a);
// Real cube root; requires a nonvanishing leading coefficient.
Jet jet_cbrt(const Jet& a);
// Outer jet expanded at inner.value(); inner enters through its fluctuation.
Jet jet_compose(const Jet& outer, const Jet& inner);
// Jet of f(c*t + d)-style reparametrisation: coefficients scaled by c^n.
Jet jet_stretch(const Jet& a, double c);

inline Jet operator/(const Jet& a, const Jet& b) { return a * jet_recip(b); }

}  // namespace wavecouple
