#pragma once

#include <vector>

#include "wavecouple/jet.hpp"

namespace wavecouple {

// exp(-1/s) extended by zero for s <= 0. Flat at s = 0; the jet underflows to
// exactly zero once -1/s is below the smallest representable exponent, which
// coincides with the analytic limit to double precision.
double exp_flat(double s);
Jet exp_flat(const Jet& s);

// C^inf step: 0 for u <= 0, 1 for u >= 1, exp-flat blend in between.
double smooth_step(double u);
Jet smooth_step(const Jet& u);

// Dense polynomial in (x - center), evaluated as value or jet.
class Poly {
  public:
    Poly() = default;
    Poly(std::vector<double> coeffs, double center = 0.0)
        : c_(std::move(coeffs)), x0_(center) {}

    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    double center() const { return x0_; }
    const std::vector<double>& coeffs() const { return c_; }

    double operator()(double x) const {
        double s = x - x0_, r = 0.0;
        for (int k = degree(); k >= 0; --k) r = r * s + c_[k];
        return r;
    }
    Jet eval(const Jet& x) const {
        Jet s = x - x0_;
        Jet r = Jet::constant(0.0, x.order());
        for (int k = degree(); k >= 0; --k) r = r * s + c_[k];
        return r;
    }
    Poly derivative() const {
        if (degree() < 1) return Poly({0.0}, x0_);
        std::vector<double> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return Poly(std::move(d), x0_);
    }
    Poly antiderivative() const {
        std::vector<double> d(c_.size() + 1, 0.0);
        for (size_t k = 0; k < c_.size(); ++k) d[k + 1] = c_[k] / static_cast<double>(k + 1);
        return Poly(std::move(d), x0_);
    }

  private:
    std::vector<double> c_;
    double x0_ = 0.0;
};

// Even polynomial bump (1-u^2)^m on [-1,1], zero outside; C^{m-1} at the
// support edge and polynomial (hence analytic) inside.
class PolyBump {
  public:
    explicit PolyBump(int m);
    double operator()(double u) const;
    Jet eval(const Jet& u) const;
    const Poly& inside() const { return p_; }

  private:
    Poly p_;
};

// 16-point Gauss-Legendre nodes/weights on [-1,1].
struct GaussLegendre16 {
    static const std::array<double, 16> nodes;
    static const std::array<double, 16> weights;
};

template <class F>
double gl16(const F& f, double a, double b) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < 16; ++i)
        s += GaussLegendre16::weights[i] * f(m + h * GaussLegendre16::nodes[i]);
    return s * h;
}

}  // namespace wavecouple
