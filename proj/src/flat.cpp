#include "wavecouple/flat.hpp"

namespace wavecouple {

namespace {
// exp underflows to 0 below this exponent; treat the jet as exactly flat.
constexpr double kUnderflowExponent = -745.0;
}  // namespace

double exp_flat(double s) {
    if (s <= 0.0) return 0.0;
    const double e = -1.0 / s;
    return e < kUnderflowExponent ? 0.0 : std::exp(e);
}

Jet exp_flat(const Jet& s) {
    if (s.value() <= 0.0 || -1.0 / s.value() < kUnderflowExponent)
        return Jet(s.order());
    return jet_exp(-jet_recip(s));
}

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = exp_flat(u), b = exp_flat(1.0 - u);
    return a / (a + b);
}

Jet smooth_step(const Jet& u) {
    if (u.value() <= 0.0) return Jet(u.order());
    if (u.value() >= 1.0) return Jet::constant(1.0, u.order());
    const Jet a = exp_flat(u), b = exp_flat(1.0 - u);
    return a / (a + b);
}

PolyBump::PolyBump(int m) {
    // expand (1-u^2)^m via binomial coefficients
    std::vector<double> c(2 * m + 1, 0.0);
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
        c[2 * k] = (k % 2 == 0 ? binom : -binom);
        binom = binom * (m - k) / (k + 1);
    }
    p_ = Poly(std::move(c), 0.0);
}

double PolyBump::operator()(double u) const {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return p_(u);
}

Jet PolyBump::eval(const Jet& u) const {
    if (u.value() <= -1.0 || u.value() >= 1.0) return Jet(u.order());
    return p_.eval(u);
}

const std::array<double, 16> GaussLegendre16::nodes = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};

const std::array<double, 16> GaussLegendre16::weights = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace wavecouple
