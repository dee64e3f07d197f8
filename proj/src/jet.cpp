#include "wavecouple/jet.hpp"

namespace wavecouple {

Jet jet_recip(const Jet& a) {
    if (a.value() == 0.0) throw OutOfDomain("jet reciprocal at zero");
    Jet r(a.order());
    const double inv = 1.0 / a.value();
    r.coeff_ref(0) = inv;
    for (int n = 1; n <= r.order(); ++n) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += r.coeff(k) * a.coeff(n - k);
        r.coeff_ref(n) = -s * inv;
    }
    return r;
}

Jet jet_exp(const Jet& a) {
    Jet r(a.order());
    r.coeff_ref(0) = std::exp(a.value());
    for (int n = 1; n <= r.order(); ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k) s += k * a.coeff(k) * r.coeff(n - k);
        r.coeff_ref(n) = s / n;
    }
    return r;
}

Jet jet_log(const Jet& a) {
    if (a.value() <= 0.0) throw OutOfDomain("jet log needs positive value");
    Jet r(a.order());
    r.coeff_ref(0) = std::log(a.value());
    const double inv = 1.0 / a.value();
    for (int n = 1; n <= r.order(); ++n) {
        double s = n * a.coeff(n);
        for (int k = 1; k < n; ++k) s -= k * r.coeff(k) * a.coeff(n - k);
        r.coeff_ref(n) = s * inv / n;
    }
    return r;
}

Jet jet_pow(const Jet& a, double p) {
    if (a.value() <= 0.0) throw OutOfDomain("jet pow needs positive value");
    Jet r(a.order());
    r.coeff_ref(0) = std::pow(a.value(), p);
    const double inv = 1.0 / a.value();
    for (int n = 1; n <= r.order(); ++n) {
        double s = 0.0;
        for (int m = 1; m <= n; ++m) s += ((p + 1.0) * m - n) * a.coeff(m) * r.coeff(n - m);
        r.coeff_ref(n) = s * inv / n;
    }
    return r;
}

Jet jet_sqrt(const Jet& a) { return jet_pow(a, 0.5); }

Jet jet_cbrt(const Jet& a) {
    if (a.value() == 0.0) throw OutOfDomain("jet cbrt at a vanishing point");
    if (a.value() > 0.0) return jet_pow(a, 1.0 / 3.0);
    return -jet_pow(-a, 1.0 / 3.0);
}

Jet jet_compose(const Jet& outer, const Jet& inner) {
    const int order = std::min(outer.order(), inner.order());
    Jet dz = inner.truncated(order);
    dz.coeff_ref(0) = 0.0;
    Jet r = Jet::constant(outer.coeff(order), order);
    for (int k = order - 1; k >= 0; --k) r = r * dz + outer.coeff(k);
    return r;
}

Jet jet_stretch(const Jet& a, double c) {
    Jet r = a;
    double f = 1.0;
    for (int n = 1; n <= r.order(); ++n) {
        f *= c;
        r.coeff_ref(n) *= f;
    }
    return r;
}

}  // namespace wavecouple
