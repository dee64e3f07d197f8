#include "wavecouple/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace wavecouple {

namespace {
double maxinv(double nu1, double nu2) { return std::max(1.0 / nu1, 1.0 / nu2); }

bool delta_ok(double d, double T, double L, double a, double b, double mi) {
    return (T - 2.0 * d > 2.0 * (L - b + 2.0 * d) * mi) &&
           (T - 2.0 * d > 2.0 * (a + 2.0 * d) * mi);
}
}  // namespace

bool check_time(double T, double L, double a, double b, double nu1, double nu2) {
    if (!(a >= 0.0 && a < b && b <= L)) throw OutOfDomain("need 0 <= a < b <= L");
    const double mi = maxinv(nu1, nu2);
    return T > 2.0 * (L - b) * mi && T > 2.0 * a * mi;
}

double admissible_delta(double T, double L, double a, double b, double nu1, double nu2) {
    if (!check_time(T, L, a, b, nu1, nu2))
        throw NoAdmissibleDelta("time condition fails, no admissible delta");
    const double mi = maxinv(nu1, nu2);
    const double cap = 0.5 * std::min(0.5 * T, 0.5 * (b - a));
    const double step = T * std::pow(2.0, -20);
    // largest dyadic multiple of step below cap with the condition at 2*delta
    double best = 0.0;
    double lo = 0.0, hi = std::floor(cap / step);
    while (lo <= hi) {
        const double mid = std::floor(0.5 * (lo + hi));
        const double d = mid * step;
        if (d < cap && delta_ok(2.0 * d, T, L, a, b, mi)) {
            best = d;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    if (best == 0.0) throw NoAdmissibleDelta("dyadic search found no admissible delta");
    return best;
}

CoveringSet build_covering(double T, double a, double b, double delta, double epsilon0,
                           double nu1, double nu2) {
    const double mi = maxinv(nu1, nu2);
    const double span = b - a - 2.0 * delta;
    // epsilon0 up to the full span is allowed so the degenerate N = 1
    // covering (single rectangle [a+delta, b-delta]) stays constructible
    if (!(epsilon0 > 0.0) || !(epsilon0 <= span * (1.0 + 1e-12)))
        throw BadEpsilon("need 0 < epsilon0 <= b-a-2 delta");
    if (!(epsilon0 * mi < T - 2.0 * delta))
        throw BadEpsilon("epsilon0 crossing time exceeds T - 2 delta");
    const int N = static_cast<int>(std::ceil(0.5 * (span / epsilon0 + 1.0)));
    CoveringSet c;
    c.T = T;
    c.a = a;
    c.b = b;
    c.delta = delta;
    c.nu1 = nu1;
    c.nu2 = nu2;
    c.epsilon = span / (2.0 * N - 1.0);
    for (int i = 1; i <= N; ++i) {
        const double xi = a + delta + (2.0 * i - 1.5) * c.epsilon;
        c.centers.push_back(xi);
        c.rects.emplace_back(xi - 0.5 * c.epsilon, xi + 0.5 * c.epsilon);
    }
    validate_covering(c);
    return c;
}

void validate_covering(const CoveringSet& c) {
    if (c.rects.empty()) throw BadEpsilon("covering has no rectangles");
    const double mi = maxinv(c.nu1, c.nu2);
    const double tol = 1e-12 * (std::abs(c.b) + 1.0);
    if (std::abs(c.rects.front().first - (c.a + c.delta)) > tol)
        throw BadEpsilon("covering must start at a + delta");
    if (std::abs(c.rects.back().second - (c.b - c.delta)) > tol)
        throw BadEpsilon("covering must end at b - delta");
    for (size_t i = 0; i + 1 < c.rects.size(); ++i) {
        const double gap = c.rects[i + 1].first - c.rects[i].second;
        if (!(gap > 0.0)) throw BadEpsilon("covering gaps must be positive");
        if (!(gap * mi < c.T - 2.0 * c.delta))
            throw BadEpsilon("covering gap too wide for the time horizon");
    }
}

std::vector<double> gap_deltas(const CoveringSet& c) {
    std::vector<double> out;
    const double mi = maxinv(c.nu1, c.nu2);
    const double budget = c.T - 2.0 * c.delta;  // steering strips live inside [delta, T-delta]
    const double step = c.T * std::pow(2.0, -20);
    for (size_t i = 0; i + 1 < c.rects.size(); ++i) {
        const double gap = c.rects[i + 1].first - c.rects[i].second;
        const double halfw = 0.5 * std::min(c.rects[i].second - c.rects[i].first,
                                            c.rects[i + 1].second - c.rects[i + 1].first);
        double best = 0.0;
        double lo = 1.0, hi = std::floor(halfw / step);
        while (lo <= hi) {
            const double mid = std::floor(0.5 * (lo + hi));
            const double d = mid * step;
            if (d < halfw && budget - 2.0 * d > (gap + 4.0 * d) * mi) {
                best = d;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        out.push_back(best);
    }
    return out;
}

Hull::Hull(const CoveringSet& c, double margin_t, double margin_x)
    : mt_(margin_t), mx_(margin_x), delta_(c.delta), T_(c.T) {
    for (const auto& r : c.rects) {
        cx_.push_back(0.5 * (r.first + r.second));
        hx_.push_back(0.5 * (r.second - r.first));
    }
}

double Hull::psi(double t, double x) const {
    // per-rect rounded-rectangle signed distance in margin-scaled coordinates,
    // then a smooth-min union
    const double tc = 0.5 * T_;
    const double ht = 0.5 * T_ - delta_;
    double best = 1e300;
    std::vector<double> vals;
    vals.reserve(cx_.size());
    for (size_t i = 0; i < cx_.size(); ++i) {
        const double qt = (std::abs(t - tc) - ht) / mt_;
        const double qx = (std::abs(x - cx_[i]) - hx_[i]) / mx_;
        const double ot = std::max(qt, 0.0), ox = std::max(qx, 0.0);
        const double d = std::sqrt(ot * ot + ox * ox) + std::min(std::max(qt, qx), 0.0) - 1.0;
        vals.push_back(d);
        best = std::min(best, d);
    }
    // smooth-min with a small sharpness; exact min recovered well below the
    // 1e-12 membership tolerance
    const double s = 1e-2;
    double acc = 0.0;
    for (double v : vals) acc += std::exp(-(v - best) / s);
    return best - s * std::log(acc);
}

int characteristics_missing_covering(const CoveringSet& c, double L, int samples) {
    // characteristics reflect at x = 0 and x = L like the waves they follow
    auto fold = [L](double x) {
        double y = std::fmod(x, 2.0 * L);
        if (y < 0.0) y += 2.0 * L;
        return y <= L ? y : 2.0 * L - y;
    };
    int missing = 0;
    for (int k = 0; k < samples; ++k) {
        const double x0 = L * k / (samples - 1.0);
        for (double nu : {c.nu1, c.nu2}) {
            for (double sgn : {1.0, -1.0}) {
                bool crosses = false, meets = false;
                const int nsteps = 8000;
                for (int s = 0; s <= nsteps; ++s) {
                    const double t = c.T * s / nsteps;
                    const double x = fold(x0 + sgn * nu * t);
                    if (x >= c.a && x <= c.b) crosses = true;
                    if (c.in_rect(t, x)) meets = true;
                }
                if (crosses && !meets) ++missing;
            }
        }
    }
    return missing;
}

}  // namespace wavecouple
