#pragma once

#include <functional>
#include <vector>

#include "wavecouple/errors.hpp"

namespace wavecouple {

// T > 2(L-b) max(1/nu1, 1/nu2) and T > 2a max(1/nu1, 1/nu2), both strict.
bool check_time(double T, double L, double a, double b, double nu1, double nu2);

// Largest dyadic delta <= min(T/2, (b-a)/2)/2 such that the gap condition
//   T - 2d > 2(L-b+2d) maxinv  and  T - 2d > 2(a+2d) maxinv
// holds at d = 2*delta (and hence at delta itself).
double admissible_delta(double T, double L, double a, double b, double nu1, double nu2);

struct CoveringSet {
    double T = 0.0, a = 0.0, b = 0.0, delta = 0.0, epsilon = 0.0;
    double nu1 = 1.0, nu2 = 1.0;
    std::vector<double> centers;            // x_i
    std::vector<std::pair<double, double>> rects;  // [a_i, b_i]

    int size() const { return static_cast<int>(rects.size()); }
    bool in_rect(double t, double x) const {
        if (t < delta || t > T - delta) return false;
        for (const auto& r : rects)
            if (x >= r.first && x <= r.second) return true;
        return false;
    }
};

CoveringSet build_covering(double T, double a, double b, double delta, double epsilon0,
                           double nu1, double nu2);

void validate_covering(const CoveringSet& c);

// Largest dyadic delta_i per gap with T - 2 d_i > (gap + 4 d_i) maxinv and
// d_i < min of the adjacent rectangle half-widths.
std::vector<double> gap_deltas(const CoveringSet& c);

// Smooth hull membership: union of rounded rectangles, one per covering
// rectangle, dilated by (margin_t, margin_x) with a smooth-min union.
// psi <= 0 is membership.
class Hull {
  public:
    Hull() = default;
    Hull(const CoveringSet& c, double margin_t, double margin_x);
    double psi(double t, double x) const;
    bool contains(double t, double x) const { return psi(t, x) <= 1e-12; }
    double margin_t() const { return mt_; }
    double margin_x() const { return mx_; }

  private:
    double mt_ = 0.0, mx_ = 0.0;
    double delta_ = 0.0, T_ = 0.0;
    std::vector<double> cx_, hx_;  // per-rect center, half-width
};

// GCC proxy: every characteristic segment of slope +-1/nu crossing [a,b]
// during [0,T] meets the covering; returns the number of sampled
// characteristics that fail.
int characteristics_missing_covering(const CoveringSet& c, double L, int samples = 1000);

}  // namespace wavecouple
