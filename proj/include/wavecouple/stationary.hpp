#pragma once

#include <vector>

#include "wavecouple/flat.hpp"
#include "wavecouple/jet.hpp"

namespace wavecouple {

// One-dimensional stationary pair (g, G) with g'' = G,
//   g(z) = 1 - z^2              on [0, d''],
//   g(z) = exp(-1/(1-z^2))      on [1-d', 1), zero beyond,
//   G(z) = (z - 3/4)^3          on [3/4 - d''/2, 3/4 + d''/2],
//   G(z)(z - 3/4) > 0           on (0,1) away from 3/4.
// The two bridge regions carry fixed smooth shapes plus one amplitude each;
// the amplitudes are solved so that double integration of G starting from the
// parabolic piece lands on the prescribed tail value and slope at 1-d'.
class StationaryProfile {
  public:
    double delta_prime() const { return dp_; }
    double delta_double_prime() const { return dpp_; }
    double amp_left() const { return amp_left_; }
    double amp_right() const { return amp_right_; }

    double g(double z) const;
    double gp(double z) const;
    double G(double z) const;
    Jet g_jet(double z, int order) const;
    Jet G_jet(double z, int order) const;

    double g34() const { return g34_; }
    double gp34() const { return gp34_; }

    // region boundaries: [0, z1] parabola, [z1, z2] left bridge,
    // [z2, z3] cubic window, [z3, z4] right bridge, [z4, 1) tail
    double z1() const { return z1_; }
    double z2() const { return z2_; }
    double z3() const { return z3_; }
    double z4() const { return z4_; }

  private:
    friend StationaryProfile build_stationary(double, double);

    double base_G(double z) const;
    Jet base_G_jet(const Jet& z) const;
    double bump_n(double z) const;
    double bump_p(double z) const;
    Jet bump_n_jet(const Jet& z) const;
    Jet bump_p_jet(const Jet& z) const;
    double G_total_mid(double z) const;

    // prefix integrals of G and tau*G(tau) from z1 to the panel edges
    double int_G(double z) const;
    double int_tauG(double z) const;

    double dp_ = 0.0, dpp_ = 0.0;
    double z1_ = 0.0, z2_ = 0.0, z3_ = 0.0, z4_ = 0.0;
    double nl_center_ = 0.0, nl_radius_ = 0.0;
    double pr_center_ = 0.0, pr_radius_ = 0.0;
    double amp_left_ = 0.0, amp_right_ = 0.0;
    double g34_ = 0.0, gp34_ = 0.0;
    PolyBump bump_{8};

    std::vector<double> panel_edges_;
    std::vector<double> pre_G_, pre_tauG_;  // combined G with solved amplitudes
};

StationaryProfile build_stationary(double delta_prime, double delta_double_prime);

}  // namespace wavecouple
