#pragma once

#include "wavecouple/jet.hpp"
#include "wavecouple/stationary.hpp"

namespace wavecouple {

// Time jets of the temporal family at one instant. Orders decay with the
// number of lambda/f0 derivatives consumed by each formula: starting from
// base order K, f1 carries K-2, f2 carries K-3, f3 carries K-4.
struct TemporalJets {
    Jet lam0, lam, f0, f1, f2, f3;
};

// Ratio channel: everything divided by f0, expressed through the logarithmic
// derivatives F_n = (d^n f0 / dt^n)/f0. Well conditioned near t = 0 and t = T
// where f0 itself underflows.
struct TemporalRatios {
    Jet lam;             // order K
    Jet F1, F2;          // log-derivative jets
    Jet phi1, phi2, phi3;  // f_i / f0
};

class TemporalProfiles {
  public:
    double T() const { return T_; }
    double delta() const { return delta_; }
    double epsilon() const { return eps_; }
    int order() const { return K_; }
    double g34() const { return g34_; }
    double gp34() const { return gp34_; }

    Jet lam0_jet(double t, int order) const;
    Jet lam_jet(double t, int order) const { return eps_ * lam0_jet(t, order); }
    Jet f0_jet(double t, int order) const;

    TemporalJets eval(double t) const;
    TemporalRatios ratios(double t) const;

    // sup over a time sweep of |d/dt lam0|; cached at construction
    double lam0_dot_sup() const { return lam0_dot_sup_; }

  private:
    friend TemporalProfiles build_temporal(double, double, double,
                                           const StationaryProfile&, int);

    Jet w_jet(double t, int order) const;  // w = -1/(t(T-t))
    Jet sigma_jet(double t, int order) const;

    double T_ = 0.0, delta_ = 0.0, eps_ = 0.0;
    double g34_ = 0.0, gp34_ = 0.0;
    double lam0_dot_sup_ = 0.0;
    int K_ = 8;
};

// Validates the two smallness conditions on epsilon:
//  - the C^2 norm of 1/(1-(3/4 lam')^2) stays below 10,
//  - 1-(eps z lam0')^2 > 1/2 on [0,T]x[0,1],
// raising EpsilonTooLarge otherwise.
TemporalProfiles build_temporal(double T, double delta, double epsilon,
                                const StationaryProfile& stationary,
                                int jet_order = 8);

}  // namespace wavecouple
