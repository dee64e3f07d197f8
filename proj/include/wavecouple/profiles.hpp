#pragma once

#include <memory>

#include "wavecouple/bumps.hpp"
#include "wavecouple/stationary.hpp"
#include "wavecouple/temporal.hpp"

namespace wavecouple {

struct ProfileParams {
    double T = 1.7;
    double delta = 0.42;
    double epsilon = 2.25e-4;
    double delta_prime = 0.03;
    double delta_double_prime = 0.40;
    int jet_order = 8;
};

// Everything section-3.1 shaped: the stationary pair, the three bumps and the
// temporal family, built once and shared immutably.
struct ProfileSet {
    ProfileParams params;
    StationaryProfile stationary;
    BumpTriple bumps;
    TemporalProfiles temporal;
};

std::shared_ptr<const ProfileSet> build_profiles(const ProfileParams& params);

}  // namespace wavecouple
