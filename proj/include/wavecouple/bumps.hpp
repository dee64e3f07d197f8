#pragma once

#include <array>

#include "wavecouple/flat.hpp"
#include "wavecouple/jet.hpp"

namespace wavecouple {

// Spatial bumps g_1, g_2, g_3 supported strictly inside
// [3/4 - d''/2, 3/4 + d''/2] with the jet normalisation
//   g_i^(j)(3/4) = 1 iff (i,j) in {(1,2),(2,3),(3,4)}, 0 otherwise for j <= 4.
//
// Each g_i is h_i(|z - 3/4|) with the matching parity, where h_i is a single
// polynomial piece whose fifth derivative has least L^2 norm among all
// candidates that are flat to order 5 at the support edge and carry the
// prescribed jets at 3/4. Keeping the fifth derivatives close to their
// theoretical floor ~ 6/r^3 is what keeps the V_zzz certificate margin open
// at usable amplitudes.
class BumpTriple {
  public:
    double support_radius() const { return r_; }
    // normalised profile H_i on [0,1]; g_i(s) = parity * r^(i+1) H_i(|s|/r)
    const Poly& profile(int i) const { return H_[i - 1]; }

    double g(int i, double z) const;
    Jet g_jet(int i, double z, int order) const;

  private:
    friend BumpTriple build_bumps(double);
    double r_ = 0.0;
    std::array<Poly, 3> H_;
    std::array<double, 3> scale_{};  // r^(i+1)
};

// The 5x5 lower-triangular jet-matching system for the alternative
// p_i(z-3/4)*beta(z) construction: given beta's jets at 3/4, returns the
// degree-4 polynomial whose product with beta carries the prescribed jets.
Poly solve_bump_poly(const Jet& beta_jets_at_34, int j_target);

BumpTriple build_bumps(double delta_double_prime);

}  // namespace wavecouple
