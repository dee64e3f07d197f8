#include "wavecouple/profiles.hpp"

namespace wavecouple {

std::shared_ptr<const ProfileSet> build_profiles(const ProfileParams& params) {
    auto sp = build_stationary(params.delta_prime, params.delta_double_prime);
    auto bt = build_bumps(params.delta_double_prime);
    auto tp = build_temporal(params.T, params.delta, params.epsilon, sp, params.jet_order);
    return std::make_shared<const ProfileSet>(
        ProfileSet{params, std::move(sp), std::move(bt), std::move(tp)});
}

}  // namespace wavecouple
