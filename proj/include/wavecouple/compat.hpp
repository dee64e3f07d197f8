#pragma once

#include <functional>
#include <vector>

#include "wavecouple/coupling.hpp"
#include "wavecouple/jet.hpp"

namespace wavecouple {

// Spatial function with jet evaluation; the endpoint-data slot type.
struct SpatialFn {
    std::function<Jet(double x, int order)> jets;
    double operator()(double x) const { return jets(x, 0).value(); }
    Jet jet(double x, int order) const { return jets(x, order); }

    static SpatialFn zero() {
        return {[](double, int order) { return Jet(order); }};
    }
};

// Initial and final slices (u0,u1,v0,v1) and (u0f,u1f,v0f,v1f) on [0,L].
struct EndpointData {
    SpatialFn u0 = SpatialFn::zero(), u1 = SpatialFn::zero();
    SpatialFn v0 = SpatialFn::zero(), v1 = SpatialFn::zero();
    SpatialFn u0f = SpatialFn::zero(), u1f = SpatialFn::zero();
    SpatialFn v0f = SpatialFn::zero(), v1f = SpatialFn::zero();
};

enum class Corner { initial_left, initial_right, final_left, final_right };

struct CornerTable {
    // raw mixed derivatives d_t^i d_x^j at the corner, time order <= k
    std::vector<std::vector<double>> u, v;
};

// Propagates the endpoint jets through the recurrence
//   d_t^(m+2) u = nu1^2 d_x^2 d_t^m u + d_t^m f1(u,v)
//   d_t^(m+2) v = nu2^2 d_x^2 d_t^m v + d_t^m f2(u,v)
// (the control is supported away from the corners).
CornerTable corner_table(const EndpointData& data, const CouplingSpec& spec, double nu1,
                         double nu2, double L, Corner corner, int k);

// value of d_t^n (u or v) at the corner; equation 1 = u, 2 = v
double corner_derivative(const EndpointData& data, const CouplingSpec& spec, double nu1,
                         double nu2, double L, int n, Corner corner, int equation, int k);

struct CompatViolation {
    Corner corner;
    int equation = 0;  // 1 = u, 2 = v
    int n = 0;
    double value = 0.0;
};

// every (corner, equation, n <= k) whose corner derivative exceeds tol;
// sorted by n so the order-k list extends the order-(k-1) list
std::vector<CompatViolation> check_compatibility(const EndpointData& data,
                                                 const CouplingSpec& spec, double nu1,
                                                 double nu2, double L, int k,
                                                 double tol = 1e-9);

struct BoundaryJetRequirement {
    Corner corner;
    int equation = 0;
    std::vector<double> dt_jets;  // required d_t^n H at the corner, n = 0..k
};

enum class Side { left, right };

// time jets any admissible boundary control must carry at the controlled
// side's corners
std::vector<BoundaryJetRequirement> boundary_control_jets(const EndpointData& data,
                                                          const CouplingSpec& spec,
                                                          double nu1, double nu2, double L,
                                                          int k, const std::vector<Side>& sides);

}  // namespace wavecouple
