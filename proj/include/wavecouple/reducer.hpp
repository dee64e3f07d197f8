#pragma once

#include <optional>

#include "wavecouple/fictitious.hpp"
#include "wavecouple/geometry.hpp"
#include "wavecouple/trajectory.hpp"

namespace wavecouple {

struct Residual {
    Field r1, r2;
    double inf1() const { return r1.max_abs(); }
    double inf2() const { return r2.max_abs(); }
};

struct PipelineState {
    Field u, v, h;
    // analytic channel: box_nu2 of the return part of v equals (kappa ubar)^3
    // exactly, so the wave operator of v is evaluated as ubar^3 plus the
    // finite-difference operator of (v - vbar)
    const ReturnTrajectory* traj = nullptr;
    double nu1 = 1.0, nu2 = 1.0;
};

// D(u,v,h) = (box_nu1 u - f1(u,v) - h, box_nu2 v - f2(u,v)); the coupling is
// the plain system coupling (not shifted) since the state carries the full
// fields.
Residual apply_D(const PipelineState& z, const CouplingSpec& spec);

// directional derivative of D at z in direction (du, dv, dh)
Residual linearize(const PipelineState& z, const CouplingSpec& spec, const Field& du,
                   const Field& dv, const Field& dh);

struct Increment {
    Field du, dv, dh;
};

// Explicit right inverse of the linearization:
//   dv = 0, du = -r2 / (df2/du), dh = box_nu1 du - (df1/du) du - r1,
// applied on the hull mask (FloorViolated if |df2/du| dips below the floor
// there) and zero outside.
Increment infinitesimal_inverse(const PipelineState& z, const CouplingSpec& spec,
                                const Field& r1, const Field& r2, const Hull& hull);

struct NewtonTrace {
    std::vector<double> residual_inf;
    std::vector<double> damping;
};

struct ReduceResult {
    PipelineState z;
    NewtonTrace trace;
    double final_residual = 0.0;
    int iterations = 0;
};

struct ReduceOptions {
    double tol = 1e-7;
    int max_iterations = 25;
    double floor_scale = 1e-6;  // floor = scale * max |df2/du| on the hull
};

// Damped Newton z <- z + M_z(-D(z)) on the hull; outside the hull the triple
// is left untouched.
ReduceResult reduce_to_one_control(PipelineState z, const CouplingSpec& spec,
                                   const Hull& hull, const ReduceOptions& opt = {});

}  // namespace wavecouple
