#pragma once

#include <optional>

#include "wavecouple/compat.hpp"
#include "wavecouple/geometry.hpp"
#include "wavecouple/trajectory.hpp"
#include "wavecouple/wavelab.hpp"

namespace wavecouple {

// Time cutoff phi (1 near t = 0, 0 near t = T, transitions inside
// [delta, T-delta]) and space cutoff xi (1 on the strips and gaps, 0 on the
// rectangle cores).
struct SteeringPlan {
    CoveringSet covering;
    std::vector<double> gap_margins;  // delta_i per gap
    double t1 = 0.0, t2 = 0.0;        // seam rows for the strip constructions
    // the space transitions start this far inside each rectangle so the
    // stencil bleed of the residual stays inside Q_delta
    double inset = 0.0;

    double phi(double t) const;
    double xi(double x) const;
};

SteeringPlan build_plan(const CoveringSet& covering);

struct SteerConfig {
    double nu1 = 1.0, nu2 = 1.0;
    Grid grid;              // emission grid
    int audit_refine = 4;   // time refinement for building and auditing
    int compat_order = 4;
    double compat_tol = 1e-9;
    double picard_tol = 1e-10;
    CouplingSpec base_coupling = CouplingSpec::cubic();
    SolveOptions solver;
};

struct SteeringResult {
    Field u, v, h1, h2;  // on the emission grid
    double endpoint_error = 0.0;     // worst data mismatch of the slices
    double h1_peak = 0.0, h2_peak = 0.0;
    double h1_outside = 0.0, h2_outside = 0.0;   // outside Q_delta, audit grid
    double h1_outside2 = 0.0, h2_outside2 = 0.0; // outside the 2delta margin
    double data_norm = 0.0, u_norm = 0.0, v_norm = 0.0;
    int picard_iterations = 0;
};

// The two-fictitious-control construction: global forward and backward
// solutions blended in time on the rectangles, boundary-controlled strips
// outside, blended in space across the rectangle margins. The emitted
// controls are the equation residuals, supported in Q_delta.
SteeringResult steer_two_controls(const SteerConfig& cfg, const SteeringPlan& plan,
                                  const ReturnTrajectory* shift, const EndpointData& data);

struct SupportAudit {
    double peak = 0.0, outside = 0.0, outside2 = 0.0;
};

// max |h| outside Q_delta and outside the 2delta-margin analogue
SupportAudit support_audit(const Field& h, const CoveringSet& covering);

}  // namespace wavecouple
