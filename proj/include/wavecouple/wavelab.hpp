#pragma once

#include <functional>
#include <memory>

#include "wavecouple/compat.hpp"
#include "wavecouple/coupling.hpp"
#include "wavecouple/grid.hpp"

namespace wavecouple {

// Cauchy data along a t-slice (value and time-velocity on the grid x-nodes)
// or an x-slice (value and space-derivative on the grid t-nodes).
struct CauchySlice {
    double position = 0.0;
    std::vector<double> value, velocity;
};

struct BoundaryTrace {
    Side side = Side::left;
    double T = 0.0;
    std::vector<double> value;  // uniform samples on [0, T]
    Jet jet0{0}, jetT{0};       // time jets at the ends

    double operator()(double t) const;
    double dt() const { return T / (value.size() - 1); }
};

struct SolveOptions {
    int scheme_order = 4;  // 2 = classic leapfrog
    double cfl = 0.7;
    double blowup = 1e6;
    int min_substeps = 1;
};

using TraceFn = std::function<double(double)>;

struct SystemSolution {
    Field u, v;
    CauchySlice u_final, v_final;  // value and velocity at t = T
    int substeps_per_output = 1;
};

// Explicit coupled solve of box_nu1 u = f1 + (nothing), box_nu2 v = f2 with
// Dirichlet traces; time is substepped to the CFL limit and sampled back to
// the output grid rows.
SystemSolution solve_forward(double nu1, double nu2, const CouplingSpec& coupling,
                             const CauchySlice& u0, const CauchySlice& v0, TraceFn u_left,
                             TraceFn u_right, TraceFn v_left, TraceFn v_right,
                             const Grid& grid, const SolveOptions& opt = {});

// Time-reversed solve from final data; equivalent to solve_forward under
// t -> T - t with negated velocity.
SystemSolution solve_backward(double nu1, double nu2, const CouplingSpec& coupling,
                              const CauchySlice& uT, const CauchySlice& vT, TraceFn u_left,
                              TraceFn u_right, TraceFn v_left, TraceFn v_right,
                              const Grid& grid, const SolveOptions& opt = {});

// d'Alembert exact controllability for the scalar homogeneous equation on a
// strip of length ell: initial data pin F, G on the data window, final data
// pin them after transport, and the uncovered middle is bridged with a
// two-point Hermite blend of order k.
struct DalembertControl {
    double nu = 1.0, T = 0.0, ell = 0.0;
    bool one_sided = false;
    Side control_side = Side::right;
    // F on [-nu T - ell, ell], G on [0, ell + nu T + ell], uniform tables
    std::vector<double> F, G;
    double f_lo = 0.0, g_lo = 0.0, ds = 1.0;

    double eval(double t, double x) const;
    double eval_dt(double t, double x) const;
    BoundaryTrace trace(Side side, int samples) const;
};

DalembertControl dalembert_two_sided(double nu, const CauchySlice& initial,
                                     const CauchySlice& final_slice, double T, double ell,
                                     int k);
DalembertControl dalembert_one_sided(double nu, Side control_side,
                                     const CauchySlice& initial,
                                     const CauchySlice& final_slice, double T, double ell,
                                     int k);

// Picard iteration for the semilinear boundary-controlled strip problem:
// each pass solves the source part with pinned homogeneous edges and steers
// the remaining linear part exactly by d'Alembert.
struct ControlledStrip {
    Field u, v;            // on the strip grid
    BoundaryTrace u_left, u_right, v_left, v_right;
    int iterations = 0;
    double contraction = 0.0;  // measured worst successive-ratio
};

struct StripProblem {
    double nu1 = 1.0, nu2 = 1.0;
    CouplingSpec coupling;
    // when the strip sits inside a larger domain, x0_global maps strip x to
    // global coordinates for the coupling shift fields
    double x0_global = 0.0;
    double t0_global = 0.0;
    CauchySlice u0, v0, uT, vT;
    bool left_controlled = true, right_controlled = true;  // else homogeneous
    int k = 4;
    double tol = 1e-10;
    int max_iterations = 25;
};

ControlledStrip semilinear_boundary_control(const StripProblem& prob, const Grid& strip_grid,
                                            const SolveOptions& opt = {});

// Sidewise march treating t as the evolution axis; slice carries (value,
// x-derivative) on the t-nodes at x = slice.position.
Field sidewise_solve(double nu, const CauchySlice& x_slice, int direction, const Grid& grid,
                     const std::function<double(double)>& row0 = {},
                     const std::function<double(double)>& rowT = {});

// Characteristic flux identity: along x(s) = x - nu1 (t - s),
//   int_0^t h(s, x - nu1 (t-s)) ds = [u_t + nu1 u_x](t, x - nu1 t + ...) - u1 - nu1 u0'.
// Returns the max defect over sample points whose characteristics stay in
// the domain.
double characteristic_flux_check(const Field& u, const Field& h, double nu1,
                                 const SpatialFn& u0, const SpatialFn& u1, int samples = 100);

// discrete leapfrog energy of the scalar homogeneous solve, for the
// conservation ledger
double leapfrog_energy_drift(double nu, const CauchySlice& u0, const Grid& grid, double cfl);

}  // namespace wavecouple
