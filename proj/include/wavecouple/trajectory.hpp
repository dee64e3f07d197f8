#pragma once

#include <vector>

#include "wavecouple/elementary.hpp"
#include "wavecouple/grid.hpp"

namespace wavecouple {

struct SupportBox {
    double t0 = 0.0, t1 = 0.0, x0 = 0.0, x1 = 0.0;
    bool contains(double t, double x) const {
        return t >= t0 && t <= t1 && x >= x0 && x <= x1;
    }
};

enum class TrajectoryKind { ret, steered, corrected };

struct TrajectoryTriple {
    Field u, v, h;
    SupportBox box;
    TrajectoryKind kind = TrajectoryKind::ret;
};

// Superposition of elementary return trajectories with pairwise disjoint
// supports; the cube of the sum is then the sum of cubes pointwise and the
// pair stays an exact trajectory of the cubic system.
class ReturnTrajectory {
  public:
    explicit ReturnTrajectory(std::vector<Elementary> parts);

    const std::vector<Elementary>& parts() const { return parts_; }
    // (kappa u, kappa^3 v, kappa h) is again a return trajectory; a power of
    // two keeps every scaling exact in floating point
    void set_scale(double kappa) { kappa_ = kappa; }
    double scale() const { return kappa_; }
    // largest power of two with kappa * sup|ubar| <= 1
    double normalizing_scale(const Grid& grid) const;
    double ubar(double t, double x) const;
    double vbar(double t, double x) const;
    double V(double t, double x) const;  // box_{nu2} vbar, analytic channel
    SupportBox support() const;

    // u, v on the analytic channel; h = box_{nu1} u by 4th-order finite
    // differences, zeroed exactly outside the support box
    TrajectoryTriple sample(const Grid& grid, double nu1) const;

    // per-row evaluation caches for solver-speed sampling
    struct RowCache {
        std::vector<Elementary::Row> rows;
        double t = 0.0;
    };
    RowCache row(double t) const;
    double ubar_on_row(const RowCache& rc, double x) const;
    double vbar_on_row(const RowCache& rc, double x) const;

  private:
    int part_index(double x) const;
    std::vector<Elementary> parts_;
    double kappa_ = 1.0;
};

TrajectoryTriple scale_triple(const TrajectoryTriple& triple, double kappa);

// max |box_{nu2} v - u^3| over the grid using the analytic channel
double pde_residual_inf(const ReturnTrajectory& traj, const Grid& grid, double nu2);

// Endpoint flatness: max over x of |v|, |v_t|, |u|, |u_t| at t in {0, T}
double endpoint_flatness(const ReturnTrajectory& traj, const Grid& grid);

struct RefinementReport {
    double d12 = 0.0, d23 = 0.0;
    double order = 0.0;
};

// Local dyadic study of the finite-difference wave operator of ubar against
// itself on grids h, h/2, h/4 centered on one elementary support.
RefinementReport hbar_refinement_study(const Elementary& e, double h0, int nt_probe = 33,
                                       int nx_probe = 65);

// FD estimates of d^n u / dx^n (n = 1..3) on the lines z = 3/4, z = 1 and
// x = x0; returns the worst ratio deviation |est(h/2)/est(h) - 1| over the
// probes where the estimate is not at the noise floor.
double ubar_derivative_boundedness(const Elementary& e, double h0);

}  // namespace wavecouple
