#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wavecouple/reducer.hpp"
#include "wavecouple/scenario.hpp"

namespace wavecouple {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct VerifySummary {
    std::vector<CriterionResult> items;
    bool all_pass() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    std::string text() const;
};

// Shared pipeline pieces -----------------------------------------------------

struct TrajectoryRun {
    Scenario scenario;
    CoveringSet covering;
    std::shared_ptr<const ProfileSet> profiles;
    std::unique_ptr<ReturnTrajectory> traj;  // kappa-normalized
    TrajectoryTriple triple;
};

TrajectoryRun run_trajectory(const Scenario& s);

struct SteerRun {
    TrajectoryRun traj;   // traj.traj may be null on the non-degenerate path
    SteeringPlan plan;
    SteeringResult steer;
};

SteerRun run_steer(const Scenario& s, bool with_trajectory, double alpha = 1.0);

struct ReduceRun {
    SteerRun steer;
    ReduceResult reduced;
    Hull hull;
    double slice_move = 0.0;
    double h_outside_band = 0.0;
    double v_residual = 0.0;
};

ReduceRun run_reduce(const Scenario& s, bool with_trajectory, double alpha = 1.0,
                     double tol_scale = 1.0);

// Acceptance-style checks ----------------------------------------------------

std::vector<CriterionResult> verify_trajectory_block(const Scenario& s);  // 1..5
std::vector<CriterionResult> verify_dalembert_block();                    // 6
std::vector<CriterionResult> verify_steering_block(const Scenario& s);    // 7, 9
std::vector<CriterionResult> verify_reduction_block(const Scenario& s);   // 8
std::vector<CriterionResult> verify_scaling_block(const Scenario& s);     // 10
std::vector<CriterionResult> verify_compat_block(const Scenario& s);      // 11
std::vector<CriterionResult> verify_nondegenerate_block(const Scenario& s);  // 12

VerifySummary run_verify(const Scenario& traj_scn, const Scenario& steer_scn);

}  // namespace wavecouple
