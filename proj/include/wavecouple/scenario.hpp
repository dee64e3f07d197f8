#pragma once

#include <map>
#include <string>

#include "wavecouple/compat.hpp"
#include "wavecouple/coupling.hpp"
#include "wavecouple/grid.hpp"

namespace wavecouple {

// Flat `key = value` configuration with `#` comments and dotted keys.
struct Scenario {
    double nu1 = 225.0, nu2 = 225.0;
    double L = 37.2, T = 1.7;
    double a = 17.2, b = 20.08;
    std::string coupling = "cubic";  // cubic | linear+cubic | linear
    double coupling_scale = 1.0;     // the c in f2 = c u
    int nt = 801, nx = 801;
    double delta = 0.36, epsilon0 = 0.73;
    double kappa = 0.0;  // 0 = pick the normalizing power of two
    double eta = 1e-3;
    int jet_order = 8, compat_order = 4;
    double delta_prime = 0.03, delta_double_prime = 0.40;
    int audit_refine = 4;
    double tol_pde = 1e-8, tol_newton = 1e-7, tol_support = 1e-8;
    double tol_endpoint = 1e-12, tol_compat = 1e-9, tol_picard = 1e-10;
    std::string data_kind = "sine";  // zero | sine | bump | file
    int data_mode = 1;
    double data_amplitude = 1e-3;
    double data_center = 0.5, data_width = 0.2;
    std::string data_final = "zero";
    std::string data_file;

    static Scenario parse(const std::string& text);
    static Scenario load(const std::string& path);
    std::string serialize() const;

    Grid grid() const { return Grid{T, L, nt, nx}; }
    EndpointData make_data() const;
    CouplingSpec make_coupling() const;
    void validate() const;  // OutOfDomain / ParseError on bad combinations
};

// bundled scenarios: the return-trajectory laboratory and the steering run
Scenario default_scenario();
Scenario steering_scenario();

}  // namespace wavecouple
