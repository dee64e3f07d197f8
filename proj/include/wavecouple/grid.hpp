#pragma once

#include <string>
#include <vector>

#include "wavecouple/errors.hpp"

namespace wavecouple {

struct Grid {
    double T = 1.0, L = 1.0;
    int nt = 2, nx = 2;

    double dt() const { return T / (nt - 1); }
    double dx() const { return L / (nx - 1); }
    double t(int it) const { return T * it / (nt - 1); }
    double x(int ix) const { return L * ix / (nx - 1); }
    bool operator==(const Grid& o) const {
        return T == o.T && L == o.L && nt == o.nt && nx == o.nx;
    }
};

// Sampled scalar field, row-major by t. `analytic` marks values coming from
// closed forms rather than a discrete solve.
struct Field {
    Grid grid;
    std::string name;
    std::vector<double> v;
    bool analytic = false;

    Field() = default;
    Field(const Grid& g, std::string n, double fill = 0.0)
        : grid(g), name(std::move(n)), v(static_cast<size_t>(g.nt) * g.nx, fill) {}

    double& at(int it, int ix) { return v[static_cast<size_t>(it) * grid.nx + ix]; }
    double at(int it, int ix) const { return v[static_cast<size_t>(it) * grid.nx + ix]; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
};

// 4th-order finite-difference weights on uniform offsets for derivative m,
// one-sided near the edges (Fornberg's algorithm).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

// box_nu f = f_tt - nu^2 f_xx at 4th order with one-sided closures.
Field box_fd4(const Field& f, double nu);

// second derivative along one axis at 4th order (axis 0 = t, 1 = x)
Field d2_fd4(const Field& f, int axis);

}  // namespace wavecouple
