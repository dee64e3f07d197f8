#include "wavecouple/grid.hpp"

#include <cmath>

namespace wavecouple {

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
    // Fornberg, SIAM Rev. 40 (1998); weights for d^m/dx^m at x0
    const int n = static_cast<int>(nodes.size()) - 1;
    std::vector<std::vector<double>> d(m + 1, std::vector<double>(n + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    d[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    d[k][i] = c1 * (k * d[k - 1][i - 1] - c5 * d[k][i - 1]) / c2;
                d[0][i] = -c1 * c5 * d[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                d[k][j] = (c4 * d[k][j] - k * d[k - 1][j]) / c3;
            d[0][j] = c4 * d[0][j] / c3;
        }
        c1 = c2;
    }
    return d[m];
}

namespace {

// 4th-order second-derivative row weights for a 1-D line of n nodes
struct D2Stencils {
    std::vector<double> interior;          // offsets -2..2
    std::vector<std::vector<double>> edge; // rows 0,1 on nodes 0..5
    explicit D2Stencils(double h) {
        std::vector<double> off = {-2 * h, -h, 0, h, 2 * h};
        interior = fd_weights(0.0, off, 2);
        for (int r = 0; r < 2; ++r) {
            std::vector<double> nodes(6);
            for (int i = 0; i < 6; ++i) nodes[i] = (i - r) * h;
            edge.push_back(fd_weights(0.0, nodes, 2));
        }
    }
};

}  // namespace

Field d2_fd4(const Field& f, int axis) {
    const Grid& g = f.grid;
    const int n = (axis == 0) ? g.nt : g.nx;
    if (n < 6) throw CflViolation("grid too coarse for the 4th-order stencil");
    const double h = (axis == 0) ? g.dt() : g.dx();
    D2Stencils st(h);
    Field r(g, f.name + (axis == 0 ? "_tt" : "_xx"));
    auto val = [&](int i, int j, int k) { return (axis == 0) ? f.at(k, j) : f.at(i, k); };
    for (int it = 0; it < g.nt; ++it) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const int k0 = (axis == 0) ? it : ix;
            double s = 0.0;
            if (k0 >= 2 && k0 <= n - 3) {
                for (int o = -2; o <= 2; ++o) s += st.interior[o + 2] * val(it, ix, k0 + o);
            } else if (k0 < 2) {
                const auto& w = st.edge[k0];
                for (int i = 0; i < 6; ++i) s += w[i] * val(it, ix, i);
            } else {
                const auto& w = st.edge[n - 1 - k0];
                for (int i = 0; i < 6; ++i) s += w[i] * val(it, ix, n - 1 - i);
            }
            r.at(it, ix) = s;
        }
    }
    return r;
}

Field box_fd4(const Field& f, double nu) {
    Field tt = d2_fd4(f, 0);
    const Field xx = d2_fd4(f, 1);
    for (size_t i = 0; i < tt.v.size(); ++i) tt.v[i] -= nu * nu * xx.v[i];
    tt.name = "box_" + f.name;
    return tt;
}

}  // namespace wavecouple
