#include "wavecouple/compat.hpp"

#include <cmath>

#include "wavecouple/errors.hpp"

namespace wavecouple {

namespace {

// dense bivariate divided-power jet, truncated at orders (mt, mx)
struct DP {
    int mt, mx;
    std::vector<std::vector<double>> c;
    DP(int t, int x) : mt(t), mx(x), c(t + 1, std::vector<double>(x + 1, 0.0)) {}
};

DP dp_mul(const DP& a, const DP& b) {
    DP r(a.mt, a.mx);
    for (int i = 0; i <= a.mt; ++i)
        for (int j = 0; j <= a.mx; ++j) {
            double s = 0.0;
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q) s += a.c[p][q] * b.c[i - p][j - q];
            r.c[i][j] = s;
        }
    return r;
}

DP dp_axpy(const DP& a, const DP& b, double coeff) {
    DP r = a;
    for (int i = 0; i <= r.mt; ++i)
        for (int j = 0; j <= r.mx; ++j) r.c[i][j] += coeff * b.c[i][j];
    return r;
}

DP dp_poly2(const Poly2& f, const DP& u, const DP& v) {
    DP s(u.mt, u.mx);
    const auto& rows = f.coeffs();
    for (size_t k = rows.size(); k-- > 0;) {
        DP row(u.mt, u.mx);  // row(v) = sum_l c[k][l] v^l by Horner
        for (size_t l = rows[k].size(); l-- > 0;) {
            row = dp_mul(row, v);
            row.c[0][0] += rows[k][l];
        }
        s = dp_mul(s, u);
        s = dp_axpy(s, row, 1.0);
    }
    return s;
}

Poly2 effective_f(const CouplingSpec& spec, int equation) {
    // near the corners shifted couplings reduce to their unshifted core: the
    // return trajectory vanishes flat at t in {0,T} and near x in {0,L}
    if (equation == 1) {
        if (spec.kind == CouplingSpec::Kind::general) return spec.f1_poly;
        return Poly2::zero();
    }
    if (spec.kind == CouplingSpec::Kind::general) return spec.f2_poly;
    return Poly2::cubic_u();
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

CornerTable corner_table(const EndpointData& data, const CouplingSpec& spec, double nu1,
                         double nu2, double L, Corner corner, int k) {
    const bool final_side =
        corner == Corner::final_left || corner == Corner::final_right;
    const bool right = corner == Corner::initial_right || corner == Corner::final_right;
    const double x = right ? L : 0.0;
    const SpatialFn& a0 = final_side ? data.u0f : data.u0;
    const SpatialFn& a1 = final_side ? data.u1f : data.u1;
    const SpatialFn& b0 = final_side ? data.v0f : data.v0;
    const SpatialFn& b1 = final_side ? data.v1f : data.v1;

    CornerTable tab;
    tab.u.assign(k + 1, std::vector<double>(k + 3, 0.0));
    tab.v.assign(k + 1, std::vector<double>(k + 3, 0.0));
    const Jet ju0 = a0.jet(x, k + 2), ju1 = a1.jet(x, k + 2);
    const Jet jv0 = b0.jet(x, k + 2), jv1 = b1.jet(x, k + 2);
    for (int j = 0; j <= k + 2; ++j) {
        tab.u[0][j] = ju0.derivative(j);
        tab.v[0][j] = jv0.derivative(j);
        if (k >= 1) {
            tab.u[1][j] = ju1.derivative(j);
            tab.v[1][j] = jv1.derivative(j);
        }
    }
    const Poly2 f1 = effective_f(spec, 1);
    const Poly2 f2 = effective_f(spec, 2);
    for (int m = 0; m + 2 <= k; ++m) {
        // divided-power tables of u, v complete to time order m
        DP du(m, k + 2), dv(m, k + 2);
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= k + 2; ++j) {
                const double scale = factorial(i) * factorial(j);
                du.c[i][j] = tab.u[i][j] / scale;
                dv.c[i][j] = tab.v[i][j] / scale;
            }
        const DP w1 = dp_poly2(f1, du, dv);
        const DP w2 = dp_poly2(f2, du, dv);
        for (int j = 0; j + m + 2 <= k + 2; ++j) {
            const double scale = factorial(m) * factorial(j);
            tab.u[m + 2][j] = nu1 * nu1 * tab.u[m][j + 2] + w1.c[m][j] * scale;
            tab.v[m + 2][j] = nu2 * nu2 * tab.v[m][j + 2] + w2.c[m][j] * scale;
        }
    }
    return tab;
}

double corner_derivative(const EndpointData& data, const CouplingSpec& spec, double nu1,
                         double nu2, double L, int n, Corner corner, int equation, int k) {
    if (n > k) throw OrderTooLow("corner derivative order exceeds the table order");
    const CornerTable tab = corner_table(data, spec, nu1, nu2, L, corner, k);
    return equation == 1 ? tab.u[n][0] : tab.v[n][0];
}

std::vector<CompatViolation> check_compatibility(const EndpointData& data,
                                                 const CouplingSpec& spec, double nu1,
                                                 double nu2, double L, int k, double tol) {
    std::vector<CompatViolation> out;
    const Corner corners[4] = {Corner::initial_left, Corner::initial_right,
                               Corner::final_left, Corner::final_right};
    std::vector<CornerTable> tabs;
    for (const Corner c : corners) tabs.push_back(corner_table(data, spec, nu1, nu2, L, c, k));
    for (int n = 0; n <= k; ++n)
        for (int ci = 0; ci < 4; ++ci)
            for (int eq = 1; eq <= 2; ++eq) {
                const double v = eq == 1 ? tabs[ci].u[n][0] : tabs[ci].v[n][0];
                if (std::abs(v) > tol) out.push_back({corners[ci], eq, n, v});
            }
    return out;
}

std::vector<BoundaryJetRequirement> boundary_control_jets(const EndpointData& data,
                                                          const CouplingSpec& spec,
                                                          double nu1, double nu2, double L,
                                                          int k,
                                                          const std::vector<Side>& sides) {
    std::vector<BoundaryJetRequirement> out;
    for (const Side s : sides) {
        const Corner cs[2] = {s == Side::left ? Corner::initial_left : Corner::initial_right,
                              s == Side::left ? Corner::final_left : Corner::final_right};
        for (const Corner c : cs) {
            const CornerTable tab = corner_table(data, spec, nu1, nu2, L, c, k);
            for (int eq = 1; eq <= 2; ++eq) {
                BoundaryJetRequirement req;
                req.corner = c;
                req.equation = eq;
                for (int n = 0; n <= k; ++n)
                    req.dt_jets.push_back(eq == 1 ? tab.u[n][0] : tab.v[n][0]);
                out.push_back(std::move(req));
            }
        }
    }
    return out;
}

}  // namespace wavecouple
