#include "wavecouple/bumps.hpp"

#include <cmath>
#include <vector>

#include "wavecouple/errors.hpp"

namespace wavecouple {

namespace {

// dense Gaussian elimination with partial pivoting, small systems only
std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        if (std::abs(A[piv][c]) < 1e-14) throw SingularSystem("bump design system is singular");
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < n; ++r) {
            const double f = A[r][c] / A[c][c];
            for (int k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return x;
}

// Near-minimax fifth derivative q on [0,1] subject to the linear jet
// constraints, via Lawson-weighted least squares; H is then the quintuple
// antiderivative of q vanishing to order 5 at y = 1.
Poly design_profile(int j_target, bool pin_q0) {
    const int deg = 12;
    const int nc = deg + 1;
    // constraint rows: H^(k)(0) = delta_{k,j_target} for k = 0..4, q(1) = 0,
    // optionally q(0) = 0
    std::vector<std::vector<double>> C;
    std::vector<double> rhs;
    for (int k = 0; k <= 4; ++k) {
        // H^(k)(0) = -(-1)^(4-k)/(4-k)! * int u^(4-k) q(u) du
        const int p = 4 - k;
        double fact = 1.0;
        for (int i = 2; i <= p; ++i) fact *= i;
        const double pref = -((p % 2 == 0) ? 1.0 : -1.0) / fact;
        std::vector<double> row(nc);
        for (int l = 0; l < nc; ++l) row[l] = pref / (p + l + 1.0);
        C.push_back(row);
        rhs.push_back(k == j_target ? 1.0 : 0.0);
    }
    {
        std::vector<double> row(nc, 1.0);  // q(1) = sum a_l
        C.push_back(row);
        rhs.push_back(0.0);
    }
    if (pin_q0) {
        // even profile: H^(5)(0) = q(0) must vanish so the |s|-composition
        // stays odd-derivative-free at the center
        std::vector<double> row(nc, 0.0);
        row[0] = 1.0;
        C.push_back(row);
        rhs.push_back(0.0);
    } else {
        // odd profile: H^(6)(0) = q'(0) must vanish, otherwise the composed
        // field picks up a second-derivative kink on the contact line
        std::vector<double> row(nc, 0.0);
        row[1] = 1.0;
        C.push_back(row);
        rhs.push_back(0.0);
    }
    const int m = static_cast<int>(C.size());

    const int nodes = 161;
    std::vector<double> u(nodes), w(nodes, 1.0);
    for (int j = 0; j < nodes; ++j) u[j] = static_cast<double>(j) / (nodes - 1);

    std::vector<double> coeffs(nc, 0.0);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = nc + m;
        std::vector<std::vector<double>> K(n, std::vector<double>(n, 0.0));
        std::vector<double> b(n, 0.0);
        for (int j = 0; j < nodes; ++j) {
            std::vector<double> phi(nc);
            phi[0] = 1.0;
            for (int l = 1; l < nc; ++l) phi[l] = phi[l - 1] * u[j];
            for (int i = 0; i < nc; ++i)
                for (int l = 0; l < nc; ++l) K[i][l] += 2.0 * w[j] * phi[i] * phi[l];
        }
        for (int r = 0; r < m; ++r)
            for (int l = 0; l < nc; ++l) {
                K[l][nc + r] = C[r][l];
                K[nc + r][l] = C[r][l];
            }
        for (int r = 0; r < m; ++r) b[nc + r] = rhs[r];
        const std::vector<double> sol = solve_dense(std::move(K), std::move(b));
        coeffs.assign(sol.begin(), sol.begin() + nc);
        // Lawson update toward the weighted-Chebyshev solution
        double wsum = 0.0;
        for (int j = 0; j < nodes; ++j) {
            double q = 0.0;
            for (int l = nc - 1; l >= 0; --l) q = q * u[j] + coeffs[l];
            w[j] *= std::abs(q) + 1e-12;
            wsum += w[j];
        }
        for (double& x : w) x /= wsum;
    }
    // restore the constraints to machine precision with a few rounds of
    // a -= C^T (C C^T)^-1 (C a - b)
    for (int round = 0; round < 4; ++round) {
        std::vector<double> viol(m, 0.0);
        for (int r = 0; r < m; ++r) {
            double s = -rhs[r];
            for (int l = 0; l < nc; ++l) s += C[r][l] * coeffs[l];
            viol[r] = s;
        }
        std::vector<std::vector<double>> CCt(m, std::vector<double>(m, 0.0));
        for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s)
                for (int l = 0; l < nc; ++l) CCt[r][s] += C[r][l] * C[s][l];
        const std::vector<double> mu = solve_dense(std::move(CCt), std::move(viol));
        for (int l = 0; l < nc; ++l)
            for (int r = 0; r < m; ++r) coeffs[l] -= C[r][l] * mu[r];
    }
    Poly q(std::move(coeffs), 0.0);
    // quintuple antiderivative, re-anchored to vanish at 1 after each pass
    Poly H = q;
    for (int pass = 0; pass < 5; ++pass) {
        Poly a = H.antiderivative();
        std::vector<double> c = a.coeffs();
        c[0] -= a(1.0);
        H = Poly(std::move(c), 0.0);
    }
    // The repeated anchored integration of large alternating coefficients
    // loses ~8 digits at y = 0. Cancel the measured jet defects with tiny
    // corrections in the edge-flat basis y^k (1-y)^6 (triangular at 0).
    {
        std::array<double, 5> err{};
        Poly d = H;
        for (int k = 0; k <= 4; ++k) {
            if (k > 0) d = d.derivative();
            err[k] = d(0.0) - (k == j_target ? 1.0 : 0.0);
        }
        // jets of y^k(1-y)^6 at 0: (d/dy)^j [y^k(1-y)^6](0) =
        // j!/(j-k)! * C(6, j-k) (-1)^(j-k) * ... handled by direct expansion
        std::array<Poly, 5> basis;
        for (int k = 0; k <= 4; ++k) {
            std::vector<double> mono(k + 1, 0.0);
            mono[k] = 1.0;
            Poly yk(mono, 0.0);
            std::vector<double> om = {1.0, -1.0};
            Poly omy(om, 0.0);
            Poly b = yk;
            for (int i = 0; i < 6; ++i) {
                std::vector<double> prod(b.degree() + 2, 0.0);
                for (int l = 0; l <= b.degree(); ++l) {
                    prod[l] += b.coeffs()[l];
                    prod[l + 1] -= b.coeffs()[l];
                }
                b = Poly(std::move(prod), 0.0);
            }
            basis[k] = b;
        }
        std::array<double, 5> e{};
        for (int j = 0; j <= 4; ++j) {
            double resid = err[j];
            for (int k = 0; k < j; ++k) {
                Poly d2 = basis[k];
                for (int i = 0; i < j; ++i) d2 = d2.derivative();
                resid -= e[k] * d2(0.0);
            }
            Poly dj = basis[j];
            for (int i = 0; i < j; ++i) dj = dj.derivative();
            e[j] = resid / dj(0.0);
        }
        std::vector<double> c = H.coeffs();
        for (int k = 0; k <= 4; ++k)
            for (int l = 0; l <= basis[k].degree(); ++l) {
                if (static_cast<size_t>(l) >= c.size()) c.resize(l + 1, 0.0);
                c[l] -= e[k] * basis[k].coeffs()[l];
            }
        H = Poly(std::move(c), 0.0);
    }
    return H;
}

}  // namespace

Poly solve_bump_poly(const Jet& beta_jets_at_34, int j_target) {
    // Row j: sum_{m<=j} C(j,m) m! beta^(j-m)(3/4) a_m = delta_{j,j_target};
    // lower triangular with diagonal m! beta(3/4).
    if (beta_jets_at_34.order() < 4) throw OrderTooLow("need beta jets to order 4");
    if (std::abs(beta_jets_at_34.value()) < 1e-12)
        throw SingularSystem("beta vanishes at 3/4");
    std::array<double, 5> beta_d{};
    for (int k = 0; k <= 4; ++k) beta_d[k] = beta_jets_at_34.derivative(k);
    std::array<double, 5> fact = {1.0, 1.0, 2.0, 6.0, 24.0};
    auto binom = [](int n, int k) {
        double r = 1.0;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    std::array<double, 5> a{};
    for (int j = 0; j <= 4; ++j) {
        double rhs = (j == j_target) ? 1.0 : 0.0;
        for (int m = 0; m < j; ++m) rhs -= binom(j, m) * fact[m] * beta_d[j - m] * a[m];
        a[j] = rhs / (fact[j] * beta_d[0]);
    }
    return Poly(std::vector<double>(a.begin(), a.end()), 0.0);
}

double BumpTriple::g(int i, double z) const {
    const double s = z - 0.75;
    const double as = std::abs(s);
    if (as >= r_) return 0.0;
    const double v = scale_[i - 1] * H_[i - 1](as / r_);
    const bool odd = (i == 2);
    return (odd && s < 0.0) ? -v : v;
}

Jet BumpTriple::g_jet(int i, double z, int order) const {
    const double s = z - 0.75;
    if (std::abs(s) >= r_) return Jet(order);
    const Jet zj = Jet::variable(z, order);
    const bool odd = (i == 2);
    if (s >= 0.0) {
        const Jet y = (zj - 0.75) / r_;
        return scale_[i - 1] * H_[i - 1].eval(y);
    }
    const Jet y = (0.75 - zj) / r_;
    const Jet v = scale_[i - 1] * H_[i - 1].eval(y);
    return odd ? -v : v;
}

BumpTriple build_bumps(double delta_double_prime) {
    if (!(delta_double_prime > 0.0 && delta_double_prime < 0.5))
        throw NoSolution("delta_double_prime must lie in (0, 1/2)");
    BumpTriple b;
    b.r_ = 0.95 * 0.5 * delta_double_prime;  // support strictly inside the window
    for (int i = 1; i <= 3; ++i) {
        const bool odd = (i == 2);
        b.H_[i - 1] = design_profile(i + 1, /*pin_q0=*/!odd);
        b.scale_[i - 1] = std::pow(b.r_, i + 1);
    }
    return b;
}

}  // namespace wavecouple
