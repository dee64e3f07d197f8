#pragma once

#include <memory>

#include "wavecouple/profiles.hpp"

namespace wavecouple {

struct ElementaryParams {
    double x0 = 0.0;   // center in real coordinates
    double nu2 = 1.0;  // second wave speed; space is rescaled so nu2 = 1 internally
    std::shared_ptr<const ProfileSet> profiles;
};

// The elementary return trajectory
//   vbar(t,x) = sum_i f_i(t) g_i(|x-x0|/lambda(t))   (nu2-scaled space)
//   ubar = (box_{nu2} vbar)^{1/3},
// evaluated pointwise from the analytic jets of the profiles.
class Elementary {
  public:
    explicit Elementary(const ElementaryParams& params);

    const ElementaryParams& params() const { return p_; }
    double epsilon() const { return prof_->temporal.epsilon(); }
    double T() const { return prof_->temporal.T(); }
    // support half-width in real coordinates at time t
    double support_halfwidth(double t) const;
    double support_halfwidth_max() const { return p_.nu2 * epsilon(); }

    // per-time cache so field assembly pays the temporal jets once per row
    struct Row {
        double t = 0.0;
        bool zero = true;
        double lam = 0.0, lamd = 0.0, lamdd = 0.0;
        double f[4] = {0, 0, 0, 0}, fd[4] = {0, 0, 0, 0}, fdd[4] = {0, 0, 0, 0};
    };
    Row row(double t) const;

    double vbar(double t, double x) const;
    double V(double t, double x) const;  // box_{nu2} vbar, analytic channel
    double ubar(double t, double x) const;
    double vbar_on_row(const Row& r, double x) const;
    double V_on_row(const Row& r, double x) const;

    // z-jet of lambda^2 * Vcal(t, .) at z; the cancellation route for the
    // contact checks at z = 3/4 and the V_zzz cross-check
    Jet lamV_zjet(double t, double z, int order) const;

    // (lambda^2 Vcal_zzz)/f0 through the log-derivative channel; finite on all
    // of (0,T) even where f0 underflows
    double certificate_ratio(double t, double z) const;

    // time jet of vbar at fixed x (endpoint flatness checks)
    Jet vbar_tjet(double t, double x, int order) const;

  private:
    double zcoord(double x, double lam) const;

    ElementaryParams p_;
    std::shared_ptr<const ProfileSet> prof_;
};

struct CertificateReport {
    double sup_ratio = 0.0;  // sup over the sampled window of (lam^2 Vzzz)/f0
    double margin = 0.0;     // -sup_ratio, the constant C when positive
    bool ok = false;
    double argmax_t = 0.0, argmax_z = 0.0;
};

// Sweeps [0,T] x [3/4-d''/2, 3/4+d''/2] on an nt x nz sample lattice.
CertificateReport vzzz_certificate(const Elementary& e, int nt = 400, int nz = 200);

}  // namespace wavecouple
