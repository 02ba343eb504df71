#ifndef FBH_LIFTING_HPP
#define FBH_LIFTING_HPP

#include "fbh/testfn.hpp"

#include <array>
#include <span>
#include <vector>

namespace fbh::lifting {

inline constexpr int N_max = 1024;

struct LiftParams {
    int N = 2;  // fictitious dimension
    int d = 1;  // spatial dimension
    double s = 0.5;

    void validate() const;
};

// V_N(x, t, tau): the heat semigroup in R^{d+N} applied to the lifted data
// u(x, |y|^2/2N), expressed through the radial kernel
//   V_N = (4 pi tau)^{-d/2} Int e^{-|x-xb|^2/4tau}
//         Int_0^inf u(xb, p) (N/2tau) e^{-N(t+p)/2tau} (p/t)^{(N-2)/4}
//               I_{N/2-1}(N sqrt(pt)/tau) dp dxb.
// In the variable q = Np/tau the p-kernel is the noncentral chi-square
// density with N degrees of freedom and noncentrality Nt/tau, which the
// quadrature resolves around its mean p = t + tau. Evaluated in log space
// via the scaled Bessel function. t = 0 routes to boundary_gn.
double vn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   std::span<const double> x, double t, double tau);
double vn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   double x, double t, double tau);

// Lateral boundary value g_N(x,tau): V_N at t = 0; the inner integral is the
// Gamma(N/2, 2tau/N) average of the time slices.
double boundary_gn(const testfn::SpaceTimeFunction& u, int N,
                   std::span<const double> x, double tau);
double boundary_gn(const testfn::SpaceTimeFunction& u, int N, double x, double tau);

// G_N(x,t) = (1/Gamma(-s)) Int (V_N(x,t,tau) - u(x,t)) tau^{-1-s} dtau.
double gn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   std::span<const double> x, double t);
double gn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   double x, double t);

struct Probe3 {
    double x = 0.0;
    double t = 0.0;
    double tau = 0.0;
};

// Max |d_tau V - (Delta_x V + V_t + (2t/N) V_tt)| over interior probes
// (t = |y|^2/2N gives |grad t|^2 = 2t/N),
// assembled from central finite differences of vn_evaluate (d = 1).
double vn_pde_residual(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                       std::span<const Probe3> probes, double h = 0.01);

// Residual of the limit equation d_tau V = Delta V + V_t on the closed-form
// solution V = backward_heat_apply.
double limit_pde_residual(const testfn::SpaceTimeFunction& u,
                          std::span<const Probe3> probes, double h = 0.01);

// Along the characteristic t + tau = t0 the limit solution obeys the pure
// heat equation d_sigma W = Delta_x W; probes carry (x, t0, sigma).
double characteristics_residual(const testfn::SpaceTimeFunction& u,
                                std::span<const Probe3> probes, double h = 0.01);

// Diagnostic integrals of the g_N -> phi proof splitting: the Gamma-average
// of P_tau u(., a*tau) - P_tau u(., tau) restricted to a < 1-delta (I2) and
// a > 1+delta (I3).
double diagnostic_i2(const testfn::SpaceTimeFunction& u, int N, double x,
                     double tau, double delta);
double diagnostic_i3(const testfn::SpaceTimeFunction& u, int N, double x,
                     double tau, double delta);

struct ConvergenceRow {
    int N = 0;
    double x = 0.0;
    double t = 0.0;
    double gn = 0.0;
    double limit = 0.0;
    double abs_err = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double empirical_order = 0.0; // log-log regression slope (reported, not asserted)
};

ConvergenceTable convergence_study(const testfn::SpaceTimeFunction& u, double s,
                                   std::span<const int> Ns,
                                   std::span<const std::array<double, 2>> probes);

} // namespace fbh::lifting

#endif
