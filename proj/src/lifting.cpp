#include "fbh/lifting.hpp"
#include "fbh/errors.hpp"
#include "fbh/fracbackheat.hpp"
#include "fbh/quadrature.hpp"
#include "fbh/semigroup.hpp"
#include "fbh/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace fbh::lifting {

namespace {

double slice_heat(const testfn::SpaceTimeFunction& u, double p, double tau,
                  std::span<const double> x) {
    auto slice = [&](std::span<const double> xb) { return u.eval(xb, p); };
    return semigroup::heat_apply(slice, u.d, tau, x, 64);
}

double fd_ut(const testfn::SpaceTimeFunction& u, std::span<const double> x, double t,
             double h = 0.01) {
    auto g = [&](double tt) { return u.eval(x, tt); };
    if (t >= 2.0 * h)
        return (-g(t + 2.0 * h) + 8.0 * g(t + h) - 8.0 * g(t - h) + g(t - 2.0 * h)) /
               (12.0 * h);
    return (-25.0 * g(t) + 48.0 * g(t + h) - 36.0 * g(t + 2.0 * h) +
            16.0 * g(t + 3.0 * h) - 3.0 * g(t + 4.0 * h)) /
           (12.0 * h);
}

double fd_utt(const testfn::SpaceTimeFunction& u, std::span<const double> x, double t,
              double h = 0.01) {
    auto g = [&](double tt) { return u.eval(x, tt); };
    if (t >= 2.0 * h)
        return (-g(t + 2.0 * h) + 16.0 * g(t + h) - 30.0 * g(t) + 16.0 * g(t - h) -
                g(t - 2.0 * h)) /
               (12.0 * h * h);
    return (g(t) - 2.0 * g(t + h) + g(t + 2.0 * h)) / (h * h);
}

double fd_lap(const testfn::SpaceTimeFunction& u, std::span<const double> x, double t,
              double h = 0.05) {
    std::array<double, 4> pt{};
    for (int k = 0; k < u.d; ++k) pt[k] = x[k];
    auto at = [&]() { return u.eval(std::span<const double>(pt.data(), u.d), t); };
    double f0 = at();
    double lap = 0.0;
    for (int k = 0; k < u.d; ++k) {
        double xk = pt[k];
        pt[k] = xk + 2.0 * h; double fp2 = at();
        pt[k] = xk + h;       double fp1 = at();
        pt[k] = xk - h;       double fm1 = at();
        pt[k] = xk - 2.0 * h; double fm2 = at();
        pt[k] = xk;
        lap += (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    }
    return lap;
}

} // namespace

void LiftParams::validate() const {
    if (N < 2) throw domain_error("LiftParams: N must be >= 2");
    if (N > N_max) throw domain_error("LiftParams: N exceeds N_max");
    if (d < 1) throw domain_error("LiftParams: d must be >= 1");
    if (s <= 0.0 || s >= 1.0) throw domain_error("LiftParams: s must lie in (0,1)");
}

double vn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   std::span<const double> x, double t, double tau) {
    params.validate();
    if (tau <= 0.0) throw domain_error("vn_evaluate: tau must be positive");
    if (t < 0.0) throw domain_error("vn_evaluate: t must be >= 0");
    if (t < 1e-12) return boundary_gn(u, params.N, x, tau);

    const int N = params.N;
    const double mu = N * t / tau;
    const double nu = 0.5 * N - 1.0;
    // noncentral chi-square density in q = N p / tau, N dof, noncentrality mu
    auto log_density = [&](double q) {
        double z = std::sqrt(q * mu);
        double sq = std::sqrt(q), sm = std::sqrt(mu);
        return -0.5 * (sq - sm) * (sq - sm) + specfun::bessel_i_scaled_log(nu, z) +
               0.25 * (N - 2.0) * std::log(q / mu) - std::log(2.0);
    };
    double mean = N + mu;
    double sd = std::sqrt(2.0 * (N + 2.0 * mu));
    double lo = std::max(0.0, mean - 12.0 * sd);
    double hi = mean + 12.0 * sd;
    auto f = [&](double q) {
        if (q <= 0.0) return 0.0;
        double lw = log_density(q);
        if (lw < -120.0) return 0.0;
        return std::exp(lw) * slice_heat(u, tau * q / N, tau, x);
    };
    // fine panels: PDE residuals difference vn twice, which amplifies
    // quadrature noise by 1/h^2
    double width = std::max(0.25 * sd, 1e-3);
    if (N == 2) width = std::min(width, 0.5);
    double value = quad::integrate_panels(f, lo, hi, width, 12);
    if (!std::isfinite(value))
        throw quadrature_error("vn_evaluate: non-finite kernel integral");
    return value;
}

double vn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   double x, double t, double tau) {
    return vn_evaluate(u, params, std::span<const double>(&x, 1), t, tau);
}

double boundary_gn(const testfn::SpaceTimeFunction& u, int N,
                   std::span<const double> x, double tau) {
    if (N < 2) throw domain_error("boundary_gn: N must be >= 2");
    if (tau <= 0.0) throw domain_error("boundary_gn: tau must be positive");
    // z = N tbar / (2 tau) ~ Gamma(N/2, 1)
    double shape = 0.5 * N;
    double lgs = specfun::log_gamma(shape);
    double sd = std::sqrt(shape);
    double lo = std::max(0.0, shape - 12.0 * sd);
    double hi = shape + 12.0 * sd + 5.0;
    auto f = [&](double z) {
        if (z <= 0.0) return 0.0;
        double lw = (shape - 1.0) * std::log(z) - z - lgs;
        if (lw < -120.0) return 0.0;
        return std::exp(lw) * slice_heat(u, 2.0 * tau * z / N, tau, x);
    };
    double width = std::clamp(0.5 * sd, 0.25, (hi - lo) / 40.0);
    return quad::integrate_panels(f, lo, hi, width, 8);
}

double boundary_gn(const testfn::SpaceTimeFunction& u, int N, double x, double tau) {
    return boundary_gn(u, N, std::span<const double>(&x, 1), tau);
}

double gn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   std::span<const double> x, double t) {
    params.validate();
    double v0 = u.eval(x, t);
    // d/dtau V_N at tau=0+ from the degenerate PDE: Delta u + u_t + (2t/N) u_tt
    double slope0 = fd_lap(u, x, t) + fd_ut(u, x, t) +
                    (2.0 * t / params.N) * fd_utt(u, x, t);
    auto V = [&](double tau) { return vn_evaluate(u, params, x, t, tau); };
    quad::SubordinationOptions opt;
    opt.tau_min = 1e-4;
    opt.tau_max = 1e3;
    return quad::subordinate_adaptive(V, v0, params.s, slope0, opt);
}

double gn_evaluate(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                   double x, double t) {
    return gn_evaluate(u, params, std::span<const double>(&x, 1), t);
}

double vn_pde_residual(const testfn::SpaceTimeFunction& u, const LiftParams& params,
                       std::span<const Probe3> probes, double h) {
    double worst = 0.0;
    for (const auto& pr : probes) {
        double ht = std::min(h, 0.5 * pr.t);
        double htau = std::min(h, 0.5 * pr.tau);
        auto V = [&](double x, double t, double tau) {
            return vn_evaluate(u, params, x, t, tau);
        };
        double v0 = V(pr.x, pr.t, pr.tau);
        double vxp = V(pr.x + h, pr.t, pr.tau), vxm = V(pr.x - h, pr.t, pr.tau);
        double vtp = V(pr.x, pr.t + ht, pr.tau), vtm = V(pr.x, pr.t - ht, pr.tau);
        double vqp = V(pr.x, pr.t, pr.tau + htau), vqm = V(pr.x, pr.t, pr.tau - htau);
        double vxx = (vxp - 2.0 * v0 + vxm) / (h * h);
        double vt = (vtp - vtm) / (2.0 * ht);
        double vtt = (vtp - 2.0 * v0 + vtm) / (ht * ht);
        double vtau = (vqp - vqm) / (2.0 * htau);
        double res = vtau - (vxx + vt + (2.0 * pr.t / params.N) * vtt);
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

double limit_pde_residual(const testfn::SpaceTimeFunction& u,
                          std::span<const Probe3> probes, double h) {
    double worst = 0.0;
    for (const auto& pr : probes) {
        double ht = std::min(h, 0.5 * pr.t);
        double htau = std::min(h, 0.5 * pr.tau);
        auto V = [&](double x, double t, double tau) {
            return semigroup::backward_heat_apply(u, tau, x, t);
        };
        double v0 = V(pr.x, pr.t, pr.tau);
        double vxx = (V(pr.x + h, pr.t, pr.tau) - 2.0 * v0 + V(pr.x - h, pr.t, pr.tau)) /
                     (h * h);
        double vt = (V(pr.x, pr.t + ht, pr.tau) - V(pr.x, pr.t - ht, pr.tau)) /
                    (2.0 * ht);
        double vtau = (V(pr.x, pr.t, pr.tau + htau) - V(pr.x, pr.t, pr.tau - htau)) /
                      (2.0 * htau);
        worst = std::max(worst, std::abs(vtau - (vxx + vt)));
    }
    return worst;
}

double characteristics_residual(const testfn::SpaceTimeFunction& u,
                                std::span<const Probe3> probes, double h) {
    double worst = 0.0;
    for (const auto& pr : probes) {
        double t0 = pr.t, sigma = pr.tau;
        auto W = [&](double x, double sig) {
            return semigroup::backward_heat_apply(u, sig, x, t0 - sig);
        };
        double hs = std::min(h, 0.5 * sigma);
        double w0 = W(pr.x, sigma);
        double wxx = (W(pr.x + h, sigma) - 2.0 * w0 + W(pr.x - h, sigma)) / (h * h);
        double ws = (W(pr.x, sigma + hs) - W(pr.x, sigma - hs)) / (2.0 * hs);
        worst = std::max(worst, std::abs(ws - wxx));
    }
    return worst;
}

namespace {

double diagnostic_tail(const testfn::SpaceTimeFunction& u, int N, double x, double tau,
                       double a_lo, double a_hi) {
    double shape = 0.5 * N;
    double lgs = specfun::log_gamma(shape);
    std::array<double, 1> xp{x};
    // compare against the a = 1 slice: phi = P_tau u(., tau)
    double phi = slice_heat(u, tau, tau, std::span<const double>(xp.data(), 1));
    auto f = [&](double a) {
        if (a <= 0.0) return 0.0;
        double lw = shape * std::log(shape) - lgs + (shape - 1.0) * std::log(a) -
                    shape * a;
        if (lw < -300.0) return 0.0;
        double diff = slice_heat(u, a * tau, tau, std::span<const double>(xp.data(), 1)) - phi;
        return std::exp(lw) * diff;
    };
    double width = std::min(0.01, 8.0 / N);
    return quad::integrate_panels(f, a_lo, a_hi, width, 8);
}

} // namespace

double diagnostic_i2(const testfn::SpaceTimeFunction& u, int N, double x,
                     double tau, double delta) {
    if (delta <= 0.0 || delta >= 1.0) throw domain_error("diagnostic_i2: delta in (0,1)");
    return diagnostic_tail(u, N, x, tau, 0.0, 1.0 - delta);
}

double diagnostic_i3(const testfn::SpaceTimeFunction& u, int N, double x,
                     double tau, double delta) {
    if (delta <= 0.0) throw domain_error("diagnostic_i3: delta must be positive");
    double a_hi = 1.0 + delta + std::max(2.0, 600.0 / N);
    return diagnostic_tail(u, N, x, tau, 1.0 + delta, a_hi);
}

ConvergenceTable convergence_study(const testfn::SpaceTimeFunction& u, double s,
                                   std::span<const int> Ns,
                                   std::span<const std::array<double, 2>> probes) {
    for (size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] <= Ns[i - 1])
            throw domain_error("convergence_study: N list must be strictly increasing");
    ConvergenceTable table;
    std::vector<double> log_n, log_e;
    for (int N : Ns) {
        LiftParams params{N, u.d, s};
        double mean_err = 0.0;
        for (const auto& pr : probes) {
            ConvergenceRow row;
            row.N = N;
            row.x = pr[0];
            row.t = pr[1];
            row.gn = gn_evaluate(u, params, pr[0], pr[1]);
            row.limit = fracbackheat::fbh_subordination(u, s, pr[0], pr[1]);
            row.abs_err = std::abs(row.gn - row.limit);
            mean_err += row.abs_err;
            table.rows.push_back(row);
        }
        mean_err /= static_cast<double>(probes.size());
        if (mean_err > 0.0) {
            log_n.push_back(std::log(static_cast<double>(N)));
            log_e.push_back(std::log(mean_err));
        }
    }
    // least-squares slope of log(err) vs log(N); empirical order = -slope
    if (log_n.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (size_t i = 0; i < log_n.size(); ++i) { mx += log_n[i]; my += log_e[i]; }
        mx /= log_n.size();
        my /= log_e.size();
        double sxy = 0.0, sxx = 0.0;
        for (size_t i = 0; i < log_n.size(); ++i) {
            sxy += (log_n[i] - mx) * (log_e[i] - my);
            sxx += (log_n[i] - mx) * (log_n[i] - mx);
        }
        table.empirical_order = sxx > 0.0 ? -sxy / sxx : 0.0;
    }
    return table;
}

} // namespace fbh::lifting
