// Acceptance battery: one line per criterion, nonzero exit on any failure.

#include "fbh/carleman.hpp"
#include "fbh/errors.hpp"
#include "fbh/fraclap.hpp"
#include "fbh/fracbackheat.hpp"
#include "fbh/lifting.hpp"
#include "fbh/semigroup.hpp"
#include "fbh/specfun.hpp"
#include "fbh/testfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <sys/wait.h>
#include <vector>

using namespace fbh;

namespace {

int g_failures = 0;

void report(const char* id, const char* what, bool ok, const std::string& detail = "") {
    std::printf("%s %s ... %s%s%s\n", id, what, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------------------

void ac1_fraclap_definitions_agree() {
    bool ok = true;
    double worst_rel = 0.0;
    for (const char* id : {"sgauss-a1", "sgauss-a0.5", "sbump-R3"}) {
        auto f = testfn::space_by_id(id);
        for (double s : {0.25, 0.5, 0.75}) {
            auto field = fraclap::fraclap_fourier(f, s);
            std::vector<double> fv, sv, pv;
            double scale = 0.0;
            for (int i = 0; i < 20; ++i) {
                double x = -3.0 + 6.0 * i / 19.0;
                fv.push_back(field.value_at(x));
                sv.push_back(fraclap::fraclap_subordination(f, s, x).value);
                pv.push_back(fraclap::fraclap_pv(f, s, x).value);
                scale = std::max(scale, std::abs(fv.back()));
            }
            for (int i = 0; i < 20; ++i) {
                double w = std::max({std::abs(fv[i] - sv[i]), std::abs(fv[i] - pv[i]),
                                     std::abs(sv[i] - pv[i])}) /
                           scale;
                worst_rel = std::max(worst_rel, w);
                if (w > 1e-3) ok = false;
            }
        }
    }
    report("AC1", "fourier, subordination and PV definitions agree to 1e-3", ok,
           "worst rel diff " + num(worst_rel));
}

void ac2_reductions() {
    bool ok = true;
    double worst = 0.0;

    testfn::SpaceTimeFunction ti;
    ti.d = 1;
    ti.id = "tindep";
    ti.eval = [](std::span<const double> x, double) { return std::exp(-x[0] * x[0]); };
    auto f = testfn::space_by_id("sgauss-a1");
    for (double s : {0.25, 0.5, 0.75}) {
        for (double x : {0.0, 0.5, 1.0}) {
            double d = std::abs(fracbackheat::fbh_subordination(ti, s, x, 3.0) -
                                fraclap::fraclap_subordination(f, s, x).value);
            worst = std::max(worst, d);
            if (d > 1e-3) ok = false;
        }
    }

    testfn::SpaceTimeFunction xi;
    xi.d = 1;
    xi.id = "xindep";
    auto g = [](double t) { return std::exp(-(t - 4.0) * (t - 4.0)); };
    xi.eval = [g](std::span<const double>, double t) { return g(t); };
    for (double s : {0.3, 0.7}) {
        for (double t : {1.0, 3.0}) {
            double d = std::abs(fracbackheat::fbh_subordination(xi, s, 0.2, t) -
                                fracbackheat::marchaud(g, s, t));
            if (d > 1e-6) ok = false;
        }
    }

    for (double lam : {0.5, 2.0}) {
        auto e = [lam](double t) { return std::exp(-lam * t); };
        for (double s : {0.25, 0.5, 0.75}) {
            double d = std::abs(fracbackheat::marchaud(e, s, 1.0) -
                                std::pow(lam, s) * std::exp(-lam));
            if (d > 1e-8) ok = false;
        }
    }
    report("AC2", "operator reduces to fraclap / marchaud / exponential eigenvalues",
           ok, "worst t-indep diff " + num(worst));
}

void ac3_lifting_oracles() {
    auto u = testfn::by_id("gauss-a1-b1-t4");

    // V_N against the heat semigroup in R^{1+N} applied to the lifted profile
    bool ok_vn = true;
    double worst_vn = 0.0;
    for (int N : {2, 3}) {
        int n = 1 + N;
        auto F = [&](std::span<const double> X) {
            double y2 = 0.0;
            for (int k = 1; k < n; ++k) y2 += X[k] * X[k];
            return u(std::span<const double>(X.data(), 1), y2 / (2.0 * N));
        };
        lifting::LiftParams prm{N, 1, 0.5};
        std::vector<std::array<double, 3>> probes{
            {0.0, 2.0, 0.5},  {0.5, 4.0, 0.25}, {-0.5, 3.0, 1.0},
            {0.3, 5.0, 0.5},  {0.0, 4.0, 1.0}};
        double scale = 0.0;
        std::vector<double> got, want;
        for (auto [x, t, tau] : probes) {
            got.push_back(lifting::vn_evaluate(u, prm, x, t, tau));
            std::array<double, 4> X{x, std::sqrt(2.0 * N * t), 0.0, 0.0};
            want.push_back(semigroup::heat_apply(
                F, n, tau, std::span<const double>(X.data(), n), 64));
            scale = std::max(scale, std::abs(want.back()));
        }
        for (size_t i = 0; i < probes.size(); ++i) {
            double w = std::abs(got[i] - want[i]) / scale;
            worst_vn = std::max(worst_vn, w);
            if (w > 1e-3) ok_vn = false;
        }
    }
    report("AC3a", "kernel representation of V_N matches the lifted heat semigroup",
           ok_vn, "worst rel diff " + num(worst_vn));

    // G_N against a genuinely 3-d spectral fractional laplacian of the lifted
    // profile (N = 2): G_N(x,t) = (-Delta_{x,y})^s F at |y|^2/4 = t.
    bool ok_gn = true;
    double worst_gn = 0.0;
    {
        auto F3 = [&](std::span<const double> X) {
            return u(std::span<const double>(X.data(), 1),
                     0.25 * (X[1] * X[1] + X[2] * X[2]));
        };
        std::vector<int> dims{384, 192, 192};
        std::vector<double> hw{24.0, 12.0, 12.0};
        auto field = fraclap::fraclap_fourier_nd(F3, dims, hw, 0.5);
        lifting::LiftParams prm{2, 1, 0.5};
        double scale = 0.0;
        std::vector<double> got, want;
        for (double y1 : {2.0, 2.5, 3.0}) {
            double t = 0.25 * y1 * y1;
            got.push_back(lifting::gn_evaluate(u, prm, 0.0, t));
            std::array<int, 3> idx{192, static_cast<int>(std::lround((y1 + 12.0) / 24.0 * 192)), 96};
            want.push_back(field.at(std::span<const int>(idx.data(), 3)));
            scale = std::max(scale, std::abs(want.back()));
        }
        for (size_t i = 0; i < got.size(); ++i) {
            double w = std::abs(got[i] - want[i]) / scale;
            worst_gn = std::max(worst_gn, w);
            if (w > 1e-2) ok_gn = false;
        }
    }
    report("AC3b", "G_N matches a 3-d spectral laplacian of the lifted profile",
           ok_gn, "worst rel diff " + num(worst_gn));
}

void ac4_convergence() {
    auto u = testfn::by_id("gauss-a1-b1-t4");
    std::vector<int> Ns{8, 32, 128, 512};
    std::vector<std::array<double, 2>> probes{
        {0.0, 3.0}, {0.5, 4.0}, {-0.5, 3.5}, {0.3, 4.5}, {0.0, 5.0}};
    auto table = lifting::convergence_study(u, 0.5, Ns, probes);
    std::vector<double> mean(Ns.size(), 0.0);
    for (const auto& r : table.rows) {
        for (size_t k = 0; k < Ns.size(); ++k)
            if (r.N == Ns[k]) mean[k] += r.abs_err / probes.size();
    }
    bool ok = mean.back() <= 1e-2;
    for (size_t k = 1; k < mean.size(); ++k)
        if (mean[k] > mean[k - 1] + 2e-4) ok = false;

    // boundary value converges to the smoothed slice
    double x = 0.0, tau = 1.0;
    auto slice = [&](std::span<const double> p) { return u.eval(p, tau); };
    double phi = semigroup::heat_apply(slice, 1, tau, std::span<const double>(&x, 1));
    double bdry = std::abs(lifting::boundary_gn(u, 512, x, tau) - phi);
    if (bdry > 1e-2) ok = false;

    double i2 = std::abs(lifting::diagnostic_i2(u, 512, 0.0, 1.0, 0.2));
    double i3 = std::abs(lifting::diagnostic_i3(u, 512, 0.0, 1.0, 0.2));
    if (i2 > 1e-6 * u.sup_bound || i3 > 1e-6 * u.sup_bound) ok = false;

    report("AC4", "G_N converges monotonically; g_N, I2, I3 behave as proved", ok,
           "final mean err " + num(mean.back()) + ", order " +
               num(table.empirical_order) + ", |g-phi| " + num(bdry) + ", I2 " +
               num(i2) + ", I3 " + num(i3));
}

void ac5_pde_residuals() {
    auto u = testfn::by_id("gauss-a1-b1-t4");
    lifting::LiftParams prm{16, 1, 0.5};
    std::vector<lifting::Probe3> probes;
    for (double x : {-0.5, 0.0, 0.5})
        for (double t : {1.0, 2.0, 3.0})
            for (double tau : {0.5, 1.0, 2.0}) probes.push_back({x, t, tau});
    double r_vn = lifting::vn_pde_residual(u, prm, probes);
    std::vector<lifting::Probe3> lp{{0.0, 2.0, 0.5}, {0.5, 3.0, 1.0}, {-0.3, 1.5, 0.8}};
    double r_limit = lifting::limit_pde_residual(u, lp);
    std::vector<lifting::Probe3> cp{{0.0, 4.0, 0.5}, {0.4, 3.5, 1.0}, {-0.2, 4.5, 1.5}};
    double r_char = lifting::characteristics_residual(u, cp);
    bool ok = r_vn < 1e-2 && r_limit < 1e-3 && r_char < 1e-4;
    report("AC5", "degenerate, limit and characteristic PDE residuals are small", ok,
           "vn " + num(r_vn) + ", limit " + num(r_limit) + ", chars " + num(r_char));
}

void ac6_thm1_battery() {
    bool ok = true;
    double worst_ratio = 0.0, worst_qerr = 0.0;
    for (const char* id : {"gauss-a1-b1-t4", "bump-R2-tc2-tw1"}) {
        auto u = testfn::by_id(id);
        for (double s : {0.25, 0.5, 0.75}) {
            for (double eta : {0.3, 0.7, 0.9, 1.3, 1.7, 2.1}) {
                carleman::FracParams prm{s, eta, 2.0, 1, 0};
                auto rep = carleman::verify_carleman(u, prm,
                                                     carleman::Variant::thm1_L2);
                worst_ratio = std::max(worst_ratio, rep.ratio);
                worst_qerr = std::max(worst_qerr, rep.quadrature_error);
                if (rep.ratio > 1.0 + rep.quadrature_error) ok = false;
                if (rep.quadrature_error > 1e-4) ok = false;
                if (!carleman::prelimit_ordering_ok(1, s, eta)) ok = false;
            }
        }
    }
    report("AC6", "theorem 1 inequality holds over the 36-cell battery", ok,
           "worst ratio " + num(worst_ratio) + ", worst quad err " + num(worst_qerr));
}

void ac7_thm2_battery() {
    bool ok = true;
    auto u = testfn::by_id("bump-R2-tc2-tw1");
    std::printf("AC7 table: eta p constant_derived constant_paper ratio ratio_paper\n");
    double worst_ratio = 0.0;
    for (double eta : {0.1, 0.25, 0.4}) {
        for (double p : {1.5, 2.0, 3.0}) {
            carleman::FracParams prm{0.5, eta, p, 1, 0};
            auto rep = carleman::verify_carleman(u, prm, carleman::Variant::thm2_Lp);
            std::printf("AC7 table: %.2f %.1f %.6g %.6g %.6g %.6g\n", eta, p,
                        rep.constant, rep.constant_paper, rep.ratio, rep.ratio_paper);
            worst_ratio = std::max(worst_ratio, rep.ratio);
            if (rep.ratio > 1.0 + rep.quadrature_error) ok = false;
        }
    }
    report("AC7", "theorem 2 inequality holds with the derived constant", ok,
           "worst ratio " + num(worst_ratio));
}

// --- independent special-function oracles ----------------------------------

double bessel_integral_oracle_log(double nu, double z) {
    // log of e^{-z} I_nu(z) via the Poisson integral in theta
    int n = 40000;
    double h = M_PI / n, sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double th = (i + 0.5) * h;
        double le = z * (std::cos(th) - 1.0) + 2.0 * nu * std::log(std::sin(th));
        sum += le > -700.0 ? std::exp(le) : 0.0;
    }
    sum *= h;
    return nu * std::log(0.5 * z) - 0.5 * std::log(M_PI) -
           std::lgamma(nu + 0.5) + std::log(sum);
}

double bessel_series_oracle_log(double nu, double z) {
    // the terms peak at k* solving k(nu+k) = (z/2)^2; run well past it
    double k_star = 0.5 * (-nu + std::sqrt(nu * nu + z * z));
    int kmax = static_cast<int>(2.0 * k_star) + 500;
    std::vector<double> lt;
    for (int k = 0; k < kmax; ++k)
        lt.push_back((nu + 2.0 * k) * std::log(0.5 * z) - std::lgamma(k + 1.0) -
                     std::lgamma(nu + k + 1.0));
    double m = *std::max_element(lt.begin(), lt.end());
    double acc = 0.0;
    for (double v : lt) acc += std::exp(v - m);
    return m + std::log(acc) - z;
}

void ac8_specfun() {
    bool ok = true;
    // strict Gamma lower bound
    for (double x = 0.05; x <= 100.0; x += 0.35) {
        double lhs = -0.5 * std::log(2.0 * M_PI) + (0.5 - x) * std::log(x) + x +
                     specfun::log_gamma(x);
        if (!(lhs > 0.0)) ok = false;
    }
    // quotient bound and large-z asymptotics
    for (double s : {0.25, 0.5, 0.75}) {
        for (double x : {0.5, 2.0, 50.0}) {
            if (!(specfun::gamma_quotient(x, s, 1.0) < std::pow(x, s - 1.0)))
                ok = false;
        }
    }
    for (auto [a, b] : {std::pair{0.3, 1.1}, {1.7, 0.2}}) {
        double got = specfun::gamma_quotient(1000.0, a, b);
        double want = std::pow(1000.0, a - b);
        if (std::abs(got / want - 1.0) > 0.01) ok = false;
    }
    // incomplete-gamma asymptotics at a = 200
    {
        double a = 200.0;
        double z = 0.5 * a;
        double want = a * std::log(z) - z - std::log(a - z);
        auto v = specfun::incomplete_gamma_lower(a, z);
        if (std::abs((std::log(v.value) + v.log_scale) - want) > std::log(1.05))
            ok = false;
        z = 1.5 * a;
        want = a * std::log(z) - z - std::log(z - a);
        auto w = specfun::incomplete_gamma_upper(a, z);
        if (std::abs((std::log(w.value) + w.log_scale) - want) > std::log(1.05))
            ok = false;
    }
    // Bessel I against two independent oracles
    for (double nu : {0.0, 1.0, 5.0, 10.0}) {
        for (double z : {0.5, 10.0, 100.0, 1000.0}) {
            double got = specfun::bessel_i_scaled_log(nu, z);
            double want = bessel_integral_oracle_log(nu, z);
            if (std::abs(got - want) > 1e-8 * std::max(1.0, std::abs(want)))
                ok = false;
        }
    }
    for (double nu : {100.0, 5000.0}) {
        for (double ratio : {0.5, 2.0}) {
            double z = ratio * nu;
            double got = specfun::bessel_i_scaled_log(nu, z);
            double want = bessel_series_oracle_log(nu, z);
            if (std::abs(got - want) > 1e-6 * std::max(1.0, std::abs(want)))
                ok = false;
        }
    }
    report("AC8", "gamma, incomplete-gamma and bessel bounds/asymptotics hold", ok);
}

void ac9_cli_determinism() {
    const char* cli = std::getenv("FBH_CLI");
    if (!cli) {
        report("AC9", "cli determinism (FBH_CLI unset)", false);
        return;
    }
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    mkdir("ac9_a", 0755);
    mkdir("ac9_b", 0755);
    std::string base = std::string(cli) + " constants --out ";
    int r1 = std::system((base + "ac9_a > /dev/null 2>&1").c_str());
    int r2 = std::system((base + "ac9_b > /dev/null 2>&1").c_str());
    bool ok = r1 != -1 && r2 != -1 && WEXITSTATUS(r1) == 0 && WEXITSTATUS(r2) == 0;
    std::string a = slurp("ac9_a/constants.csv"), b = slurp("ac9_b/constants.csv");
    ok = ok && !a.empty() && a == b;
    report("AC9", "repeated cli runs produce byte-identical output", ok);
}

} // namespace

int main() {
    ac1_fraclap_definitions_agree();
    ac2_reductions();
    ac3_lifting_oracles();
    ac4_convergence();
    ac5_pde_residuals();
    ac6_thm1_battery();
    ac7_thm2_battery();
    ac8_specfun();
    ac9_cli_determinism();
    std::printf("acceptance: %d criterion group(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
