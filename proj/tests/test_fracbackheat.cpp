#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbh/errors.hpp"
#include "fbh/fraclap.hpp"
#include "fbh/fracbackheat.hpp"
#include "fbh/testfn.hpp"

#include <cmath>
#include <complex>

using namespace fbh;

namespace {

testfn::SpaceTimeFunction product_mode(double k, double omega) {
    testfn::SpaceTimeFunction u;
    u.d = 1;
    u.id = "cos-mode";
    u.eval = [k, omega](std::span<const double> x, double t) {
        return std::cos(k * x[0]) * std::cos(omega * t);
    };
    return u;
}

} // namespace

TEST_CASE("joint multiplier on commensurate product modes") {
    // u = cos(kx) cos(wt) maps to Re(m) cos(kx)cos(wt) - Im(m) cos(kx)sin(wt)
    // with m = (k^2 - i w)^s.
    const double L = 64.0;
    const double k = M_PI * 8.0 / L;
    const double w = M_PI * 4.0 / L;
    auto u = product_mode(k, w);
    for (double s : {0.3, 0.5, 0.8}) {
        auto field = fracbackheat::fbh_fourier(u, s);
        auto m = std::pow(std::complex<double>(k * k, -w), s);
        for (int it : {100, 512, 700}) {
            for (int ix : {0, 300, 512}) {
                double x = field.x_at(ix), t = field.t_at(it);
                double want = m.real() * std::cos(k * x) * std::cos(w * t) -
                              m.imag() * std::cos(k * x) * std::sin(w * t);
                CHECK(field.at(ix, it) == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("time-independent mode reduces to |k|^{2s} cos(kx)") {
    const double L = 64.0;
    const double k = M_PI * 12.0 / L;
    auto u = product_mode(k, 0.0);
    double s = 0.6;
    auto field = fracbackheat::fbh_fourier(u, s);
    for (int ix : {64, 500}) {
        double x = field.x_at(ix);
        CHECK(field.at(ix, 17) ==
              doctest::Approx(std::pow(k, 2.0 * s) * std::cos(k * x)).epsilon(1e-9));
    }
}

TEST_CASE("fourier and subordination agree on the gaussian zoo function") {
    auto u = testfn::by_id("gauss-a1-b1-t4");
    for (double s : {0.25, 0.5, 0.75}) {
        auto field = fracbackheat::fbh_fourier(u, s);
        double scale = 0.0, worst = 0.0;
        for (double x : {0.0, 0.5, -0.5}) {
            for (double t : {2.0, 4.0}) {
                double fv = field.value_at(x, t);
                double sv = fracbackheat::fbh_subordination(u, s, x, t);
                scale = std::max(scale, std::abs(fv));
                worst = std::max(worst, std::abs(fv - sv));
            }
        }
        CHECK(worst < 1e-3 * scale);
    }
}

TEST_CASE("bump data passes the spectral checks on its adapted grid") {
    auto u = testfn::by_id("bump-R2-tc2-tw1");
    auto field = fracbackheat::fbh_fourier(u, 0.5, fracbackheat::grid_for(u));
    double fv = field.value_at(0.0, 2.0);
    double sv = fracbackheat::fbh_subordination(u, 0.5, 0.0, 2.0);
    CHECK(std::abs(fv - sv) < 1e-3 * std::max(std::abs(fv), 1e-3));
}

TEST_CASE("t-independent data reduces to the fractional laplacian") {
    testfn::SpaceTimeFunction u;
    u.d = 1;
    u.id = "tindep-gauss";
    u.eval = [](std::span<const double> x, double) { return std::exp(-x[0] * x[0]); };
    auto f = testfn::space_by_id("sgauss-a1");
    for (double s : {0.25, 0.5, 0.75}) {
        for (double x : {0.0, 0.7}) {
            double got = fracbackheat::fbh_subordination(u, s, x, 3.0);
            double want = fraclap::fraclap_subordination(f, s, x).value;
            CHECK(std::abs(got - want) < 5e-4); // only the tail models differ
        }
    }
}

TEST_CASE("x-independent data reduces to the marchaud derivative") {
    testfn::SpaceTimeFunction u;
    u.d = 1;
    u.id = "xindep";
    auto g = [](double t) { return std::exp(-(t - 4.0) * (t - 4.0)); };
    u.eval = [g](std::span<const double>, double t) { return g(t); };
    for (double s : {0.3, 0.7}) {
        for (double t : {1.0, 3.5}) {
            double got = fracbackheat::fbh_subordination(u, s, 0.3, t);
            double want = fracbackheat::marchaud(g, s, t);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("marchaud derivative of exponentials: e^{-lam t} -> lam^s e^{-lam t}") {
    for (double lam : {0.5, 2.0}) {
        for (double s : {0.25, 0.5, 0.75}) {
            auto g = [lam](double t) { return std::exp(-lam * t); };
            for (double t : {0.0, 1.0}) {
                double got = fracbackheat::marchaud(g, s, t);
                double want = std::pow(lam, s) * std::exp(-lam * t);
                CHECK(got == doctest::Approx(want).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("inverse operator on a separated eigenfunction") {
    // u = cos(kx) e^{-t}: (-Delta - d/dt)^{-s} u = (k^2+1)^{-s} u
    const double k = 1.5;
    testfn::SpaceTimeFunction u;
    u.d = 1;
    u.id = "cos-exp";
    u.eval = [k](std::span<const double> x, double t) {
        return std::cos(k * x[0]) * std::exp(-t);
    };
    for (double s : {0.3, 0.7}) {
        auto r = fracbackheat::fbh_inverse(u, s, 0.4, 1.0);
        double want = std::pow(k * k + 1.0, -s) * std::cos(k * 0.4) * std::exp(-1.0);
        CHECK_FALSE(r.divergence_warning);
        CHECK(r.value == doctest::Approx(want).epsilon(1e-8));
    }
    // and the forward operator inverts it
    testfn::SpaceTimeFunction w = u;
    double c = std::pow(k * k + 1.0, -0.5);
    w.eval = [k, c](std::span<const double> x, double t) {
        return c * std::cos(k * x[0]) * std::exp(-t);
    };
    double back = fracbackheat::fbh_subordination(w, 0.5, 0.4, 1.0);
    CHECK(back == doctest::Approx(u(0.4, 1.0)).epsilon(1e-7));
}

TEST_CASE("inverse operator flags slowly decaying semigroups") {
    testfn::SpaceTimeFunction u;
    u.d = 1;
    u.id = "tindep-mass";
    u.eval = [](std::span<const double> x, double) { return std::exp(-x[0] * x[0]); };
    // P_tau of 1-d data with mass decays like tau^{-1/2} <= s = 0.7
    auto r = fracbackheat::fbh_inverse(u, 0.7, 0.0, 1.0);
    CHECK(r.divergence_warning);
}

TEST_CASE("principal branch keeps Re (xi^2 - i w)^s positive") {
    for (double s : {0.25, 0.5, 0.75}) {
        for (double xi : {0.1, 1.0, 20.0, 200.0}) {
            for (double w : {-200.0, -1.0, 0.0, 1.0, 200.0}) {
                auto m = std::pow(std::complex<double>(xi * xi, -w), s);
                CHECK(m.real() > 0.0);
            }
        }
    }
}

TEST_CASE("domain and decay guards") {
    auto u = testfn::by_id("gauss-a1-b1-t4");
    CHECK_THROWS_AS(fracbackheat::fbh_fourier(u, 1.2), domain_error);
    CHECK_THROWS_AS(fracbackheat::fbh_subordination(u, 0.5, 0.0, -1.0), domain_error);
    CHECK_THROWS_AS(fracbackheat::fbh_inverse(u, 1.5, 0.0, 1.0), domain_error);

    // neither decaying nor periodic at the x-boundary
    testfn::SpaceTimeFunction bad;
    bad.d = 1;
    bad.id = "lorentz";
    bad.eval = [](std::span<const double> x, double t) {
        return std::exp(-(t - 4.0) * (t - 4.0)) / (1.0 + (x[0] - 3.0) * (x[0] - 3.0));
    };
    CHECK_THROWS_AS(fracbackheat::fbh_fourier(bad, 0.5), domain_error);
}

TEST_CASE("bicubic interpolation reproduces grid values") {
    auto u = testfn::by_id("gauss-a1-b1-t4");
    auto field = fracbackheat::fbh_fourier(u, 0.5);
    CHECK(field.value_at(field.x_at(400), field.t_at(600)) ==
          doctest::Approx(field.at(400, 600)).epsilon(1e-12));
    // midpoint interpolation stays close on a smooth field
    double mid = field.value_at(0.5 * (field.x_at(512) + field.x_at(513)), 4.0);
    CHECK(std::isfinite(mid));
}
