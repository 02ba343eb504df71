#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbh/errors.hpp"
#include "fbh/quadrature.hpp"

#include <cmath>

using namespace fbh;

TEST_CASE("gauss-hermite integrates monomials against e^{-w^2}") {
    const auto& gh = quad::gauss_hermite(32);
    double m0 = 0.0, m2 = 0.0, m10 = 0.0;
    for (int i = 0; i < 32; ++i) {
        double w = gh.weights[i], x = gh.nodes[i];
        m0 += w;
        m2 += w * x * x;
        m10 += w * std::pow(x, 10);
    }
    double sp = std::sqrt(M_PI);
    CHECK(m0 == doctest::Approx(sp).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(0.5 * sp).epsilon(1e-13));
    // Int x^{2k} e^{-x^2} = (2k-1)!! sqrt(pi) / 2^k, k = 5
    CHECK(m10 == doctest::Approx(945.0 / 32.0 * sp).epsilon(1e-12));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const auto& gl = quad::gauss_legendre(8);
    double m0 = 0.0, m8 = 0.0;
    for (int i = 0; i < 8; ++i) {
        m0 += gl.weights[i];
        m8 += gl.weights[i] * std::pow(gl.nodes[i], 8);
    }
    CHECK(m0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("composite panels: Int_0^pi sin = 2") {
    double v = quad::integrate_panels([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("adaptive simpson: Gaussian mass") {
    double v = quad::adaptive_simpson([](double x) { return std::exp(-x * x); },
                                      -10.0, 10.0, 1e-12);
    CHECK(v == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("subordination reproduces lambda^s on exponentials") {
    for (double lam : {0.5, 2.0}) {
        for (double s : {0.25, 0.5, 0.75}) {
            auto V = [&](double tau) { return std::exp(-lam * tau); };
            double v = quad::subordinate(V, 1.0, s, -lam);
            CHECK(v == doctest::Approx(std::pow(lam, s)).epsilon(1e-8));
        }
    }
}

TEST_CASE("subordination is linear over exponential mixtures") {
    for (double s : {0.3, 0.6}) {
        auto V = [](double tau) {
            return 0.7 * std::exp(-0.5 * tau) + 0.3 * std::exp(-2.0 * tau);
        };
        double v = quad::subordinate(V, 1.0, s, -0.7 * 0.5 - 0.3 * 2.0);
        double want = 0.7 * std::pow(0.5, s) + 0.3 * std::pow(2.0, s);
        CHECK(v == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("subordinate rejects s outside (0,1)") {
    auto V = [](double tau) { return std::exp(-tau); };
    CHECK_THROWS_AS(quad::subordinate(V, 1.0, 1.5, -1.0), domain_error);
    CHECK_THROWS_AS(quad::subordinate(V, 1.0, 0.0, -1.0), domain_error);
}

TEST_CASE("adaptive tail handles algebraic decay: V = (1+tau)^{-2}") {
    // (1/Gamma(-s)) Int ((1+tau)^{-2} - 1) tau^{-1-s} dtau = Gamma(2+s)
    for (double s : {0.25, 0.5, 0.75}) {
        auto V = [](double tau) { return std::pow(1.0 + tau, -2.0); };
        quad::SubordinationOptions opt;
        opt.tau_max = 1e3;
        double v = quad::subordinate_adaptive(V, 1.0, s, -2.0, opt);
        CHECK(v == doctest::Approx(std::tgamma(2.0 + s)).epsilon(1e-7));
    }
}

TEST_CASE("inverse subordination reproduces lambda^{-s}") {
    for (double lam : {0.5, 2.0}) {
        for (double s : {0.3, 0.7}) {
            auto V = [&](double tau) { return std::exp(-lam * tau); };
            double v = quad::inverse_subordinate(V, 1.0, s);
            CHECK(v == doctest::Approx(std::pow(lam, -s)).epsilon(1e-8));
        }
    }
}
