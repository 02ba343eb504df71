#include "fbh/specfun.hpp"
#include "fbh/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fbh::specfun {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

double pole_distance(double x) {
    if (x > 0.0) return x;
    double k = std::round(x);
    return std::abs(x - k);
}

double log_gamma(double x) {
    if (x <= 0.0)
        throw domain_error("log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

SpecialValue gamma_signed(double x) {
    if (x <= 0.0 && pole_distance(x) <= pole_tolerance)
        throw pole_error("gamma_signed: argument " + std::to_string(x) +
                         " is within pole_tolerance of a Gamma pole");
    SpecialValue out;
    out.regime = Regime::series;
    if (x > 0.0) {
        out.value = 1.0;
        out.log_scale = std::lgamma(x);
        return out;
    }
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    double sinpix = std::sin(M_PI * x);
    out.value = sinpix > 0.0 ? 1.0 : -1.0;
    out.log_scale = std::log(M_PI) - std::log(std::abs(sinpix)) - std::lgamma(1.0 - x);
    return out;
}

double gamma_quotient(double z, double a, double b) {
    if (z + a <= 0.0 || z + b <= 0.0)
        throw domain_error("gamma_quotient: arguments must be positive");
    return std::exp(std::lgamma(z + a) - std::lgamma(z + b));
}

namespace {

// Regularized lower incomplete gamma by its power series, z < a+1.
double gamma_p_series(double a, double z) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        term *= z / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(a * std::log(z) - z - std::lgamma(a));
}

// Regularized upper incomplete gamma by Lentz's continued fraction, z >= a+1.
double gamma_q_cf(double a, double z) {
    const double tiny = 1e-300;
    double b = z + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(a * std::log(z) - z - std::lgamma(a));
}

} // namespace

double incomplete_gamma_p(double a, double z) {
    if (a <= 0.0) throw domain_error("incomplete_gamma: a must be positive");
    if (z < 0.0) throw domain_error("incomplete_gamma: z must be non-negative");
    if (z == 0.0) return 0.0;
    return (z < a + 1.0) ? gamma_p_series(a, z) : 1.0 - gamma_q_cf(a, z);
}

SpecialValue incomplete_gamma_lower(double a, double z) {
    if (a <= 0.0) throw domain_error("incomplete_gamma: a must be positive");
    if (z < 0.0) throw domain_error("incomplete_gamma: z must be non-negative");
    SpecialValue out;
    out.log_scale = std::lgamma(a);
    if (z == 0.0) {
        out.value = 0.0;
        out.regime = Regime::series;
        return out;
    }
    if (z < a + 1.0) {
        out.value = gamma_p_series(a, z);
        out.regime = Regime::series;
    } else {
        out.value = 1.0 - gamma_q_cf(a, z);
        out.regime = Regime::continued_fraction;
    }
    return out;
}

SpecialValue incomplete_gamma_upper(double a, double z) {
    if (a <= 0.0) throw domain_error("incomplete_gamma: a must be positive");
    if (z < 0.0) throw domain_error("incomplete_gamma: z must be non-negative");
    SpecialValue out;
    out.log_scale = std::lgamma(a);
    if (z == 0.0) {
        out.value = 1.0;
        out.regime = Regime::series;
        return out;
    }
    if (z < a + 1.0) {
        out.value = 1.0 - gamma_p_series(a, z);
        out.regime = Regime::series;
    } else {
        out.value = gamma_q_cf(a, z);
        out.regime = Regime::continued_fraction;
    }
    return out;
}

namespace {

// log(e^{-z} I_nu(z)) by the power series, summed in scaled form. All terms
// are positive, so the sum is stable; it just needs O(z) terms for large z.
double bessel_series_log(double nu, double z) {
    double log_t0 = nu * std::log(0.5 * z) - std::lgamma(nu + 1.0) - z;
    double zq = 0.25 * z * z;
    double cur = 1.0, sum = 1.0, offset = 0.0;
    for (int k = 0; k < 4000000; ++k) {
        cur *= zq / ((k + 1.0) * (nu + k + 1.0));
        sum += cur;
        if (cur < sum * 1e-17) break;
        if (sum > 1e250) {
            offset += std::log(sum);
            cur /= sum;
            sum = 1.0;
        }
    }
    return log_t0 + offset + std::log(sum);
}

// Hankel large-argument expansion of e^{-z} I_nu(z); valid for z >> nu^2.
double bessel_hankel_log(double nu, double z) {
    double mu = 4.0 * nu * nu;
    double sum = 1.0, term = 1.0;
    for (int k = 1; k <= 40; ++k) {
        double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        double next = term * (-num) / (8.0 * k * z);
        if (std::abs(next) >= std::abs(term)) break; // divergent tail reached
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::log(sum) - 0.5 * std::log(2.0 * M_PI * z);
}

// Olver's uniform large-order expansion with terms through U_4.
double bessel_olver_log(double nu, double z) {
    double zt = z / nu;
    double w = std::sqrt(1.0 + zt * zt);
    double p = 1.0 / w;
    // eta - zt, computed stably for large zt.
    double eta_minus = (w - zt) + std::log(zt / (1.0 + w));
    double p2 = p * p;
    double u1 = p * (3.0 - 5.0 * p2) / 24.0;
    double u2 = p2 * (81.0 + p2 * (-462.0 + 385.0 * p2)) / 1152.0;
    double u3 = p * p2 * (30375.0 + p2 * (-369603.0 + p2 * (765765.0 - 425425.0 * p2))) / 414720.0;
    double u4 = p2 * p2 *
                (4465125.0 +
                 p2 * (-94121676.0 +
                       p2 * (349922430.0 + p2 * (-446185740.0 + 185910725.0 * p2)))) /
                39813120.0;
    double series = 1.0 + u1 / nu + u2 / (nu * nu) + u3 / (nu * nu * nu) +
                    u4 / (nu * nu * nu * nu);
    return nu * eta_minus - 0.5 * std::log(2.0 * M_PI * nu) - 0.5 * std::log(w) +
           std::log(series);
}

} // namespace

double bessel_i_scaled_log(double nu, double z) {
    if (nu <= -0.5)
        throw domain_error("bessel_i_scaled: order must exceed -1/2");
    if (z < 0.0)
        throw domain_error("bessel_i_scaled: argument must be non-negative");
    if (z == 0.0) return nu == 0.0 ? 0.0 : -inf;
    if (nu >= 50.0) return bessel_olver_log(nu, z);
    if (z > 400.0 && 4.0 * nu * nu <= 0.5 * z) return bessel_hankel_log(nu, z);
    return bessel_series_log(nu, z);
}

double bessel_i_scaled(double nu, double z) {
    return std::exp(bessel_i_scaled_log(nu, z));
}

double sphere_area(int N) {
    if (N < 1) throw domain_error("sphere_area: N must be >= 1");
    return 2.0 * std::exp(0.5 * N * std::log(M_PI) - std::lgamma(0.5 * N));
}

} // namespace fbh::specfun
