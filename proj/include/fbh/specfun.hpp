#ifndef FBH_SPECFUN_HPP
#define FBH_SPECFUN_HPP

#include <cmath>

namespace fbh::specfun {

// Absolute distance to a Gamma pole below which arguments are rejected.
inline constexpr double pole_tolerance = 1e-9;

enum class Regime { series, continued_fraction, asymptotic };

// A number carried as value * exp(log_scale) so that huge/tiny special-function
// values compose without overflow.
struct SpecialValue {
    double value = 0.0;
    double log_scale = 0.0;
    Regime regime = Regime::series;

    double get() const { return value * std::exp(log_scale); }
};

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Gamma(x) for non-pole real x: value holds the sign (+-1), log_scale the
// log-magnitude. Negative arguments go through the reflection identity.
SpecialValue gamma_signed(double x);

// Gamma(z+a) / Gamma(z+b), both arguments positive.
double gamma_quotient(double z, double a, double b);

// Lower / upper incomplete gamma, gamma(a,z) and Gamma(a,z), a > 0, z >= 0.
SpecialValue incomplete_gamma_lower(double a, double z);
SpecialValue incomplete_gamma_upper(double a, double z);

// Regularized P(a,z) = gamma(a,z)/Gamma(a).
double incomplete_gamma_p(double a, double z);

// log of e^{-z} I_nu(z), nu > -1/2, z >= 0. Returns -inf when the scaled
// value underflows.
double bessel_i_scaled_log(double nu, double z);

// e^{-z} I_nu(z).
double bessel_i_scaled(double nu, double z);

// Area of the unit sphere S^{N-1} in R^N.
double sphere_area(int N);

// Distance from x to the nearest non-positive integer.
double pole_distance(double x);

} // namespace fbh::specfun

#endif
