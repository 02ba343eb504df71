#ifndef FBH_QUADRATURE_HPP
#define FBH_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace fbh::quad {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Hermite rule for the weight e^{-w^2} on (-inf, inf).
const Rule1D& gauss_hermite(int n);

// Gauss-Legendre rule on [-1, 1].
const Rule1D& gauss_legendre(int n);

// Integrate f over [a, b] with composite Gauss-Legendre panels of width
// at most panel_width, `order` nodes per panel.
double integrate_panels(const std::function<double(double)>& f,
                        double a, double b,
                        double panel_width = 0.5, int order = 8);

// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol, int max_depth = 40);

// Subordination quadrature
//   (1/Gamma(-s)) Int_0^inf (V(tau) - v0) tau^{-1-s} dtau,  s in (0,1).
// The segment [0, tau_min] uses the first-order model V - v0 ~ slope0*tau,
// the segment [tau_max, inf) uses V ~ tail_coeff * tau^{-tail_power} (heat
// semigroups of integrable data decay like mass * (4 pi tau)^{-n/2}).
// The interior is integrated on a log axis with composite Gauss-Legendre panels.
struct SubordinationOptions {
    double tau_min = 1e-7;
    double tau_max = 60.0;
    double sigma_panel = 0.5;
    int panel_order = 8;
    double tail_coeff = 0.0;
    double tail_power = 0.0;
};
double subordinate(const std::function<double(double)>& V, double v0, double s,
                   double slope0, const SubordinationOptions& opt = {});

// As subordinate, but fits the tail model V ~ c * tau^{-p} from samples at
// tau_max and 2*tau_max (skipped when V(tau_max) is already negligible).
double subordinate_adaptive(const std::function<double(double)>& V, double v0,
                            double s, double slope0, SubordinationOptions opt = {});

// Inverse-power quadrature  (1/Gamma(s)) Int_0^inf V(tau) tau^{s-1} dtau,
// s > 0. [0, tau_min] uses V ~ v0; the tail beyond tau_max is dropped
// (caller picks tau_max from the decay of V).
double inverse_subordinate(const std::function<double(double)>& V, double v0,
                           double s, double tau_min = 1e-9, double tau_max = 1e5,
                           double sigma_panel = 0.5, int panel_order = 8);

} // namespace fbh::quad

#endif
