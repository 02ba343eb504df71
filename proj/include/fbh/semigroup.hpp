#ifndef FBH_SEMIGROUP_HPP
#define FBH_SEMIGROUP_HPP

#include "fbh/testfn.hpp"

#include <functional>
#include <span>

namespace fbh::semigroup {

// e^{tau Delta} f at x: (4 pi tau)^{-n/2} Int e^{-|x-xb|^2/4tau} f(xb) dxb,
// computed by tensor Gauss-Hermite quadrature in the rescaled variable.
double heat_apply(const std::function<double(std::span<const double>)>& f, int n,
                  double tau, std::span<const double> x, int gh_order = 64);

double heat_apply(const testfn::SpaceFunction& f, double tau,
                  std::span<const double> x, int gh_order = 64);
double heat_apply_1d(const std::function<double(double)>& f, double tau, double x,
                     int gh_order = 64);

// e^{tau(-Delta - d/dt)} u at (x, t): heat smoothing in space of the
// time-advanced slice u(. , t + tau).
double backward_heat_apply(const testfn::SpaceTimeFunction& u, double tau,
                           std::span<const double> x, double t, int gh_order = 64);
double backward_heat_apply(const testfn::SpaceTimeFunction& u, double tau, double x,
                           double t, int gh_order = 64);

} // namespace fbh::semigroup

#endif
