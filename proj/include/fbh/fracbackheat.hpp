#ifndef FBH_FRACBACKHEAT_HPP
#define FBH_FRACBACKHEAT_HPP

#include "fbh/testfn.hpp"

#include <functional>
#include <span>
#include <vector>

namespace fbh::fracbackheat {

struct SpectralGrid2D {
    double x_half_width = 64.0;
    int nx = 1024;
    double t_half_width = 64.0;
    int nt = 1024;
    double truncation_tol = 1e-8;
};

// Periodic field on [-Lx, Lx) x [-Lt, Lt); values[it * nx + ix].
struct Field2D {
    double x_half_width = 0.0;
    double t_half_width = 0.0;
    int nx = 0;
    int nt = 0;
    std::vector<double> values;

    double x_at(int ix) const { return -x_half_width + 2.0 * x_half_width * ix / nx; }
    double t_at(int it) const { return -t_half_width + 2.0 * t_half_width * it / nt; }
    double at(int ix, int it) const { return values[static_cast<size_t>(it) * nx + ix]; }
    // Bicubic (tensor cubic Lagrange) interpolation with periodic wrap.
    double value_at(double x, double t) const;
};

// Grid adapted to the data: compactly supported functions get a smaller box
// with finer spacing (their spectra decay like exp(-sqrt(xi)), so the default
// spacing would trip the aliasing check); Schwartz data keeps the default.
SpectralGrid2D grid_for(const testfn::SpaceTimeFunction& u);

// (-Delta - d/dt)^s via the joint space-time multiplier (|xi|^2 - i omega)^s
// on the even extension u(x, |t|); d = 1 only for the spectral path.
Field2D fbh_fourier(const testfn::SpaceTimeFunction& u, double s,
                    const SpectralGrid2D& grid = {});

// Bochner subordination over the backward heat semigroup.
double fbh_subordination(const testfn::SpaceTimeFunction& u, double s,
                         std::span<const double> x, double t);
double fbh_subordination(const testfn::SpaceTimeFunction& u, double s, double x, double t);

struct InverseResult {
    double value = 0.0;
    bool divergence_warning = false;
};

// (-Delta - d/dt)^{-s}: (1/Gamma(s)) Int V tau^{s-1} dtau, s in (0, d).
InverseResult fbh_inverse(const testfn::SpaceTimeFunction& u, double s,
                          std::span<const double> x, double t);
InverseResult fbh_inverse(const testfn::SpaceTimeFunction& u, double s, double x, double t);

// Right-sided Marchaud derivative (1/Gamma(-s)) Int (g(t+tau)-g(t)) tau^{-1-s} dtau.
double marchaud(const std::function<double(double)>& g, double s, double t);

} // namespace fbh::fracbackheat

#endif
