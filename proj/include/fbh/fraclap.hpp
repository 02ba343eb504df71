#ifndef FBH_FRACLAP_HPP
#define FBH_FRACLAP_HPP

#include "fbh/testfn.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fbh::fraclap {

enum class Method { fourier, subordination, pv_integral };

struct FracLapResult {
    double value = 0.0;
    Method method = Method::fourier;
    double error_estimate = 0.0;
};

// Periodic spectral field on [-L, L), x_j = -L + j * 2L/n.
struct Field1D {
    double half_width = 0.0;
    int n = 0;
    std::vector<double> values;

    double x_at(int j) const { return -half_width + 2.0 * half_width * j / n; }
    // Cubic Lagrange interpolation on the four nearest nodes.
    double value_at(double x) const;
};

struct SpectralGrid1D {
    // the long-range |x|^{-1-2s} tail periodizes with error ~ L^{-1-2s}, so the
    // box is kept large while the spacing (2L/n = 1/64) resolves the data
    double half_width = 256.0;
    int n = 32768;
    double truncation_tol = 1e-8;
};

// Tensor-product spectral field on prod_a [-L_a, L_a), row-major, last axis
// fastest. Used for the high-dimensional cross-checks of the lifting module.
struct FieldND {
    std::vector<int> dims;
    std::vector<double> half_widths;
    std::vector<double> values;

    double coord(int axis, int idx) const {
        return -half_widths[axis] + 2.0 * half_widths[axis] * idx / dims[axis];
    }
    double at(std::span<const int> idx) const;
};

// |xi|^{2s} multiplier applied to periodic samples; s in (0, 1].
// Throws quadrature_error when the top-decile spectral tail mass exceeds
// truncation_tol (aliasing) or the imaginary residue survives the check.
Field1D fraclap_fourier_samples(std::vector<double> samples, double half_width,
                                double s, double truncation_tol = 1e-8);

// Convenience wrapper: samples f on the grid (also checks boundary decay).
Field1D fraclap_fourier(const testfn::SpaceFunction& f, double s,
                        const SpectralGrid1D& grid = {});

// n-dimensional multiplier path for n <= 3 (memory permitting).
FieldND fraclap_fourier_nd(const std::function<double(std::span<const double>)>& f,
                           const std::vector<int>& dims,
                           const std::vector<double>& half_widths, double s,
                           double truncation_tol = 1e-6);

// Bochner subordination (1/Gamma(-s)) Int (e^{tau Delta}f - f) tau^{-1-s} dtau,
// normalized so cos(kx) -> |k|^{2s} cos(kx).
FracLapResult fraclap_subordination(const testfn::SpaceFunction& f, double s,
                                    std::span<const double> x);
FracLapResult fraclap_subordination(const testfn::SpaceFunction& f, double s, double x);

// Levy-Khintchine principal-value integral with the symmetrized second
// difference; dimensions 1..3.
FracLapResult fraclap_pv(const testfn::SpaceFunction& f, double s,
                         std::span<const double> x);
FracLapResult fraclap_pv(const testfn::SpaceFunction& f, double s, double x);

// Same PV evaluator on a raw callable (used by the lifting radiality check).
FracLapResult fraclap_pv_fn(const std::function<double(std::span<const double>)>& F,
                            int n, double s, std::span<const double> x,
                            double r_max = 40.0);

struct RieszResult {
    double value = 0.0;
    double mass = 0.0;        // numerically computed Int f
    bool moment_warning = false;
};

// Riesz potential (1/Gamma(s)) Int e^{tau Delta}f tau^{s-1} dtau, s in (0, n/2).
RieszResult riesz_potential(const testfn::SpaceFunction& f, double s,
                            std::span<const double> x);
RieszResult riesz_potential(const testfn::SpaceFunction& f, double s, double x);

// Radiality check: (-Delta_{x,y})^s of the lifted profile u(x, |y|^2/2N) is
// invariant under rotations of y. Direct PV quadrature; requires d + N <= 3.
double radiality_check(const testfn::SpaceTimeFunction& u, double s, int N,
                       double t_probe = 4.0, int n_rotations = 10,
                       unsigned seed = 20260823);

} // namespace fbh::fraclap

#endif
