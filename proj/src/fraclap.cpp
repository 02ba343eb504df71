#include "fbh/fraclap.hpp"
#include "fbh/errors.hpp"
#include "fbh/fft.hpp"
#include "fbh/quadrature.hpp"
#include "fbh/semigroup.hpp"
#include "fbh/specfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace fbh::fraclap {

namespace {

double sqnorm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

// 5-point second difference, per-axis sum = Laplacian.
double fd_laplacian(const std::function<double(std::span<const double>)>& F, int n,
                    std::span<const double> x, double h = 0.05) {
    std::array<double, 4> pt{};
    for (int k = 0; k < n; ++k) pt[k] = x[k];
    auto at = [&]() { return F(std::span<const double>(pt.data(), n)); };
    double f0 = at();
    double lap = 0.0;
    for (int k = 0; k < n; ++k) {
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

double mass_integral(const testfn::SpaceFunction& f, double R) {
    if (f.d == 1) {
        return quad::integrate_panels([&](double x) { return f(x); }, -R, R, 0.5, 8);
    }
    if (f.d == 2) {
        auto inner = [&](double y) {
            return quad::integrate_panels(
                [&](double x) {
                    std::array<double, 2> p{x, y};
                    return f.eval(std::span<const double>(p.data(), 2));
                },
                -R, R, 1.0, 12);
        };
        return quad::integrate_panels(inner, -R, R, 1.0, 12);
    }
    return 0.0; // higher dimensions: rely on the tau^{-n/2} semigroup decay alone
}

double decay_radius(const testfn::SpaceFunction& f) {
    if (f.support_radius) return *f.support_radius + 2.0;
    return 40.0;
}

struct SpherePoint {
    std::array<double, 3> dir{};
    double weight = 0.0;
};

std::vector<SpherePoint> sphere_rule(int n) {
    std::vector<SpherePoint> pts;
    if (n == 1) {
        pts.push_back({{1.0, 0.0, 0.0}, 1.0});
        pts.push_back({{-1.0, 0.0, 0.0}, 1.0});
    } else if (n == 2) {
        const int nphi = 64;
        for (int i = 0; i < nphi; ++i) {
            double phi = 2.0 * M_PI * i / nphi;
            pts.push_back({{std::cos(phi), std::sin(phi), 0.0}, 2.0 * M_PI / nphi});
        }
    } else if (n == 3) {
        const int nc = 16, nphi = 32;
        const auto& gl = quad::gauss_legendre(nc);
        for (int i = 0; i < nc; ++i) {
            double c = gl.nodes[i];
            double rho = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int j = 0; j < nphi; ++j) {
                double phi = 2.0 * M_PI * j / nphi;
                pts.push_back({{rho * std::cos(phi), rho * std::sin(phi), c},
                               gl.weights[i] * 2.0 * M_PI / nphi});
            }
        }
    } else {
        throw domain_error("fraclap_pv: dimension must be 1..3");
    }
    return pts;
}

struct PvParts {
    double interior = 0.0;
    double head = 0.0;
    double tail = 0.0;
};

PvParts pv_parts(const std::function<double(std::span<const double>)>& F, int n,
                 double s, std::span<const double> x,
                 const std::vector<SpherePoint>& sphere, double r_min, double r_max,
                 double sigma_panel) {
    double f0 = F(x);
    std::array<double, 3> plus{}, minus{};
    auto second_diff_sum = [&](double r) {
        double acc = 0.0;
        for (const auto& p : sphere) {
            for (int k = 0; k < n; ++k) {
                plus[k] = x[k] + r * p.dir[k];
                minus[k] = x[k] - r * p.dir[k];
            }
            acc += p.weight * (2.0 * f0 -
                               F(std::span<const double>(plus.data(), n)) -
                               F(std::span<const double>(minus.data(), n)));
        }
        return acc;
    };
    PvParts parts;
    parts.interior = quad::integrate_panels(
        [&](double sigma) { return std::exp(-2.0 * s * sigma) * second_diff_sum(std::exp(sigma)); },
        std::log(r_min), std::log(r_max), sigma_panel, 8);
    double area = specfun::sphere_area(n);
    parts.head = -fd_laplacian(F, n, x) * (area / n) *
                 std::pow(r_min, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    parts.tail = 2.0 * area * f0 * std::pow(r_max, -2.0 * s) / (2.0 * s);
    return parts;
}

} // namespace

double Field1D::value_at(double x) const {
    double u = (x + half_width) / (2.0 * half_width / n);
    int j = static_cast<int>(std::floor(u));
    double t = u - j;
    auto wrap = [&](int k) { return values[((k % n) + n) % n]; };
    double wm1 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    double w0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    double w1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    double w2 = (t + 1.0) * t * (t - 1.0) / 6.0;
    return wm1 * wrap(j - 1) + w0 * wrap(j) + w1 * wrap(j + 1) + w2 * wrap(j + 2);
}

double FieldND::at(std::span<const int> idx) const {
    size_t flat = 0;
    for (size_t a = 0; a < dims.size(); ++a)
        flat = flat * dims[a] + static_cast<size_t>(idx[a]);
    return values[flat];
}

Field1D fraclap_fourier_samples(std::vector<double> samples, double half_width,
                                double s, double truncation_tol) {
    if (s <= 0.0 || s > 1.0)
        throw domain_error("fraclap_fourier: s must lie in (0,1]");
    if (half_width <= 0.0) throw domain_error("fraclap_fourier: half_width must be positive");
    int n = static_cast<int>(samples.size());
    if (n < 8) throw domain_error("fraclap_fourier: too few samples");

    std::vector<std::complex<double>> spec(samples.begin(), samples.end());
    fft::dft(spec, {n}, -1);

    double total = 0.0, tail = 0.0;
    for (int k = 1; k < n; ++k) {
        double p = std::norm(spec[k]);
        total += p;
        int ks = (k <= n / 2) ? k : k - n;
        if (std::abs(ks) >= static_cast<int>(0.45 * n)) tail += p;
    }
    if (total > 0.0 && tail > truncation_tol * total)
        throw quadrature_error("fraclap_fourier: spectral tail mass exceeds truncation_tol (aliasing)");

    for (int k = 0; k < n; ++k) {
        double xi = fft::frequency(k, n, half_width);
        spec[k] *= (k == 0) ? 0.0 : std::pow(std::abs(xi), 2.0 * s);
    }
    fft::dft(spec, {n}, +1);

    Field1D out;
    out.half_width = half_width;
    out.n = n;
    out.values.resize(n);
    double max_re = 0.0, max_im = 0.0;
    for (int k = 0; k < n; ++k) {
        out.values[k] = spec[k].real() / n;
        max_re = std::max(max_re, std::abs(out.values[k]));
        max_im = std::max(max_im, std::abs(spec[k].imag() / n));
    }
    if (max_im > 1e-10 * std::max(1.0, max_re))
        throw quadrature_error("fraclap_fourier: imaginary residue above tolerance");
    return out;
}

Field1D fraclap_fourier(const testfn::SpaceFunction& f, double s,
                        const SpectralGrid1D& grid) {
    if (f.d != 1) throw domain_error("fraclap_fourier: expects 1-d data");
    std::vector<double> samples(grid.n);
    for (int j = 0; j < grid.n; ++j)
        samples[j] = f(-grid.half_width + 2.0 * grid.half_width * j / grid.n);
    if (std::abs(samples[0]) > grid.truncation_tol)
        throw domain_error("fraclap_fourier: data does not decay below truncation_tol at the boundary");
    return fraclap_fourier_samples(std::move(samples), grid.half_width, s,
                                   grid.truncation_tol);
}

FieldND fraclap_fourier_nd(const std::function<double(std::span<const double>)>& f,
                           const std::vector<int>& dims,
                           const std::vector<double>& half_widths, double s,
                           double truncation_tol) {
    if (s <= 0.0 || s > 1.0)
        throw domain_error("fraclap_fourier_nd: s must lie in (0,1]");
    size_t nd = dims.size();
    if (nd == 0 || nd > 3 || half_widths.size() != nd)
        throw domain_error("fraclap_fourier_nd: bad dims");
    size_t total_pts = 1;
    for (int d : dims) total_pts *= static_cast<size_t>(d);

    std::vector<std::complex<double>> spec(total_pts);
    std::array<int, 3> idx{};
    std::array<double, 3> pt{};
    for (size_t flat = 0; flat < total_pts; ++flat) {
        for (size_t a = 0; a < nd; ++a)
            pt[a] = -half_widths[a] + 2.0 * half_widths[a] * idx[a] / dims[a];
        spec[flat] = f(std::span<const double>(pt.data(), nd));
        for (int a = static_cast<int>(nd) - 1; a >= 0; --a) {
            if (++idx[a] < dims[a]) break;
            idx[a] = 0;
        }
    }
    fft::dft(spec, dims, -1);

    double total = 0.0, tail = 0.0;
    idx = {};
    for (size_t flat = 0; flat < total_pts; ++flat) {
        bool in_tail = false;
        bool dc = true;
        for (size_t a = 0; a < nd; ++a) {
            int ks = (idx[a] <= dims[a] / 2) ? idx[a] : idx[a] - dims[a];
            if (ks != 0) dc = false;
            if (std::abs(ks) >= static_cast<int>(0.45 * dims[a])) in_tail = true;
        }
        if (!dc) {
            double p = std::norm(spec[flat]);
            total += p;
            if (in_tail) tail += p;
        }
        for (int a = static_cast<int>(nd) - 1; a >= 0; --a) {
            if (++idx[a] < dims[a]) break;
            idx[a] = 0;
        }
    }
    if (total > 0.0 && tail > truncation_tol * total)
        throw quadrature_error("fraclap_fourier_nd: spectral tail mass exceeds truncation_tol (aliasing)");

    idx = {};
    for (size_t flat = 0; flat < total_pts; ++flat) {
        double xi2 = 0.0;
        for (size_t a = 0; a < nd; ++a) {
            double xi = fft::frequency(idx[a], dims[a], half_widths[a]);
            xi2 += xi * xi;
        }
        spec[flat] *= (xi2 == 0.0) ? 0.0 : std::pow(xi2, s);
        for (int a = static_cast<int>(nd) - 1; a >= 0; --a) {
            if (++idx[a] < dims[a]) break;
            idx[a] = 0;
        }
    }
    fft::dft(spec, dims, +1);

    FieldND out;
    out.dims = dims;
    out.half_widths = half_widths;
    out.values.resize(total_pts);
    double max_re = 0.0, max_im = 0.0;
    double inv = 1.0 / static_cast<double>(total_pts);
    for (size_t flat = 0; flat < total_pts; ++flat) {
        out.values[flat] = spec[flat].real() * inv;
        max_re = std::max(max_re, std::abs(out.values[flat]));
        max_im = std::max(max_im, std::abs(spec[flat].imag() * inv));
    }
    if (max_im > 1e-10 * std::max(1.0, max_re))
        throw quadrature_error("fraclap_fourier_nd: imaginary residue above tolerance");
    return out;
}

FracLapResult fraclap_subordination(const testfn::SpaceFunction& f, double s,
                                    std::span<const double> x) {
    if (s <= 0.0 || s >= 1.0)
        throw domain_error("fraclap_subordination: s must lie in (0,1)");
    double v0 = f.eval(x);
    double slope0 = fd_laplacian(f.eval, f.d, x);
    double m0 = mass_integral(f, decay_radius(f));
    auto V = [&](double tau) { return semigroup::heat_apply(f, tau, x); };

    quad::SubordinationOptions opt;
    opt.tau_max = 1e3;
    opt.tail_coeff = m0 * std::pow(4.0 * M_PI, -0.5 * f.d);
    opt.tail_power = 0.5 * f.d;
    double v1 = quad::subordinate(V, v0, s, slope0, opt);
    opt.sigma_panel = 0.3;
    double v2 = quad::subordinate(V, v0, s, slope0, opt);

    FracLapResult res;
    res.value = v1;
    res.method = Method::subordination;
    res.error_estimate = std::abs(v1 - v2) +
                         std::abs(opt.tail_coeff) * std::pow(opt.tau_max, -opt.tail_power - 1.0 - s);
    return res;
}

FracLapResult fraclap_subordination(const testfn::SpaceFunction& f, double s, double x) {
    return fraclap_subordination(f, s, std::span<const double>(&x, 1));
}

FracLapResult fraclap_pv_fn(const std::function<double(std::span<const double>)>& F,
                            int n, double s, std::span<const double> x, double r_max) {
    if (s <= 0.0 || s >= 1.0)
        throw domain_error("fraclap_pv: s must lie in (0,1)");
    auto sphere = sphere_rule(n);
    const double r_min = 1e-3;
    // c_{n,s} = 4^s Gamma(n/2+s) / (pi^{n/2} |Gamma(-s)|), |Gamma(-s)| = Gamma(1-s)/s.
    double c = std::pow(4.0, s) * std::tgamma(0.5 * n + s) * s /
               (std::pow(M_PI, 0.5 * n) * std::tgamma(1.0 - s));

    auto p1 = pv_parts(F, n, s, x, sphere, r_min, r_max, 0.5);
    auto p2 = pv_parts(F, n, s, x, sphere, r_min, r_max, 0.35);

    FracLapResult res;
    res.value = 0.5 * c * (p1.interior + p1.head + p1.tail);
    res.method = Method::pv_integral;
    res.error_estimate = 0.5 * c * (std::abs(p1.interior - p2.interior) +
                                    0.01 * std::abs(p1.head) + 0.5 * std::abs(p1.tail));
    return res;
}

FracLapResult fraclap_pv(const testfn::SpaceFunction& f, double s,
                         std::span<const double> x) {
    double r_max = std::sqrt(sqnorm(x)) + decay_radius(f);
    return fraclap_pv_fn(f.eval, f.d, s, x, r_max);
}

FracLapResult fraclap_pv(const testfn::SpaceFunction& f, double s, double x) {
    return fraclap_pv(f, s, std::span<const double>(&x, 1));
}

RieszResult riesz_potential(const testfn::SpaceFunction& f, double s,
                            std::span<const double> x) {
    if (s <= 0.0 || s >= 0.5 * f.d)
        throw domain_error("riesz_potential: s must lie in (0, n/2)");
    RieszResult res;
    res.mass = mass_integral(f, decay_radius(f));
    res.moment_warning = std::abs(res.mass) > 1e-8 * std::max(1.0, f.sup_bound);
    auto V = [&](double tau) { return semigroup::heat_apply(f, tau, x); };
    res.value = quad::inverse_subordinate(V, f.eval(x), s, 1e-9, 1e5);
    return res;
}

RieszResult riesz_potential(const testfn::SpaceFunction& f, double s, double x) {
    return riesz_potential(f, s, std::span<const double>(&x, 1));
}

double radiality_check(const testfn::SpaceTimeFunction& u, double s, int N,
                       double t_probe, int n_rotations, unsigned seed) {
    if (N < 2) throw domain_error("radiality_check: N must be >= 2");
    if (u.d + N > 3) throw domain_error("radiality_check: direct PV requires d + N <= 3");
    // d + N <= 3 with N >= 2 and d >= 1 forces d = 1, N = 2.
    int n = u.d + N;
    auto F = [&](std::span<const double> X) {
        double t = (X[1] * X[1] + X[2] * X[2]) / (2.0 * N);
        return u(std::span<const double>(X.data(), 1), t);
    };
    double rho = std::sqrt(2.0 * N * t_probe);
    double r_max = rho + 1.0 + 40.0;
    std::array<double, 3> X{0.3, rho * std::cos(0.4), rho * std::sin(0.4)};
    double base = fraclap_pv_fn(F, n, s, std::span<const double>(X.data(), n), r_max).value;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double dev = 0.0;
    for (int k = 0; k < n_rotations; ++k) {
        double th = angle(rng);
        double a = 0.4 + th;
        X = {0.3, rho * std::cos(a), rho * std::sin(a)};
        double v = fraclap_pv_fn(F, n, s, std::span<const double>(X.data(), n), r_max).value;
        dev = std::max(dev, std::abs(v - base));
    }
    return dev;
}

} // namespace fbh::fraclap
