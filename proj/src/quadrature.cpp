#include "fbh/quadrature.hpp"
#include "fbh/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace fbh::quad {

namespace {

Rule1D compute_gauss_hermite(int n) {
    // Newton iteration on the physicists' Hermite polynomials.
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pim4 = 0.7511255444649425; // pi^{-1/4}
    int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.nodes[1];
        else
            z = 2.0 * z - rule.nodes[i - 2];
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

Rule1D compute_gauss_legendre(int n) {
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

std::mutex cache_mutex;

const Rule1D& cached(std::map<int, Rule1D>& cache, int n, Rule1D (*make)(int)) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make(n)).first;
    return it->second;
}

} // namespace

const Rule1D& gauss_hermite(int n) {
    static std::map<int, Rule1D> cache;
    return cached(cache, n, compute_gauss_hermite);
}

const Rule1D& gauss_legendre(int n) {
    static std::map<int, Rule1D> cache;
    return cached(cache, n, compute_gauss_legendre);
}

double integrate_panels(const std::function<double(double)>& f,
                        double a, double b, double panel_width, int order) {
    if (b <= a) return 0.0;
    int npanels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
    double h = (b - a) / npanels;
    const Rule1D& gl = gauss_legendre(order);
    double total = 0.0;
    for (int k = 0; k < npanels; ++k) {
        double lo = a + k * h;
        double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (int j = 0; j < order; ++j)
            acc += gl.weights[j] * f(mid + 0.5 * h * gl.nodes[j]);
        total += 0.5 * h * acc;
    }
    return total;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) throw quadrature_error("adaptive_simpson: depth exhausted");
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double subordinate(const std::function<double(double)>& V, double v0, double s,
                   double slope0, const SubordinationOptions& opt) {
    if (s <= 0.0 || s >= 1.0)
        throw domain_error("subordinate: s must lie in (0,1)");
    // 1/Gamma(-s) = -s / Gamma(1-s), negative for s in (0,1).
    double inv_gamma = -s / std::tgamma(1.0 - s);
    double a = std::log(opt.tau_min), b = std::log(opt.tau_max);
    auto g = [&](double sigma) {
        double tau = std::exp(sigma);
        return (V(tau) - v0) * std::exp(-s * sigma);
    };
    double interior = integrate_panels(g, a, b, opt.sigma_panel, opt.panel_order);
    double head = slope0 * std::pow(opt.tau_min, 1.0 - s) / (1.0 - s);
    double tail = -v0 * std::pow(opt.tau_max, -s) / s;
    if (opt.tail_coeff != 0.0)
        tail += opt.tail_coeff * std::pow(opt.tau_max, -opt.tail_power - s) /
                (opt.tail_power + s);
    return inv_gamma * (interior + head + tail);
}

double subordinate_adaptive(const std::function<double(double)>& V, double v0,
                            double s, double slope0, SubordinationOptions opt) {
    double va = V(opt.tau_max);
    if (std::abs(va) > 1e-13) {
        double vb = V(2.0 * opt.tau_max);
        if (va * vb > 0.0 && std::abs(vb) < std::abs(va)) {
            double p = std::log(va / vb) / std::log(2.0);
            opt.tail_power = std::clamp(p, 0.1, 60.0);
            opt.tail_coeff = va * std::pow(opt.tau_max, opt.tail_power);
        }
    }
    return subordinate(V, v0, s, slope0, opt);
}

double inverse_subordinate(const std::function<double(double)>& V, double v0,
                           double s, double tau_min, double tau_max,
                           double sigma_panel, int panel_order) {
    if (s <= 0.0) throw domain_error("inverse_subordinate: s must be positive");
    double inv_gamma = 1.0 / std::tgamma(s);
    double a = std::log(tau_min), b = std::log(tau_max);
    auto g = [&](double sigma) {
        double tau = std::exp(sigma);
        return V(tau) * std::exp(s * sigma);
    };
    double interior = integrate_panels(g, a, b, sigma_panel, panel_order);
    double head = v0 * std::pow(tau_min, s) / s;
    return inv_gamma * (interior + head);
}

} // namespace fbh::quad
