#include "fbh/testfn.hpp"
#include "fbh/errors.hpp"
#include "fbh/quadrature.hpp"
#include "fbh/specfun.hpp"

#include <cmath>
#include <charconv>
#include <sstream>

namespace fbh::testfn {

namespace {

double sqnorm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

// exp(-1/(1-r^2)) for |r|<1, 0 otherwise; peak value e^{-1}.
double bump_profile(double r) {
    double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

} // namespace

void GridSpec::validate() const {
    if (x_extent <= 0.0 || t_extent <= 0.0)
        throw domain_error("GridSpec: extents must be positive");
    if (x_points < 8 || t_points < 8)
        throw domain_error("GridSpec: point counts must be >= 8");
    if (t_grading < 1.0)
        throw domain_error("GridSpec: grading exponent must be >= 1");
}

std::vector<double> GridSpec::x_nodes() const {
    std::vector<double> xs(x_points);
    for (int i = 0; i < x_points; ++i)
        xs[i] = -x_extent + 2.0 * x_extent * i / (x_points - 1);
    return xs;
}

std::vector<double> GridSpec::t_nodes() const {
    std::vector<double> ts(t_points);
    for (int i = 0; i < t_points; ++i)
        ts[i] = t_extent * std::pow(static_cast<double>(i) / (t_points - 1), t_grading);
    return ts;
}

SpaceTimeFunction make_space_time_gaussian(int d, double a, double b, double t0) {
    if (a <= 0.0 || b <= 0.0 || t0 <= 0.0)
        throw domain_error("make_space_time_gaussian: a, b, t0 must be positive");
    SpaceTimeFunction u;
    u.d = d;
    u.sup_bound = 1.0;
    u.decay_class = DecayClass::schwartz;
    std::ostringstream id;
    id << "gauss-a" << a << "-b" << b << "-t" << t0;
    u.id = id.str();
    u.eval = [a, b, t0](std::span<const double> x, double t) {
        return std::exp(-a * sqnorm(x)) * std::exp(-b * (t - t0) * (t - t0));
    };
    return u;
}

SpaceTimeFunction make_bump(int d, double R, double t_center, double t_width) {
    if (R <= 0.0 || t_width <= 0.0)
        throw domain_error("make_bump: R and t_width must be positive");
    if (t_center - t_width <= 0.0)
        throw domain_error("make_bump: support must stay away from t=0");
    SpaceTimeFunction u;
    u.d = d;
    u.sup_bound = std::exp(-2.0);
    u.decay_class = DecayClass::compact_support;
    u.support_radius = std::sqrt(R * R + (t_center + t_width) * (t_center + t_width));
    std::ostringstream id;
    id << "bump-R" << R << "-tc" << t_center << "-tw" << t_width;
    u.id = id.str();
    u.eval = [R, t_center, t_width](std::span<const double> x, double t) {
        double rx = std::sqrt(sqnorm(x)) / R;
        double rt = (t - t_center) / t_width;
        return bump_profile(rx) * bump_profile(rt);
    };
    return u;
}

SpaceFunction make_space_gaussian(int d, double a, double center) {
    if (a <= 0.0) throw domain_error("make_space_gaussian: a must be positive");
    SpaceFunction f;
    f.d = d;
    f.sup_bound = 1.0;
    f.decay_class = DecayClass::schwartz;
    std::ostringstream id;
    id << "sgauss-a" << a;
    if (center != 0.0) id << "-c" << center;
    f.id = id.str();
    f.eval = [a, center](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += (v - center) * (v - center);
        return std::exp(-a * s);
    };
    return f;
}

SpaceFunction make_space_bump(int d, double R) {
    if (R <= 0.0) throw domain_error("make_space_bump: R must be positive");
    SpaceFunction f;
    f.d = d;
    f.sup_bound = std::exp(-1.0);
    f.decay_class = DecayClass::compact_support;
    f.support_radius = R;
    std::ostringstream id;
    id << "sbump-R" << R;
    f.id = id.str();
    f.eval = [R](std::span<const double> x) { return bump_profile(std::sqrt(sqnorm(x)) / R); };
    return f;
}

SpaceTimeFunction even_extension(const SpaceTimeFunction& u) {
    SpaceTimeFunction v = u;
    auto inner = u.eval;
    v.eval = [inner](std::span<const double> x, double t) { return inner(x, std::abs(t)); };
    v.id = u.id + "-even";
    return v;
}

SampledField sample(const SpaceTimeFunction& u, const GridSpec& grid) {
    grid.validate();
    SampledField field;
    field.grid = grid;
    auto xs = grid.x_nodes();
    auto ts = grid.t_nodes();
    field.values.resize(xs.size() * ts.size());
    for (size_t it = 0; it < ts.size(); ++it)
        for (size_t ix = 0; ix < xs.size(); ++ix) {
            double v = u(xs[ix], ts[it]);
            if (!std::isfinite(v)) throw domain_error("sample: non-finite value");
            field.values[it * xs.size() + ix] = v;
        }
    return field;
}

namespace {

// Parse "key<number>" tokens out of ids like "gauss-a1-b0.5-t4".
double token_value(const std::string& tok, char key, bool& ok) {
    if (tok.empty() || tok[0] != key) { ok = false; return 0.0; }
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
    ok = (ec == std::errc() && p == tok.data() + tok.size());
    return v;
}

std::vector<std::string> split_dash(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, '-')) parts.push_back(item);
    return parts;
}

} // namespace

SpaceTimeFunction by_id(const std::string& id) {
    auto parts = split_dash(id);
    bool ok = true;
    if (parts.size() == 4 && parts[0] == "gauss") {
        bool o1, o2, o3;
        double a = token_value(parts[1], 'a', o1);
        double b = token_value(parts[2], 'b', o2);
        double t0 = token_value(parts[3], 't', o3);
        if (o1 && o2 && o3) return make_space_time_gaussian(1, a, b, t0);
        ok = false;
    } else if (parts.size() == 4 && parts[0] == "bump") {
        bool o1, o2, o3;
        double R = token_value(parts[1], 'R', o1);
        double tc = token_value(parts[2].substr(1), 'c', o2); // "tcX"
        double tw = token_value(parts[3].substr(1), 'w', o3); // "twX"
        if (o1 && o2 && o3) return make_bump(1, R, tc, tw);
        ok = false;
    } else {
        ok = false;
    }
    (void)ok;
    throw config_error("unknown test-function id: " + id);
}

SpaceFunction space_by_id(const std::string& id) {
    auto parts = split_dash(id);
    if (parts.size() >= 2 && parts[0] == "sgauss") {
        bool o1 = true, o2 = true;
        double a = token_value(parts[1], 'a', o1);
        double c = parts.size() == 3 ? token_value(parts[2], 'c', o2) : 0.0;
        if (o1 && o2 && parts.size() <= 3) return make_space_gaussian(1, a, c);
    } else if (parts.size() == 2 && parts[0] == "sbump") {
        bool o1 = true;
        double R = token_value(parts[1], 'R', o1);
        if (o1) return make_space_bump(1, R);
    }
    throw config_error("unknown space-function id: " + id);
}

namespace {

bool near_integer(double x, double tol) {
    return std::abs(x - std::round(x)) <= tol && std::round(x) >= 0.0;
}

} // namespace

ValidationReport validate_hypotheses(const SpaceTimeFunction& u, const FracParams& params,
                                     Theorem theorem) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.passed = false;
        rep.failures.push_back(msg);
    };
    if (params.s <= 0.0 || params.s >= 1.0)
        fail("s must lie in (0,1)");
    if (params.d < 1)
        fail("d must be >= 1");

    if (theorem == Theorem::thm1) {
        if (params.eta <= 0.0)
            rep.warnings.push_back("eta <= 0 is experimental (Lizorkin condition required)");
        if (near_integer(2.0 * params.s + params.eta, specfun::pole_tolerance))
            fail("2s+eta must not be a non-negative integer");
    } else if (theorem == Theorem::thm2) {
        if (params.d - 2.0 * params.eta <= 0.0)
            fail("thm2 requires d - 2*eta > 0");
        if (params.p <= 1.0 || !std::isfinite(params.p))
            fail("thm2 requires p in (1, inf)");
        if (specfun::pole_distance(-(params.eta + params.s)) <= specfun::pole_tolerance)
            fail("Gamma(-(eta+s)) pole in the printed constant");
        if (u.decay_class != DecayClass::compact_support)
            rep.warnings.push_back("thm2 is stated for compactly supported data");
    } else { // prop31
        if (params.N != 0 && params.N < 2)
            fail("lifting requires N >= 2");
    }

    // The even extension is smooth only if odd t-derivatives vanish at t=0.
    if (theorem != Theorem::prop31) {
        double h = 1e-4;
        double dudt0 = (u(0.0, h) - u(0.0, 0.0)) / h;
        if (std::abs(dudt0) > smoothness_tol)
            rep.warnings.push_back("|du/dt(.,0)| exceeds smoothness_tol; even extension is not C^1");
    }

    // Finite-order Lizorkin moment check for eta <= 0: spatial moments of the
    // data should vanish; our zoo functions generally do not satisfy this.
    if (params.eta <= 0.0 && rep.passed) {
        for (int k = 0; k <= moment_check_order; ++k) {
            auto integrand = [&](double x) {
                return u(x, 0.5) * std::pow(x, k);
            };
            double m = quad::integrate_panels(integrand, -40.0, 40.0, 0.5, 8);
            if (std::abs(m) > 1e-8) {
                rep.warnings.push_back("nonzero spatial moment of order " + std::to_string(k) +
                                       "; Lizorkin condition likely violated");
                break;
            }
        }
    }
    return rep;
}

} // namespace fbh::testfn
