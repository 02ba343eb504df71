#ifndef FBH_TESTFN_HPP
#define FBH_TESTFN_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fbh::testfn {

enum class DecayClass { schwartz, compact_support };

// A space-time test function u(x, t), x in R^d, t >= 0.
struct SpaceTimeFunction {
    std::function<double(std::span<const double>, double)> eval;
    int d = 1;
    double sup_bound = 1.0;
    DecayClass decay_class = DecayClass::schwartz;
    std::optional<double> support_radius;
    std::string id;

    double operator()(std::span<const double> x, double t) const { return eval(x, t); }
    double operator()(double x, double t) const { return eval(std::span<const double>(&x, 1), t); }
};

// A pure space function f(x), x in R^d (used by the fractional-Laplacian paths).
struct SpaceFunction {
    std::function<double(std::span<const double>)> eval;
    int d = 1;
    double sup_bound = 1.0;
    DecayClass decay_class = DecayClass::schwartz;
    std::optional<double> support_radius;
    std::string id;

    double operator()(std::span<const double> x) const { return eval(x); }
    double operator()(double x) const { return eval(std::span<const double>(&x, 1)); }
};

struct GridSpec {
    double x_extent = 8.0;
    int x_points = 64;
    double t_extent = 8.0;
    int t_points = 64;
    double t_grading = 2.0; // time nodes t_k ~ (k/n)^grading * t_extent

    void validate() const;
    std::vector<double> x_nodes() const;
    std::vector<double> t_nodes() const;
};

struct SampledField {
    GridSpec grid;
    std::vector<double> values; // t-major: values[it * x_points + ix]
};

// u(x,t) = exp(-a|x|^2) exp(-b(t-t0)^2).
SpaceTimeFunction make_space_time_gaussian(int d, double a, double b, double t0);

// Smooth compactly supported bump: product of exp(-1/(1-rho^2)) profiles in
// |x|/R and (t-t_center)/t_width. Support must stay away from t=0.
SpaceTimeFunction make_bump(int d, double R, double t_center, double t_width);

// Space-only instances.
SpaceFunction make_space_gaussian(int d, double a, double center = 0.0);
SpaceFunction make_space_bump(int d, double R);

// Even extension in time: returns a function whose eval accepts any real t
// via u(x, |t|). Since SpaceTimeFunction is defined on t >= 0, the extension
// is exposed by value-symmetric evaluation.
SpaceTimeFunction even_extension(const SpaceTimeFunction& u);

// Sample u on the tensor grid.
SampledField sample(const SpaceTimeFunction& u, const GridSpec& grid);

// Zoo registry: "gauss-a1-b1-t4", "bump-R2-tc2-tw1".
SpaceTimeFunction by_id(const std::string& id);
SpaceFunction space_by_id(const std::string& id);

enum class Theorem { thm1, thm2, prop31 };

struct FracParams {
    double s = 0.5;
    double eta = 0.5;
    double p = 2.0;
    int d = 1;
    int N = 0; // 0 = unset (limit form)
};

struct ValidationReport {
    bool passed = true;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
};

// Check the parameter hypotheses of the given theorem and, for eta <= 0, the
// finite-order moment condition on the data. Never throws.
ValidationReport validate_hypotheses(const SpaceTimeFunction& u, const FracParams& params,
                                     Theorem theorem);

inline constexpr double smoothness_tol = 1e-5;
inline constexpr int moment_check_order = 4;

} // namespace fbh::testfn

#endif
