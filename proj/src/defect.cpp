#include "loewner/defect.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "loewner/field.hpp"

namespace loewner {
namespace {

constexpr double kHalfSqrt3 = std::numbers::sqrt3 / 2;

//! Budget for a term -k sys^2 when sys may be overstated by err.
double square_budget(double k, double sys, double err)
{
    return k * (2 * sys * err + err * err);
}

bool on_square_torus(TorusMetric const& metric)
{
    return metric.lattice().is_standard_square();
}

// f - E(f) along the axis the factor depends on.
std::vector<double> centered_profile(PeriodicField const& field, Axis axis,
                                     double center)
{
    Grid const& g = field.samples();
    std::size_t const n = axis == Axis::y ? g.rows() : g.cols();
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        out[k] = (axis == Axis::y ? g(k, 0) : g(0, k)) - center;
    }
    return out;
}

}  // namespace

InequalityRow judge(double lhs, double rhs, double error_budget)
{
    InequalityRow row;
    row.applicable = true;
    row.lhs = lhs;
    row.rhs = rhs;
    row.margin = lhs - rhs;
    // Rounding allowance on top of the discretization budget.
    row.error_budget = error_budget
                       + 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    row.pass = row.margin >= -row.error_budget;
    row.strong_pass = row.margin >= 0;
    return row;
}

std::vector<std::pair<std::string_view, InequalityRow const*>>
DefectReport::rows() const
{
    return {
        {"loewner", &loewner},
        {"loewner_defect", &loewner_defect},
        {"sigma_defect", &sigma_defect},
        {"rectangular", &rectangular},
        {"one_var_second", &one_var_second},
        {"one_var_nosys", &one_var_nosys},
        {"biaxial_second", &biaxial_second},
        {"biaxial_second_one_var", &biaxial_second_one_var},
        {"mean_gap", &mean_gap},
        {"averaged_systole", &averaged_systole},
        {"averaged_chain", &averaged_chain},
    };
}

bool DefectReport::all_pass() const
{
    auto const all = this->rows();
    return std::all_of(all.begin(), all.end(), [](auto const& r) {
        return !r.second->applicable || r.second->pass;
    });
}

EqualityCase equality_case_check(TorusMetric const& metric)
{
    std::complex<double> const corner = std::polar(1.0, std::numbers::pi / 3);
    EqualityCase eq;
    eq.variance = metric.variance();
    eq.distance_to_eisenstein = std::abs(metric.modulus().tau - corner);
    eq.detected = eq.variance <= 1e-6 * metric.area()
                  && eq.distance_to_eisenstein <= 1e-6;
    return eq;
}

DefectReport loewner_defect_report(TorusMetric const& metric,
                                   SystoleEstimate const& sys)
{
    DefectReport r;
    r.area = metric.area();
    r.mean = metric.mean();
    r.variance = metric.variance();
    r.sigma_sq = metric.sigma_sq();
    r.sys_upper = sys.upper;
    r.sys_err = sys.error_budget;
    r.flat_lambda1 = flat_systole(metric.lattice());
    r.systole = sys;

    double const s = sys.upper;
    double const e = sys.error_budget;
    double const loewner_lhs = r.area - kHalfSqrt3 * s * s;
    r.loewner = judge(loewner_lhs, 0, square_budget(kHalfSqrt3, s, e));
    r.loewner_defect = judge(loewner_lhs, r.variance,
                             square_budget(kHalfSqrt3, s, e));
    r.sigma_defect = judge(r.area - r.sigma_sq * s * s, r.variance,
                           square_budget(r.sigma_sq, s, e));
    if (std::abs(metric.modulus().tau.real()) <= kGeomTol)
    {
        r.rectangular = judge(r.area - s * s, r.variance,
                              square_budget(1, s, e));
    }
    r.equality_case = equality_case_check(metric);
    return r;
}

void second_defect_one_var(TorusMetric const& metric, DefectReport& report)
{
    auto const axis = one_variable_axis(metric.factor());
    if (!on_square_torus(metric) || !axis)
    {
        return;
    }
    double const sys = systole_one_var(metric);
    double const area = metric.area();
    double const var = metric.variance();
    auto const profile = centered_profile(metric.factor(), *axis,
                                          metric.mean());
    double const f0 = l1_norm(std::span<double const>(profile));
    double const lead = sys + f0 / 2;
    report.one_var_second = judge(area - var, lead * lead, 0);
    report.one_var_nosys = judge(area - sys * sys, var + f0 * f0 / 4, 0);
    report.mean_gap = judge(metric.mean() - sys, f0 / 2, 0);

    report.one_var_check.applicable = true;
    report.one_var_check.exact = sys;
    if (report.systole)
    {
        auto const& est = *report.systole;
        report.one_var_check.grid = est.upper;
        report.one_var_check.consistent
            = est.upper >= sys - est.err_quadrature - 1e-9 * sys;
    }
}

void second_defect_biaxial(TorusMetric const& metric,
                           SystoleEstimate const& sys, DefectReport& report)
{
    if (!on_square_torus(metric))
    {
        return;
    }
    double const s = sys.upper;
    double const e = sys.error_budget;
    auto const parts = biaxial_decompose(metric.factor());
    double const p1 = l1_norm(biaxial_project(metric.factor()));
    double const lhs = metric.area() - s * s;
    double const budget = square_budget(1, s, e);
    report.biaxial_second = judge(lhs, metric.variance() + p1 * p1 / 16,
                                  budget);
    if (one_variable_axis(metric.factor()))
    {
        report.biaxial_second_one_var = judge(
            lhs, metric.variance() + p1 * p1 / 4, budget);
    }

    // Average along the axis whose single-variable part carries at least
    // half of |P f|_1.
    double const g1 = l1_norm(std::span<double const>(parts.g_part));
    double const h1 = l1_norm(std::span<double const>(parts.h_part));
    Axis const along = h1 >= g1 ? Axis::x : Axis::y;
    double const sys_bar = systole_one_var(averaged_metric(metric, along));
    report.averaged_systole = judge(sys_bar, s, e);
    report.averaged_chain = judge(metric.mean(), s + p1 / 4, e);
}

DefectReport analyze(TorusMetric const& metric, SystoleOptions const& options)
{
    auto const est = systole_upper(metric, options);
    DefectReport report = loewner_defect_report(metric, est);
    second_defect_one_var(metric, report);
    second_defect_biaxial(metric, est, report);
    return report;
}

}  // namespace loewner
