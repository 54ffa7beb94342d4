#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kernels.hpp"
#include "metric.hpp"
#include "vec2.hpp"

namespace loewner {

/*!
 * Free homotopy class of loops on R^2 / L, written in the basis of the
 * lattice: a loop in class (p, q) lifts to a path from x to x + p b1 + q b2.
 * Classes are canonical: p > 0, or p == 0 and q > 0.
 */
struct HomotopyClass
{
    int p = 1;
    int q = 0;
    double flat_length = 0;

    friend bool operator==(HomotopyClass const& a, HomotopyClass const& b)
    {
        return a.p == b.p && a.q == b.q;
    }
};

//! Canonical class (sign-normalized) with its flat length in `lattice`.
HomotopyClass make_class(Lattice const& lattice, int p, int q);

enum class SystoleMethod
{
    one_var_exact,
    grid_dijkstra,
};

char const* to_string(SystoleMethod m);

struct SystoleEstimate
{
    double upper = 0;  //!< length of the best discrete loop
    //! err(h) = stencil * upper + 2 h (max f - min f) + err_quadrature
    double error_budget = 0;
    double err_quadrature = 0;  //!< trapezoid error of the polyline
    double stencil_error = 0;   //!< relative anisotropy of the stencil
    HomotopyClass witness_class;
    //! Lifted polyline in the flat chart: last - first = p b1 + q b2.
    std::vector<Vec2> witness_path;
    //! sigma * (upper - err): Fubini-pencil lower bound for E(f).
    double lower_fubini = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    SystoleMethod method = SystoleMethod::grid_dijkstra;
};

struct ClassLoop
{
    double length = 0;
    std::vector<Vec2> path;
};

struct SystoleOptions
{
    //! Multiplies the class-enumeration cutoff; values > 1 only add classes.
    double class_cutoff_factor = 1.0;
    Exec exec = Exec::parallel;
};

//! lambda1 of the lattice.
double flat_systole(Lattice const& lattice);

//! Canonical classes with flat length <= upper_bound / min_f, sorted by flat
//! length then (p, q).
std::vector<HomotopyClass>
candidate_classes(Lattice const& lattice, double min_f, double upper_bound);

//! Relative length excess of stencil paths over straight segments in the
//! flat chart of `lattice` for a rows x cols grid.
double stencil_error_bound(Lattice const& lattice, std::size_t rows,
                           std::size_t cols);

//! Shortest discrete loop in the given class on the 16-neighbor graph.
ClassLoop shortest_in_class(TorusMetric const& metric, HomotopyClass const& c,
                            Exec exec = Exec::parallel);

SystoleEstimate
systole_upper(TorusMetric const& metric, SystoleOptions const& options = {});

//! Variable a one-variable factor depends on.
enum class Axis
{
    x,
    y,
};

//! Axis the factor depends on, if the grid is constant along the other one
//! to 1e-10. A constant factor reports Axis::y.
std::optional<Axis> one_variable_axis(PeriodicField const& field);

//! Exact systole min f for a one-variable factor on the unit square torus.
double systole_one_var(TorusMetric const& metric);

//! Metric with factor averaged along `along` (default: f_bar(y) = int f dx).
TorusMetric averaged_metric(TorusMetric const& metric, Axis along = Axis::x);

namespace reference {
//! Serial brute force: plain Dijkstra from every transversal base point.
ClassLoop shortest_in_class(TorusMetric const& metric,
                            HomotopyClass const& c);
}  // namespace reference

}  // namespace loewner
