#include "loewner/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace loewner::kernels {
namespace {

template<class Op>
double row_sum(Grid const& g, std::size_t i, Op op)
{
    double s = 0;
    for (double v : g.row(i))
    {
        s += op(v);
    }
    return s;
}

// Serial reference: plain nested loops.
template<class Op>
double reduce_serial(Grid const& g, Op op)
{
    double total = 0;
    for (std::size_t i = 0; i < g.rows(); ++i)
    {
        total += row_sum(g, i, op);
    }
    return total / static_cast<double>(g.size());
}

// Rows in parallel, then an ordered combination of the row sums.
template<class Op>
double reduce_parallel(Grid const& g, Op op)
{
    auto const rows = static_cast<std::ptrdiff_t>(g.rows());
    std::vector<double> partial(g.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
    {
        partial[i] = row_sum(g, i, op);
    }
    double total = 0;
    for (double p : partial)
    {
        total += p;
    }
    return total / static_cast<double>(g.size());
}

template<class Op>
double reduce(Grid const& g, Op op, Exec exec)
{
    return exec == Exec::parallel ? reduce_parallel(g, op)
                                  : reduce_serial(g, op);
}

}  // namespace

double average(Grid const& g, Exec exec)
{
    return reduce(g, [](double v) { return v; }, exec);
}

double average_square(Grid const& g, Exec exec)
{
    return reduce(g, [](double v) { return v * v; }, exec);
}

double average_centered_square(Grid const& g, double center, Exec exec)
{
    return reduce(
        g,
        [center](double v) {
            double const d = v - center;
            return d * d;
        },
        exec);
}

double average_abs(Grid const& g, Exec exec)
{
    return reduce(g, [](double v) { return std::abs(v); }, exec);
}

std::vector<double> row_averages(Grid const& g, Exec exec)
{
    std::vector<double> out(g.rows());
    auto const rows = static_cast<std::ptrdiff_t>(g.rows());
    auto const inv = 1.0 / static_cast<double>(g.cols());
    auto const body = [&](std::ptrdiff_t i) {
        out[i] = row_sum(g, i, [](double v) { return v; }) * inv;
    };
    if (exec == Exec::parallel)
    {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < rows; ++i)
        {
            body(i);
        }
    }
    else
    {
        for (std::ptrdiff_t i = 0; i < rows; ++i)
        {
            body(i);
        }
    }
    return out;
}

std::vector<double> column_averages(Grid const& g, Exec exec)
{
    std::vector<double> out(g.cols());
    auto const cols = static_cast<std::ptrdiff_t>(g.cols());
    auto const inv = 1.0 / static_cast<double>(g.rows());
    auto const body = [&](std::ptrdiff_t j) {
        double s = 0;
        for (std::size_t i = 0; i < g.rows(); ++i)
        {
            s += g(i, j);
        }
        out[j] = s * inv;
    };
    if (exec == Exec::parallel)
    {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < cols; ++j)
        {
            body(j);
        }
    }
    else
    {
        for (std::ptrdiff_t j = 0; j < cols; ++j)
        {
            body(j);
        }
    }
    return out;
}

}  // namespace loewner::kernels
