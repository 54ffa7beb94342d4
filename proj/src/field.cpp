#include "loewner/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>
#include <utility>

#include "loewner/error.hpp"
#include "loewner/kernels.hpp"

namespace loewner {

PeriodicField::PeriodicField(Grid samples, Lattice domain)
    : samples_(std::move(samples)), domain_(domain)
{
    if (samples_.rows() < 4 || samples_.cols() < 4)
    {
        throw Error("conformal factor grid must be at least 4x4");
    }
    auto const vals = samples_.values();
    auto const [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    min_ = *lo;
    max_ = *hi;
    bool const finite = std::all_of(
        vals.begin(), vals.end(), [](double v) { return std::isfinite(v); });
    if (!finite || !(min_ > kMinFactor))
    {
        throw Error("nonpositive conformal factor");
    }
}

PeriodicField PeriodicField::scaled(double c) const
{
    Grid g = samples_;
    for (double& v : g.values())
    {
        v *= c;
    }
    return PeriodicField(std::move(g), domain_);
}

double TrigFamily::operator()(double s, double t) const
{
    double v = offset;
    for (auto const& term : terms)
    {
        v += term.amp
             * std::sin(2 * std::numbers::pi * (term.mx * s + term.my * t)
                        + term.phase);
    }
    return v;
}

Grid TrigFamily::sample(std::size_t rows, std::size_t cols) const
{
    Grid g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
    {
        double const t = static_cast<double>(i) / static_cast<double>(rows);
        for (std::size_t j = 0; j < cols; ++j)
        {
            double const s = static_cast<double>(j)
                             / static_cast<double>(cols);
            g(i, j) = (*this)(s, t);
        }
    }
    return g;
}

double mean(PeriodicField const& field)
{
    return kernels::average(field.samples());
}

double variance(PeriodicField const& field)
{
    return kernels::average_centered_square(field.samples(), mean(field));
}

double second_moment(PeriodicField const& field)
{
    return kernels::average_square(field.samples());
}

namespace {

int sign_of(double v)
{
    return (v > 0) - (v < 0);
}

// Integral of |p| over [0, 1] for the cubic through v(-1), v(0), v(1), v(2),
// given that v(0) and v(1) have opposite signs.
double crossing_cell(double vm, double v0, double v1, double v2)
{
    double const c[4] = {v0, -vm / 3 - v0 / 2 + v1 - v2 / 6,
                         vm / 2 - v0 + v1 / 2,
                         -vm / 6 + v0 / 2 - v1 / 2 + v2 / 6};
    auto const p = [&](double t) {
        return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
    };
    auto const antider = [&](double t) {
        return t * (c[0] + t * (c[1] / 2 + t * (c[2] / 3 + t * c[3] / 4)));
    };
    double lo = 0;
    double hi = 1;
    bool const rising = p(0) < 0;
    for (int it = 0; it < 60; ++it)
    {
        double const mid = (lo + hi) / 2;
        ((p(mid) < 0) == rising ? lo : hi) = mid;
    }
    double const r = (lo + hi) / 2;
    return std::abs(antider(r) - antider(0)) + std::abs(antider(1) - antider(r));
}

}  // namespace

double l1_norm(std::span<double const> values)
{
    std::size_t const n = values.size();
    double trapezoid = 0;
    for (double v : values)
    {
        trapezoid += std::abs(v);
    }
    if (n < 8)
    {
        return trapezoid / static_cast<double>(n);
    }

    // |v| is smooth between sign changes, so the periodic average is only
    // spoiled at the kinks. Crossing cells are integrated through a local
    // cubic and each smooth run gets Gregory end corrections.
    auto const at = [&](std::ptrdiff_t k) {
        auto const m = static_cast<std::ptrdiff_t>(n);
        return values[static_cast<std::size_t>(((k % m) + m) % m)];
    };
    auto const sgn = [&](std::ptrdiff_t k) { return sign_of(at(k)); };
    auto const g = [&](std::ptrdiff_t k) { return std::abs(at(k)); };
    // End of a run at node k approached from direction d (-1: run lies to the
    // left, +1: to the right).
    auto const gregory = [&](std::ptrdiff_t k, int d) {
        int const s = sgn(k + d);
        if (s == 0 || sgn(k + 2 * d) != s)
        {
            return 0.0;
        }
        double const d1 = g(k + d) - g(k);
        double const d2 = g(k + 2 * d) - 2 * g(k + d) + g(k);
        return d1 / 12 - d2 / 24;
    };

    double sum = trapezoid;
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k)
    {
        int const s0 = sgn(k);
        int const s1 = sgn(k + 1);
        if (s0 * s1 < 0)
        {
            sum -= (g(k) + g(k + 1)) / 2;
            sum += crossing_cell(at(k - 1), at(k), at(k + 1), at(k + 2));
            if (sgn(k - 1) == s0)
            {
                sum += gregory(k, -1);
            }
            if (sgn(k + 2) == s1)
            {
                sum += gregory(k + 1, +1);
            }
        }
        else if (s0 == 0 && sgn(k - 1) * s1 < 0)
        {
            sum += gregory(k, -1) + gregory(k, +1);
        }
    }
    return sum / static_cast<double>(n);
}

double l1_norm(Grid const& values)
{
    // Kink-aware along each column (the y direction), plain average across.
    std::vector<double> column(values.rows());
    double s = 0;
    for (std::size_t j = 0; j < values.cols(); ++j)
    {
        for (std::size_t i = 0; i < values.rows(); ++i)
        {
            column[i] = values(i, j);
        }
        s += l1_norm(std::span<double const>(column));
    }
    return s / static_cast<double>(values.cols());
}

double sample_variance(std::span<double const> values)
{
    double m = 0;
    for (double v : values)
    {
        m += v;
    }
    m /= static_cast<double>(values.size());
    double s = 0;
    for (double v : values)
    {
        s += (v - m) * (v - m);
    }
    return s / static_cast<double>(values.size());
}

double sample_variance(Grid const& values)
{
    return kernels::average_centered_square(values,
                                            kernels::average(values));
}

namespace {
void require_square(PeriodicField const& field)
{
    if (!field.domain().normalized().is_standard_square())
    {
        throw Error("biaxial decomposition requires the unit square torus");
    }
}
}  // namespace

BiaxialParts biaxial_decompose(PeriodicField const& field)
{
    require_square(field);
    Grid const& f = field.samples();
    BiaxialParts parts;
    parts.mean = mean(field);
    // g(x) = int f dy - E(f), h(y) = int f dx - E(f)
    parts.g_part = kernels::column_averages(f);
    parts.h_part = kernels::row_averages(f);
    for (double& v : parts.g_part)
    {
        v -= parts.mean;
    }
    for (double& v : parts.h_part)
    {
        v -= parts.mean;
    }
    parts.k_part = Grid(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i)
    {
        for (std::size_t j = 0; j < f.cols(); ++j)
        {
            parts.k_part(i, j) = f(i, j) - parts.mean - parts.g_part[j]
                                 - parts.h_part[i];
        }
    }
    return parts;
}

Grid biaxial_project(PeriodicField const& field)
{
    auto const parts = biaxial_decompose(field);
    Grid p(field.rows(), field.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
    {
        for (std::size_t j = 0; j < p.cols(); ++j)
        {
            p(i, j) = parts.g_part[j] + parts.h_part[i];
        }
    }
    return p;
}

Grid reconstruct(BiaxialParts const& parts)
{
    Grid out = parts.k_part;
    for (std::size_t i = 0; i < out.rows(); ++i)
    {
        for (std::size_t j = 0; j < out.cols(); ++j)
        {
            out(i, j) += parts.mean + parts.g_part[j] + parts.h_part[i];
        }
    }
    return out;
}

}  // namespace loewner
