#include "cover_graph.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/error.hpp"

namespace loewner::detail {
namespace {
constexpr std::array<std::array<int, 2>, 16> kOffsets = {{
    {0, 1},  {1, 2},  {1, 1},  {2, 1},  {1, 0},  {2, -1}, {1, -1}, {1, -2},
    {0, -1}, {-1, -2}, {-1, -1}, {-2, -1}, {-1, 0}, {-2, 1}, {-1, 1}, {-1, 2},
}};

// Cross product in the (dj, di) index plane.
std::int64_t icross(std::int64_t ai, std::int64_t aj, std::int64_t bi,
                    std::int64_t bj)
{
    return aj * bi - ai * bj;
}
}  // namespace

Stencil::Stencil(Lattice const& lattice, std::size_t rows, std::size_t cols)
    : row_step_((1.0 / static_cast<double>(rows)) * lattice.b2())
    , col_step_((1.0 / static_cast<double>(cols)) * lattice.b1())
{
    for (std::size_t k = 0; k < kOffsets.size(); ++k)
    {
        auto const [di, dj] = kOffsets[k];
        steps_[k] = {di, dj, norm(di * row_step_ + dj * col_step_)};
        max_step_ = std::max(max_step_, steps_[k].length);
    }
    for (std::size_t k = 0; k < steps_.size(); ++k)
    {
        auto const& a = steps_[k];
        auto const& b = steps_[(k + 1) % steps_.size()];
        Vec2 const va = a.di * row_step_ + a.dj * col_step_;
        Vec2 const vb = b.di * row_step_ + b.dj * col_step_;
        double const cos_angle = dot(va, vb) / (a.length * b.length);
        double const half = std::acos(std::clamp(cos_angle, -1.0, 1.0)) / 2;
        anisotropy_ = std::max(anisotropy_, 1 / std::cos(half) - 1);
    }
}

Vec2 Stencil::position(std::int64_t i, std::int64_t j) const
{
    return static_cast<double>(i) * row_step_
           + static_cast<double>(j) * col_step_;
}

Stencil::Split Stencil::split(std::int64_t di, std::int64_t dj) const
{
    for (std::size_t k = 0; k < steps_.size(); ++k)
    {
        auto const& a = steps_[k];
        auto const& b = steps_[(k + 1) % steps_.size()];
        std::int64_t const ca = icross(a.di, a.dj, di, dj);
        std::int64_t const cb = icross(di, dj, b.di, b.dj);
        if (ca >= 0 && cb > 0)
        {
            // Adjacent steps span a unimodular cone: det(a, b) = 1.
            return {a, b, cb, ca};
        }
    }
    throw Error("zero displacement has no stencil decomposition");
}

Transversal make_transversal(std::size_t rows, std::size_t cols,
                             HomotopyClass const& c)
{
    auto const n = static_cast<std::int64_t>(rows);
    auto const m = static_cast<std::int64_t>(cols);
    Transversal tr;
    tr.di = c.q * n;
    tr.dj = c.p * m;
    // Steps move at most two columns (rows), so a loop whose column index
    // advances by p*m != 0 meets column 0 or 1 modulo m.
    if (c.p != 0)
    {
        for (std::int64_t i = 0; i < n; ++i)
        {
            tr.sources.push_back({i, 0});
            tr.sources.push_back({i, 1});
        }
    }
    else
    {
        for (std::int64_t j = 0; j < m; ++j)
        {
            tr.sources.push_back({0, j});
            tr.sources.push_back({1, j});
        }
    }
    return tr;
}

Box cover_box(Lattice const& lattice, std::size_t rows, std::size_t cols,
              Transversal const& tr, double radius)
{
    // Nodes of such a path lie within radius/2 of the midpoint between the
    // base point and its translate.
    std::int64_t i_lo = tr.sources.front()[0];
    std::int64_t i_hi = i_lo;
    std::int64_t j_lo = tr.sources.front()[1];
    std::int64_t j_hi = j_lo;
    for (auto const& s : tr.sources)
    {
        i_lo = std::min(i_lo, s[0]);
        i_hi = std::max(i_hi, s[0]);
        j_lo = std::min(j_lo, s[1]);
        j_hi = std::max(j_hi, s[1]);
    }
    auto const margin = [radius](double count, Vec2 dual) {
        return static_cast<std::int64_t>(
                   std::ceil(count * norm(dual) * radius / 2))
               + 2;
    };
    std::int64_t const mi = margin(static_cast<double>(rows), lattice.dual2());
    std::int64_t const mj = margin(static_cast<double>(cols), lattice.dual1());
    auto const half_lo = [](std::int64_t v) {
        return v >= 0 ? v / 2 : -((-v + 1) / 2);
    };
    auto const half_hi = [](std::int64_t v) {
        return v >= 0 ? (v + 1) / 2 : -((-v) / 2);
    };
    Box box;
    box.i0 = i_lo + half_lo(tr.di) - mi;
    box.j0 = j_lo + half_lo(tr.dj) - mj;
    box.height = (i_hi + half_hi(tr.di) + mi) - box.i0 + 1;
    box.width = (j_hi + half_hi(tr.dj) + mj) - box.j0 + 1;
    return box;
}

CoverWindow::CoverWindow(Grid const& f, Box const& box)
    : box_(box), values_(static_cast<std::size_t>(box.height * box.width))
{
    for (std::int64_t a = 0; a < box.height; ++a)
    {
        for (std::int64_t b = 0; b < box.width; ++b)
        {
            values_[a * box.width + b] = wrapped(f, box.i0 + a, box.j0 + b);
        }
    }
}

double straight_walk(Grid const& f, Stencil const& st, std::int64_t i,
                     std::int64_t j, std::int64_t di, std::int64_t dj)
{
    auto const split = st.split(di, dj);
    std::int64_t const total = split.count_a + split.count_b;
    std::int64_t taken_a = 0;
    double length = 0;
    double f_prev = wrapped(f, i, j);
    for (std::int64_t t = 1; t <= total; ++t)
    {
        // Keep the a-count closest to its proportional share.
        std::int64_t const want = (2 * t * split.count_a + total) / (2 * total);
        Step const& s = taken_a < want ? split.a : split.b;
        if (taken_a < want)
        {
            ++taken_a;
        }
        i += s.di;
        j += s.dj;
        double const f_next = wrapped(f, i, j);
        length += s.length * 0.5 * (f_prev + f_next);
        f_prev = f_next;
    }
    return length;
}

}  // namespace loewner::detail
