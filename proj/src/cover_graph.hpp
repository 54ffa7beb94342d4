// Internal: the 16-neighbor weighted graph on the universal cover of a
// sampled torus, shared by the systole search and its serial reference.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "loewner/grid.hpp"
#include "loewner/lattice.hpp"
#include "loewner/systole.hpp"

namespace loewner::detail {

struct Step
{
    int di = 0;  // row offset (second lattice coordinate)
    int dj = 0;  // column offset (first lattice coordinate)
    double length = 0;  // flat length of the step
};

//! King moves plus knight moves, sorted counterclockwise in index space.
class Stencil
{
  public:
    Stencil(Lattice const& lattice, std::size_t rows, std::size_t cols);

    std::span<Step const> steps() const { return steps_; }
    //! max over adjacent step pairs of 1/cos(angle/2) - 1 (flat angles).
    double anisotropy() const { return anisotropy_; }
    double max_step() const { return max_step_; }
    //! Flat position of unwrapped grid node (i, j).
    Vec2 position(std::int64_t i, std::int64_t j) const;

    //! Decompose an index displacement into nonnegative multiples of two
    //! adjacent stencil steps.
    struct Split
    {
        Step a;
        Step b;
        std::int64_t count_a = 0;
        std::int64_t count_b = 0;
    };
    Split split(std::int64_t di, std::int64_t dj) const;

  private:
    std::array<Step, 16> steps_;
    Vec2 row_step_;  // flat vector of (di, dj) = (1, 0)
    Vec2 col_step_;  // flat vector of (di, dj) = (0, 1)
    double anisotropy_ = 0;
    double max_step_ = 0;
};

//! Base points whose loops cover every loop of the class, and the index
//! translation (di, dj) taking each base point to its lift endpoint.
struct Transversal
{
    std::vector<std::array<std::int64_t, 2>> sources;
    std::int64_t di = 0;
    std::int64_t dj = 0;
};

Transversal make_transversal(std::size_t rows, std::size_t cols,
                             HomotopyClass const& c);

//! Rectangle [i0, i0 + height) x [j0, j0 + width) of the cover.
struct Box
{
    std::int64_t i0 = 0;
    std::int64_t j0 = 0;
    std::int64_t height = 0;
    std::int64_t width = 0;
};

//! Smallest box holding every node of every path of flat length <= radius
//! from a base point to its translate.
Box cover_box(Lattice const& lattice, std::size_t rows, std::size_t cols,
              Transversal const& tr, double radius);

//! Factor values on a box of the cover (periodic lookup done once).
class CoverWindow
{
  public:
    CoverWindow(Grid const& f, Box const& box);

    Box const& box() const { return box_; }
    std::int64_t size() const { return box_.height * box_.width; }
    std::int64_t index(std::int64_t i, std::int64_t j) const
    {
        return (i - box_.i0) * box_.width + (j - box_.j0);
    }
    double factor(std::int64_t idx) const { return values_[idx]; }

  private:
    Box box_;
    std::vector<double> values_;
};

//! Weighted length of the most nearly straight stencil walk from (i, j)
//! by the index displacement (di, dj).
double straight_walk(Grid const& f, Stencil const& st, std::int64_t i,
                     std::int64_t j, std::int64_t di, std::int64_t dj);

inline double wrapped(Grid const& f, std::int64_t i, std::int64_t j)
{
    auto const n = static_cast<std::int64_t>(f.rows());
    auto const m = static_cast<std::int64_t>(f.cols());
    return f(static_cast<std::size_t>(((i % n) + n) % n),
             static_cast<std::size_t>(((j % m) + m) % m));
}

}  // namespace loewner::detail
