#pragma once

#include <vector>

#include "grid.hpp"

namespace loewner {

//! Execution choice for the data-parallel kernels. Both paths use the same
//! association order (each row summed left to right, row sums combined in
//! row order), so results are bitwise identical.
enum class Exec
{
    serial,
    parallel,
};

namespace kernels {

//! Uniform averages over the grid (periodic trapezoid rule on [0,1)^2).
double average(Grid const& g, Exec exec = Exec::parallel);
double average_square(Grid const& g, Exec exec = Exec::parallel);
double average_centered_square(Grid const& g, double center,
                               Exec exec = Exec::parallel);
double average_abs(Grid const& g, Exec exec = Exec::parallel);

//! Mean over each row (length rows()) and each column (length cols()).
std::vector<double> row_averages(Grid const& g, Exec exec = Exec::parallel);
std::vector<double> column_averages(Grid const& g, Exec exec = Exec::parallel);

}  // namespace kernels
}  // namespace loewner
