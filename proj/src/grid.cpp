#include "loewner/grid.hpp"

#include <utility>

#include "loewner/error.hpp"

namespace loewner {

Grid::Grid(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill)
{
}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values))
{
    if (values_.size() != rows * cols)
    {
        throw Error("grid value count does not match its shape");
    }
}

Grid Grid::transposed() const
{
    Grid out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
        {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

}  // namespace loewner
