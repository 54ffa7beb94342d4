#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loewner {

//! Row-major N x M array of reals. Row index is y (second lattice
//! coordinate), column index is x (first lattice coordinate).
class Grid
{
  public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, double fill = 0.0);
    Grid(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }

    double operator()(std::size_t i, std::size_t j) const
    {
        return values_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j)
    {
        return values_[i * cols_ + j];
    }

    std::span<double const> row(std::size_t i) const
    {
        return {values_.data() + i * cols_, cols_};
    }
    std::span<double const> values() const { return values_; }
    std::span<double> values() { return values_; }

    Grid transposed() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

}  // namespace loewner
