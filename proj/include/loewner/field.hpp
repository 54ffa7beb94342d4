#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "grid.hpp"
#include "lattice.hpp"

namespace loewner {

//! Smallest admissible sample of a conformal factor.
inline constexpr double kMinFactor = 1e-9;
inline constexpr std::size_t kDefaultGrid = 256;

/*!
 * Positive doubly periodic function sampled on a uniform grid over the
 * fundamental parallelogram of its domain lattice.
 *
 * Sample (i, j) is the value at s*b1 + t*b2 with s = j/cols, t = i/rows.
 * All integrals are averages over [0,1)^2, i.e. expectations for the
 * normalized flat measure.
 */
class PeriodicField
{
  public:
    explicit PeriodicField(Grid samples,
                           Lattice domain = Lattice::unit_square());

    Grid const& samples() const { return samples_; }
    Lattice const& domain() const { return domain_; }
    std::size_t rows() const { return samples_.rows(); }
    std::size_t cols() const { return samples_.cols(); }
    double min() const { return min_; }
    double max() const { return max_; }

    //! Same samples multiplied by c > 0.
    PeriodicField scaled(double c) const;

  private:
    Grid samples_;
    Lattice domain_;
    double min_ = 0;
    double max_ = 0;
};

//! One Fourier-type term amp * sin(2 pi (mx s + my t) + phase) in lattice
//! coordinates (s, t) in [0,1)^2.
struct TrigTerm
{
    int mx = 0;
    int my = 0;
    double amp = 0;
    double phase = 0;
};

//! Parametric family offset + sum of TrigTerm.
struct TrigFamily
{
    double offset = 1;
    std::vector<TrigTerm> terms;

    double operator()(double s, double t) const;
    Grid sample(std::size_t rows, std::size_t cols) const;
};

double mean(PeriodicField const& field);
double variance(PeriodicField const& field);
double second_moment(PeriodicField const& field);

//! Average of |values|; accepts signed grids.
double l1_norm(Grid const& values);
double l1_norm(std::span<double const> values);

//! Average of (v - mean)^2 for a one-dimensional sample.
double sample_variance(std::span<double const> values);
double sample_variance(Grid const& values);

//! f = mean + g(x) + h(y) + k(x, y) on the unit square torus.
struct BiaxialParts
{
    double mean = 0;
    std::vector<double> g_part;  //!< indexed by column (x)
    std::vector<double> h_part;  //!< indexed by row (y)
    Grid k_part;
};

BiaxialParts biaxial_decompose(PeriodicField const& field);
//! P(f) = g(x) + h(y) as a grid.
Grid biaxial_project(PeriodicField const& field);
//! mean + g + h + k.
Grid reconstruct(BiaxialParts const& parts);

}  // namespace loewner
