#pragma once

#include "field.hpp"
#include "lattice.hpp"

namespace loewner {

/*!
 * Conformal metric f^2 (dx^2 + dy^2) on R^2 / L with L of unit covolume.
 *
 * Statistics are computed once at construction. Instances are immutable.
 */
class TorusMetric
{
  public:
    //! Requires factor.domain() to have unit covolume.
    explicit TorusMetric(PeriodicField factor);

    Lattice const& lattice() const { return factor_.domain(); }
    ReducedModulus const& modulus() const { return modulus_; }
    PeriodicField const& factor() const { return factor_; }

    double area() const { return area_; }
    double mean() const { return mean_; }
    double variance() const { return variance_; }
    double sigma_sq() const { return modulus_.sigma_sq; }

  private:
    PeriodicField factor_;
    ReducedModulus modulus_;
    double area_ = 0;
    double mean_ = 0;
    double variance_ = 0;
};

enum class Rescale
{
    allow,
    forbid,
};

//! Bind a lattice and factor samples; the lattice is scaled to unit
//! covolume and the factor multiplied by sqrt(covolume) so the result is
//! isometric to the input. With Rescale::forbid a non-unit covolume is an
//! error.
TorusMetric build_metric(Lattice const& lattice, Grid const& factor,
                         Rescale rescale = Rescale::allow);
TorusMetric build_metric(Lattice const& lattice, PeriodicField const& factor,
                         Rescale rescale = Rescale::allow);

inline double area(TorusMetric const& metric) { return metric.area(); }

//! Homothety: factor multiplied by c > 0.
TorusMetric scale(TorusMetric const& metric, double c);

}  // namespace loewner
