#include "loewner/metric.hpp"

#include <cmath>
#include <utility>

#include "loewner/error.hpp"

namespace loewner {

TorusMetric::TorusMetric(PeriodicField factor)
    : factor_(std::move(factor)), modulus_(reduce(factor_.domain()))
{
    if (std::abs(factor_.domain().covolume() - 1) > 1e-12)
    {
        throw Error("metric lattice must have unit covolume");
    }
    area_ = second_moment(factor_);
    mean_ = loewner::mean(factor_);
    variance_ = loewner::variance(factor_);
}

TorusMetric build_metric(Lattice const& lattice, Grid const& factor,
                         Rescale rescale)
{
    double const cov = lattice.covolume();
    if (rescale == Rescale::forbid || std::abs(cov - 1) <= 1e-15)
    {
        if (std::abs(cov - 1) > 1e-12)
        {
            throw Error("lattice is not of unit covolume and rescaling is "
                        "forbidden");
        }
        return TorusMetric(PeriodicField(factor, lattice));
    }
    double const s = std::sqrt(cov);
    Grid g = factor;
    for (double& v : g.values())
    {
        v *= s;
    }
    return TorusMetric(PeriodicField(std::move(g), lattice.normalized()));
}

TorusMetric build_metric(Lattice const& lattice, PeriodicField const& factor,
                         Rescale rescale)
{
    return build_metric(lattice, factor.samples(), rescale);
}

TorusMetric scale(TorusMetric const& metric, double c)
{
    if (!(c > 0) || !std::isfinite(c))
    {
        throw Error("scale factor must be positive");
    }
    return TorusMetric(metric.factor().scaled(c));
}

}  // namespace loewner
