#include "loewner/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "loewner/error.hpp"

namespace loewner {

Lattice::Lattice(Vec2 b1, Vec2 b2) : b1_(b1), b2_(b2)
{
    double const big = std::max(dot(b1, b1), dot(b2, b2));
    if (!std::isfinite(big) || !(std::abs(cross(b1, b2)) >= 1e-12 * big)
        || big == 0)
    {
        throw Error("degenerate lattice");
    }
}

Lattice Lattice::from_tau(std::complex<double> tau)
{
    if (!(tau.imag() > 0))
    {
        throw Error("tau must lie in the upper half-plane");
    }
    double const sigma = std::sqrt(tau.imag());
    return {{1 / sigma, 0}, {tau.real() / sigma, sigma}};
}

Lattice Lattice::eisenstein()
{
    return from_tau({0.5, std::numbers::sqrt3 / 2});
}

double Lattice::covolume() const
{
    return std::abs(cross(b1_, b2_));
}

Lattice Lattice::normalized() const
{
    double const s = 1 / std::sqrt(this->covolume());
    return {s * b1_, s * b2_};
}

Vec2 Lattice::dual1() const
{
    double const det = cross(b1_, b2_);
    return {b2_.y / det, -b2_.x / det};
}

Vec2 Lattice::dual2() const
{
    double const det = cross(b1_, b2_);
    return {-b1_.y / det, b1_.x / det};
}

bool Lattice::is_standard_square() const
{
    return norm(b1_ - Vec2{1, 0}) <= kGeomTol
           && norm(b2_ - Vec2{0, 1}) <= kGeomTol;
}

Lattice gauss_reduce(Lattice const& lattice)
{
    Vec2 a = lattice.b1();
    Vec2 b = lattice.b2();
    if (dot(a, a) > dot(b, b))
    {
        std::swap(a, b);
    }
    // Each pass strictly shortens b unless the basis is already reduced; the
    // cap only guards against pathological floating-point input.
    for (int iter = 0; iter < 10000; ++iter)
    {
        double const mu = std::round(dot(a, b) / dot(a, a));
        if (mu != 0)
        {
            b = b - mu * a;
        }
        if (dot(b, b) < dot(a, a))
        {
            std::swap(a, b);
            continue;
        }
        break;
    }
    return {a, b};
}

namespace {
using Complex = std::complex<double>;

struct Canonical
{
    Complex tau;
    Complex z_factor{1, 0};
};

Canonical canonicalize(Complex tau)
{
    Complex factor{1, 0};
    if (std::abs(tau.real()) > 0.5 + kGeomTol)
    {
        tau -= std::round(tau.real());
    }
    if (std::abs(std::abs(tau) - 1) <= kGeomTol && tau.real() < 0)
    {
        // span{1, tau} = tau * span{1, -1/tau}
        factor = tau;
        tau = -1.0 / tau;
    }
    if (std::abs(tau.real() + 0.5) <= kGeomTol)
    {
        tau += 1.0;
    }
    return {tau, factor};
}
}  // namespace

Complex canonical_tau(Complex tau)
{
    return canonicalize(tau).tau;
}

ReducedModulus reduce(Lattice const& lattice)
{
    Lattice const red = gauss_reduce(lattice);
    Complex z{red.b1().x, red.b1().y};
    Complex tau = Complex{red.b2().x, red.b2().y} / z;
    if (tau.imag() < 0)
    {
        tau = -tau;
    }
    auto const canon = canonicalize(tau);
    z *= canon.z_factor;

    ReducedModulus result;
    result.tau = canon.tau;
    result.sigma_sq = canon.tau.imag();
    result.scale = std::abs(z);
    result.rotation = std::arg(z);
    return result;
}

SuccessiveMinima successive_minima(Lattice const& lattice)
{
    Lattice const red = gauss_reduce(lattice);
    return {norm(red.b1()), norm(red.b2()), red.b1(), red.b2()};
}

double hermite_ratio(Lattice const& lattice)
{
    double const l1 = successive_minima(lattice).lambda1;
    return l1 * l1 / lattice.covolume();
}

}  // namespace loewner
