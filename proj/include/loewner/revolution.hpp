#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "metric.hpp"
#include "vec2.hpp"

namespace loewner {

namespace detail {
class Interpolant;
}

/*!
 * Closed profile curve (x(u), z(u)) in the xz-plane with x > 0, rotated about
 * the z-axis. Samples are joined by a periodic cubic spline; the last sample
 * connects to the first. Self-intersection is not checked.
 */
class GeneratingCurve
{
  public:
    //! Spline knots at cumulative chord length. A trailing sample equal to
    //! the first one is dropped.
    static GeneratingCurve from_samples(std::vector<Vec2> samples);
    //! Circle of radius r centred at (R, 0), n samples.
    static GeneratingCurve circle(double R, double r, std::size_t n);

    std::span<Vec2 const> samples() const { return samples_; }
    std::span<double const> knots() const { return knots_; }
    double period() const { return period_; }
    double total_length() const { return length_; }
    //! True when the parameter is arclength (output of reparametrization).
    bool unit_speed() const { return unit_speed_; }

    Vec2 at(double u) const;
    Vec2 tangent(double u) const;
    double speed(double u) const { return norm(tangent(u)); }

  private:
    friend GeneratingCurve arclength_reparametrize(GeneratingCurve const&,
                                                   std::size_t);
    GeneratingCurve(std::vector<Vec2> samples, std::vector<double> knots,
                    double period, bool unit_speed);

    std::vector<Vec2> samples_;
    std::vector<double> knots_;  // size n + 1, knots_[n] = period
    double period_ = 0;
    double length_ = 0;
    bool unit_speed_ = false;
    std::shared_ptr<detail::Interpolant const> x_;
    std::shared_ptr<detail::Interpolant const> z_;
};

//! Metric coefficients of the surface of revolution at (theta, phi).
struct FundamentalForm
{
    double g11 = 0;
    double g12 = 0;
    double g22 = 0;
};

//! Profile given as closed-form functions x = f(phi), z = g(phi).
struct ProfileFunctions
{
    std::function<double(double)> f;
    std::function<double(double)> g;
};

FundamentalForm first_fundamental_form(GeneratingCurve const& curve,
                                       double theta, double phi);
//! Derivatives by fourth-order central differences.
FundamentalForm first_fundamental_form(ProfileFunctions const& profile,
                                       double theta, double phi);

//! Resample at `count` points equally spaced in arclength (default: same
//! count as the input).
GeneratingCurve
arclength_reparametrize(GeneratingCurve const& curve, std::size_t count = 0);

/*!
 * Isothermal chart (theta, psi) with psi = int dphi / f(phi): the surface is
 * conformal to the flat torus on a Z + b Z with a = 2 pi and factor F(psi).
 */
class RevolutionChart
{
  public:
    double a() const { return a_; }
    double b() const { return b_; }
    //! psi at the curve knots (last entry is b).
    std::span<double const> psi_table() const { return psi_; }
    //! F sampled at psi = k b / n, k = 0..n-1.
    std::span<double const> factor_profile() const { return profile_; }
    GeneratingCurve const& curve() const { return curve_; }

    double psi_of_phi(double phi) const;
    double phi_of_psi(double psi) const;
    double factor(double psi) const;

  private:
    friend RevolutionChart isothermal_chart(GeneratingCurve const&,
                                            std::size_t);
    explicit RevolutionChart(GeneratingCurve curve) : curve_(std::move(curve))
    {
    }

    GeneratingCurve curve_;
    double a_ = 0;
    double b_ = 0;
    std::vector<double> psi_;
    std::vector<double> profile_;
    std::shared_ptr<detail::Interpolant const> phi_of_psi_;
};

//! Requires a unit-speed curve; `profile_samples` sets the psi resolution.
RevolutionChart isothermal_chart(GeneratingCurve const& curve,
                                 std::size_t profile_samples = 256);

//! Metric on a Z + b Z normalized to unit covolume; columns follow theta,
//! rows follow psi.
TorusMetric chart_to_metric(RevolutionChart const& chart,
                            std::size_t cols = 256);

//! 2 pi int f dphi over the curve.
double surface_area(GeneratingCurve const& curve);

}  // namespace loewner
