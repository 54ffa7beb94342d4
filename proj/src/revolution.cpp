#include "loewner/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include "loewner/error.hpp"

namespace loewner {
namespace detail {

//! Immutable GSL interpolant; evaluation passes no accelerator so shared
//! instances are safe to use from several threads.
class Interpolant
{
  public:
    Interpolant(gsl_interp_type const* type, std::vector<double> x,
                std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y))
    {
        static bool const handler_off = [] {
            gsl_set_error_handler_off();
            return true;
        }();
        (void)handler_off;
        spline_ = gsl_spline_alloc(type, x_.size());
        if (!spline_
            || gsl_spline_init(spline_, x_.data(), y_.data(), x_.size())
                   != GSL_SUCCESS)
        {
            gsl_spline_free(spline_);
            throw Error("interpolation table rejected (knots must increase)");
        }
    }
    ~Interpolant() { gsl_spline_free(spline_); }
    Interpolant(Interpolant const&) = delete;
    Interpolant& operator=(Interpolant const&) = delete;

    double operator()(double x) const
    {
        return gsl_spline_eval(spline_, clamp(x), nullptr);
    }
    double derivative(double x) const
    {
        return gsl_spline_eval_deriv(spline_, clamp(x), nullptr);
    }

  private:
    double clamp(double x) const
    {
        return std::clamp(x, x_.front(), x_.back());
    }

    std::vector<double> x_;
    std::vector<double> y_;
    gsl_spline* spline_ = nullptr;
};

}  // namespace detail

namespace {

using detail::Interpolant;

double wrap(double u, double period)
{
    double w = std::fmod(u, period);
    return w < 0 ? w + period : w;
}

template<class F>
double simpson(F const& fn, double lo, double hi, int m)
{
    double const h = (hi - lo) / m;
    double s = fn(lo) + fn(hi);
    for (int k = 1; k < m; ++k)
    {
        s += (k % 2 ? 4 : 2) * fn(lo + k * h);
    }
    return s * h / 3;
}

//! Composite Simpson on [lo, hi], doubled until the Richardson error
//! estimate falls below tol; returns the extrapolated value.
template<class F>
double integrate(F const& fn, double lo, double hi, double tol = 1e-14)
{
    if (hi == lo)
    {
        return 0;
    }
    int m = 4;
    double coarse = simpson(fn, lo, hi, m);
    for (int it = 0; it < 16; ++it)
    {
        m *= 2;
        double const fine = simpson(fn, lo, hi, m);
        double const diff = fine - coarse;
        if (std::abs(diff) <= tol * std::max(1.0, std::abs(fine)))
        {
            return fine + diff / 15;
        }
        coarse = fine;
    }
    return coarse;
}

//! Cumulative integral of fn over the knot intervals (size = knots.size()).
template<class F>
std::vector<double> cumulative(F const& fn, std::span<double const> knots)
{
    std::vector<double> out(knots.size(), 0.0);
    for (std::size_t k = 1; k < knots.size(); ++k)
    {
        out[k] = out[k - 1] + integrate(fn, knots[k - 1], knots[k]);
    }
    return out;
}

//! Interval index k with knots[k] <= u < knots[k + 1].
std::size_t locate(std::span<double const> knots, double u)
{
    auto const it = std::upper_bound(knots.begin(), knots.end(), u);
    auto k = static_cast<std::size_t>(std::distance(knots.begin(), it));
    return std::clamp<std::size_t>(k, 1, knots.size() - 1) - 1;
}

void require_positive_radius(double f)
{
    if (!(f > 0))
    {
        throw Error("nonpositive profile radius");
    }
}

}  // namespace

GeneratingCurve::GeneratingCurve(std::vector<Vec2> samples,
                                 std::vector<double> knots, double period,
                                 bool unit_speed)
    : samples_(std::move(samples))
    , knots_(std::move(knots))
    , period_(period)
    , unit_speed_(unit_speed)
{
    std::vector<double> xs;
    std::vector<double> zs;
    for (auto const& p : samples_)
    {
        xs.push_back(p.x);
        zs.push_back(p.y);
    }
    xs.push_back(samples_.front().x);
    zs.push_back(samples_.front().y);
    x_ = std::make_shared<Interpolant>(gsl_interp_cspline_periodic, knots_,
                                       std::move(xs));
    z_ = std::make_shared<Interpolant>(gsl_interp_cspline_periodic, knots_,
                                       std::move(zs));
    length_ = cumulative([this](double u) { return this->speed(u); },
                         knots_)
                  .back();
}

GeneratingCurve GeneratingCurve::from_samples(std::vector<Vec2> samples)
{
    if (samples.size() >= 2
        && norm(samples.back() - samples.front())
               <= 1e-12 * std::max(1.0, norm(samples.front())))
    {
        samples.pop_back();
    }
    if (samples.size() < 4)
    {
        throw Error("degenerate curve: need at least 4 distinct samples");
    }
    for (auto const& p : samples)
    {
        if (!(p.x > 0) || !std::isfinite(p.y))
        {
            throw Error("generating curve must stay in the half-plane x > 0");
        }
    }
    std::vector<double> knots{0.0};
    for (std::size_t k = 0; k < samples.size(); ++k)
    {
        double const chord = norm(samples[(k + 1) % samples.size()]
                                  - samples[k]);
        if (!(chord > 0))
        {
            throw Error("degenerate curve: repeated consecutive samples");
        }
        knots.push_back(knots.back() + chord);
    }
    double const period = knots.back();
    return {std::move(samples), std::move(knots), period, false};
}

GeneratingCurve GeneratingCurve::circle(double R, double r, std::size_t n)
{
    if (!(r > 0) || !(R > r))
    {
        throw Error("circle profile requires R > r > 0");
    }
    std::vector<Vec2> pts;
    for (std::size_t k = 0; k < n; ++k)
    {
        double const t = 2 * std::numbers::pi * static_cast<double>(k)
                         / static_cast<double>(n);
        pts.push_back({R + r * std::cos(t), r * std::sin(t)});
    }
    return from_samples(std::move(pts));
}

Vec2 GeneratingCurve::at(double u) const
{
    double const w = wrap(u, period_);
    return {(*x_)(w), (*z_)(w)};
}

Vec2 GeneratingCurve::tangent(double u) const
{
    double const w = wrap(u, period_);
    return {x_->derivative(w), z_->derivative(w)};
}

FundamentalForm first_fundamental_form(GeneratingCurve const& curve,
                                       double /*theta*/, double phi)
{
    double const f = curve.at(phi).x;
    require_positive_radius(f);
    Vec2 const d = curve.tangent(phi);
    return {f * f, 0.0, dot(d, d)};
}

FundamentalForm first_fundamental_form(ProfileFunctions const& profile,
                                       double /*theta*/, double phi)
{
    double const f = profile.f(phi);
    require_positive_radius(f);
    constexpr double h = 1e-3;
    auto const diff = [&](auto const& fn) {
        return (-fn(phi + 2 * h) + 8 * fn(phi + h) - 8 * fn(phi - h)
                + fn(phi - 2 * h))
               / (12 * h);
    };
    double const df = diff(profile.f);
    double const dg = diff(profile.g);
    return {f * f, 0.0, df * df + dg * dg};
}

GeneratingCurve
arclength_reparametrize(GeneratingCurve const& curve, std::size_t count)
{
    if (count == 0)
    {
        count = curve.samples().size();
    }
    double const length = curve.total_length();
    if (!(length > 0) || count < 4)
    {
        throw Error("degenerate curve: zero length");
    }
    auto const knots = curve.knots();
    auto const speed = [&curve](double u) { return curve.speed(u); };
    std::vector<double> const arc = cumulative(speed, knots);

    std::vector<Vec2> samples;
    std::vector<double> new_knots;
    for (std::size_t l = 0; l < count; ++l)
    {
        double const s = length * static_cast<double>(l)
                         / static_cast<double>(count);
        std::size_t const k = locate(arc, s);
        // Newton on s(u) = arc[k] + int_{u_k}^{u} speed.
        double u = knots[k]
                   + (s - arc[k]) / (arc[k + 1] - arc[k])
                         * (knots[k + 1] - knots[k]);
        for (int it = 0; it < 20; ++it)
        {
            double const err = arc[k] + integrate(speed, knots[k], u) - s;
            u -= err / speed(u);
            if (std::abs(err) < 1e-15 * std::max(1.0, length))
            {
                break;
            }
        }
        samples.push_back(curve.at(u));
        new_knots.push_back(s);
        if (!(samples.back().x > 0))
        {
            throw Error("generating curve must stay in the half-plane x > 0");
        }
    }
    new_knots.push_back(length);
    return {std::move(samples), std::move(new_knots), length, true};
}

RevolutionChart isothermal_chart(GeneratingCurve const& curve,
                                 std::size_t profile_samples)
{
    if (!curve.unit_speed())
    {
        throw Error("isothermal chart requires a unit-speed curve");
    }
    if (profile_samples < 4)
    {
        throw Error("profile needs at least 4 samples");
    }
    for (auto const& p : curve.samples())
    {
        require_positive_radius(p.x);
    }
    RevolutionChart chart(curve);
    auto const& c = chart.curve_;
    auto const inv_radius = [&c](double phi) {
        double const f = c.at(phi).x;
        require_positive_radius(f);
        return 1 / f;
    };
    chart.a_ = 2 * std::numbers::pi;
    chart.psi_ = cumulative(inv_radius, c.knots());
    chart.b_ = chart.psi_.back();
    chart.phi_of_psi_ = std::make_shared<Interpolant>(
        gsl_interp_steffen, chart.psi_,
        std::vector<double>(c.knots().begin(), c.knots().end()));

    chart.profile_.resize(profile_samples);
    for (std::size_t l = 0; l < profile_samples; ++l)
    {
        double const psi = chart.b_ * static_cast<double>(l)
                           / static_cast<double>(profile_samples);
        chart.profile_[l] = chart.factor(psi);
    }
    return chart;
}

double RevolutionChart::psi_of_phi(double phi) const
{
    // psi(phi + L) = psi(phi) + b
    double const turns = std::floor(phi / curve_.period());
    double const w = phi - turns * curve_.period();
    std::size_t const k = locate(curve_.knots(), w);
    double const base = curve_.knots()[k];
    return turns * b_ + psi_[k]
           + integrate([this](double u) { return 1 / curve_.at(u).x; }, base,
                       w);
}

double RevolutionChart::phi_of_psi(double psi) const
{
    double const w = wrap(psi, b_);
    // Monotone cubic guess, then Newton with dpsi/dphi = 1/f.
    double phi = (*phi_of_psi_)(w);
    for (int it = 0; it < 8; ++it)
    {
        double const err = psi_of_phi(phi) - w;
        phi -= err * curve_.at(phi).x;
        if (std::abs(err) < 1e-15 * std::max(1.0, b_))
        {
            break;
        }
    }
    return phi;
}

double RevolutionChart::factor(double psi) const
{
    return curve_.at(phi_of_psi(psi)).x;
}

TorusMetric chart_to_metric(RevolutionChart const& chart, std::size_t cols)
{
    auto const profile = chart.factor_profile();
    Grid g(profile.size(), cols);
    for (std::size_t i = 0; i < g.rows(); ++i)
    {
        for (std::size_t j = 0; j < cols; ++j)
        {
            g(i, j) = profile[i];
        }
    }
    return build_metric(Lattice({chart.a(), 0}, {0, chart.b()}), g);
}

double surface_area(GeneratingCurve const& curve)
{
    auto const radius = [&curve](double u) {
        return curve.at(u).x * curve.speed(u);
    };
    return 2 * std::numbers::pi * cumulative(radius, curve.knots()).back();
}

}  // namespace loewner
