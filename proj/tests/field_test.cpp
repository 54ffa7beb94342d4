#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loewner/error.hpp"
#include "loewner/field.hpp"
#include "loewner/metric.hpp"

namespace loewner {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2;

// Fields used throughout; trig terms are amp sin(2 pi (mx x + my y) + phase).
TrigFamily one_var()
{
    return {1.0, {{0, 1, 0.3, 0.0}}};
}

// 1 + 0.2 sin 2pi x + 0.1 cos 2pi y + 0.05 sin 2pi x sin 2pi y.
TrigFamily four_term()
{
    return {1.0,
            {{1, 0, 0.2, 0.0},
             {0, 1, 0.1, kHalfPi},
             {1, 1, 0.025, -kHalfPi},
             {1, -1, 0.025, kHalfPi}}};
}

PeriodicField field_of(TrigFamily const& fam, std::size_t n = 64,
                       std::size_t m = 64)
{
    return PeriodicField(fam.sample(n, m));
}

TEST(TrigFamily, ProductTermIdentity)
{
    TrigFamily const f = four_term();
    for (double x : {0.1, 0.37, 0.8})
    {
        for (double y : {0.05, 0.5, 0.91})
        {
            double const expect = 1 + 0.2 * std::sin(2 * kPi * x)
                                  + 0.1 * std::cos(2 * kPi * y)
                                  + 0.05 * std::sin(2 * kPi * x)
                                        * std::sin(2 * kPi * y);
            EXPECT_NEAR(f(x, y), expect, 1e-15);
        }
    }
}

TEST(TrigFamily, SampleLayout)
{
    Grid const g = TrigFamily{0.0, {{0, 1, 1.0, 0.0}}}.sample(8, 4);
    // Row index follows y.
    EXPECT_NEAR(g(2, 0), 1.0, 1e-15);
    EXPECT_NEAR(g(2, 3), 1.0, 1e-15);
    EXPECT_NEAR(g(6, 1), -1.0, 1e-15);
}

TEST(PeriodicField, Validation)
{
    EXPECT_THROW(PeriodicField(Grid(3, 8, 1.0)), Error);
    EXPECT_THROW(PeriodicField(Grid(8, 3, 1.0)), Error);
    Grid g(4, 4, 1.0);
    g(1, 2) = 0.0;
    EXPECT_THROW(PeriodicField{g}, Error);
    g(1, 2) = NAN;
    EXPECT_THROW(PeriodicField{g}, Error);
    g(1, 2) = 1e-10;
    EXPECT_THROW(PeriodicField{g}, Error);
    g(1, 2) = 2e-9;
    EXPECT_NO_THROW(PeriodicField{g});
}

TEST(Statistics, ConstantField)
{
    PeriodicField const f(Grid(16, 8, 3.0));
    EXPECT_DOUBLE_EQ(mean(f), 3.0);
    EXPECT_DOUBLE_EQ(variance(f), 0.0);
    EXPECT_DOUBLE_EQ(second_moment(PeriodicField(Grid(8, 8, 2.0))), 4.0);
}

TEST(Statistics, ClosedForms)
{
    auto const a = field_of(one_var());
    EXPECT_NEAR(mean(a), 1.0, 1e-14);
    EXPECT_NEAR(variance(a), 0.045, 1e-14);
    EXPECT_NEAR(second_moment(a), 1.045, 1e-14);

    auto const b = field_of({1.0, {{1, 0, 0.2, 0.0}, {0, 1, 0.1, kHalfPi}}});
    EXPECT_NEAR(mean(b), 1.0, 1e-14);

    auto const c = field_of(four_term());
    EXPECT_NEAR(mean(c), 1.0, 1e-14);
    EXPECT_NEAR(variance(c), 0.025625, 1e-14);
    EXPECT_NEAR(second_moment(c), 1.025625, 1e-14);
}

TEST(Statistics, VarianceIdentityOnRandomFields)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> freq(-5, 5);
    for (int trial = 0; trial < 50; ++trial)
    {
        TrigFamily fam{2.0, {}};
        for (int k = 0; k < 5; ++k)
        {
            fam.terms.push_back(
                {freq(rng), freq(rng), 0.3 * u(rng), 2 * kPi * u(rng)});
        }
        auto const f = field_of(fam, 32, 48);
        double const area = second_moment(f);
        double const m = mean(f);
        EXPECT_LE(std::abs(area - m * m - variance(f)), 1e-12 * area);
        EXPECT_GE(variance(f), 0);
    }
}

TEST(L1Norm, ClosedForms)
{
    EXPECT_EQ(l1_norm(Grid(8, 8, 0.0)), 0.0);
    Grid const f0 = TrigFamily{0.0, {{0, 1, 0.3, 0.0}}}.sample(256, 8);
    EXPECT_NEAR(l1_norm(f0), 0.6 / kPi, 1e-8);
    EXPECT_NEAR(l1_norm(f0), 0.190986, 1e-6);
}

TEST(L1Norm, KinksBetweenSamples)
{
    // Zero crossings strictly inside cells; a plain sample average is only
    // second order accurate there.
    for (std::size_t n : {64u, 128u, 256u})
    {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            v[i] = 0.3 * std::sin(2 * kPi * static_cast<double>(i) / n + 0.37);
        }
        EXPECT_NEAR(l1_norm(std::span<double const>(v)), 0.6 / kPi,
                    n >= 256 ? 1e-8 : 1e-6)
            << n;
    }
}

TEST(L1Norm, MatchesFineQuadratureOracle)
{
    // |0.2 sin 2pi x + 0.1 cos 2pi y| by a 4096^2 midpoint sum.
    double oracle = 0;
    int const fine = 4096;
    for (int i = 0; i < fine; ++i)
    {
        double const y = (i + 0.5) / fine;
        for (int j = 0; j < fine; ++j)
        {
            double const x = (j + 0.5) / fine;
            oracle += std::abs(0.2 * std::sin(2 * kPi * x)
                               + 0.1 * std::cos(2 * kPi * y));
        }
    }
    oracle /= double(fine) * fine;
    Grid const p = TrigFamily{0.0, {{1, 0, 0.2, 0.0}, {0, 1, 0.1, kHalfPi}}}
                       .sample(512, 512);
    EXPECT_NEAR(l1_norm(p), oracle, 2e-6);
}

TEST(Biaxial, ConstantField)
{
    auto const parts = biaxial_decompose(PeriodicField(Grid(8, 8, 5.0)));
    EXPECT_DOUBLE_EQ(parts.mean, 5.0);
    for (double v : parts.g_part)
        EXPECT_EQ(v, 0.0);
    for (double v : parts.h_part)
        EXPECT_EQ(v, 0.0);
    for (double v : parts.k_part.values())
        EXPECT_EQ(v, 0.0);
}

TEST(Biaxial, FourTermPartsTermByTerm)
{
    std::size_t const n = 64;
    auto const f = field_of(four_term(), n, n);
    auto const parts = biaxial_decompose(f);
    EXPECT_NEAR(parts.mean, 1.0, 1e-14);
    for (std::size_t j = 0; j < n; ++j)
    {
        double const x = double(j) / n;
        EXPECT_NEAR(parts.g_part[j], 0.2 * std::sin(2 * kPi * x), 1e-12);
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        double const y = double(i) / n;
        EXPECT_NEAR(parts.h_part[i], 0.1 * std::cos(2 * kPi * y), 1e-12);
        for (std::size_t j = 0; j < n; ++j)
        {
            double const x = double(j) / n;
            EXPECT_NEAR(parts.k_part(i, j),
                        0.05 * std::sin(2 * kPi * x) * std::sin(2 * kPi * y),
                        1e-12);
        }
    }
}

TEST(Biaxial, InvariantsAndOrthogonality)
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> freq(-3, 3);
    for (int trial = 0; trial < 10; ++trial)
    {
        TrigFamily fam{2.0, {}};
        for (int k = 0; k < 6; ++k)
        {
            fam.terms.push_back(
                {freq(rng), freq(rng), 0.25 * u(rng), 2 * kPi * u(rng)});
        }
        auto const f = field_of(fam, 32, 40);
        auto const parts = biaxial_decompose(f);
        Grid const back = reconstruct(parts);
        for (std::size_t k = 0; k < back.size(); ++k)
        {
            EXPECT_NEAR(back.values()[k], f.samples().values()[k],
                        1e-12 * f.max());
        }
        double gm = 0, hm = 0;
        for (double v : parts.g_part)
            gm += v;
        for (double v : parts.h_part)
            hm += v;
        EXPECT_NEAR(gm / 40, 0, 1e-14);
        EXPECT_NEAR(hm / 32, 0, 1e-14);
        for (std::size_t i = 0; i < 32; ++i)
        {
            double s = 0;
            for (std::size_t j = 0; j < 40; ++j)
                s += parts.k_part(i, j);
            EXPECT_NEAR(s / 40, 0, 1e-14);
        }
        for (std::size_t j = 0; j < 40; ++j)
        {
            double s = 0;
            for (std::size_t i = 0; i < 32; ++i)
                s += parts.k_part(i, j);
            EXPECT_NEAR(s / 32, 0, 1e-14);
        }
        double const parts_var
            = sample_variance(std::span<double const>(parts.g_part))
              + sample_variance(std::span<double const>(parts.h_part))
              + sample_variance(parts.k_part);
        EXPECT_NEAR(variance(f), parts_var, 1e-13);
    }
}

TEST(Biaxial, OneVariableFactor)
{
    auto const parts = biaxial_decompose(field_of(one_var(), 32, 32));
    for (double v : parts.g_part)
        EXPECT_NEAR(v, 0, 1e-15);
    for (std::size_t i = 0; i < 32; ++i)
        EXPECT_NEAR(parts.h_part[i], 0.3 * std::sin(2 * kPi * i / 32.0),
                    1e-14);
    for (double v : parts.k_part.values())
        EXPECT_NEAR(v, 0, 1e-15);
}

TEST(Biaxial, ProjectionExamples)
{
    Grid const zero = biaxial_project(PeriodicField(Grid(8, 8, 4.0)));
    for (double v : zero.values())
        EXPECT_EQ(v, 0.0);

    Grid const p = biaxial_project(field_of(four_term(), 32, 32));
    Grid const want
        = TrigFamily{0.0, {{1, 0, 0.2, 0.0}, {0, 1, 0.1, kHalfPi}}}.sample(32,
                                                                          32);
    for (std::size_t k = 0; k < p.size(); ++k)
        EXPECT_NEAR(p.values()[k], want.values()[k], 1e-14);

    Grid const pure_k = biaxial_project(
        field_of({1.0, {{1, 1, 0.025, -kHalfPi}, {1, -1, 0.025, kHalfPi}}}));
    for (double v : pure_k.values())
        EXPECT_NEAR(v, 0, 1e-14);
}

TEST(Biaxial, ProjectionIdempotent)
{
    auto const f = field_of(
        {1.5, {{2, 1, 0.2, 0.3}, {0, 3, 0.1, 1.0}, {1, 0, 0.2, 2.0}}}, 32,
        32);
    Grid p = biaxial_project(f);
    Grid lifted = p;
    for (double& v : lifted.values())
        v += 1.5;
    Grid const again = biaxial_project(PeriodicField(lifted));
    for (std::size_t k = 0; k < p.size(); ++k)
        EXPECT_NEAR(again.values()[k], p.values()[k], 1e-12);
}

TEST(Biaxial, ProjectionFourierSupport)
{
    std::size_t const n = 16;
    auto const f = field_of(
        {1.5, {{2, 1, 0.2, 0.3}, {0, 3, 0.1, 1.0}, {1, 0, 0.2, 2.0}}}, n, n);
    Grid const p = biaxial_project(f);
    // Direct DFT: only coefficients with m n == 0, (m, n) != (0, 0) survive.
    for (int m = 0; m < int(n); ++m)
    {
        for (int k = 0; k < int(n); ++k)
        {
            std::complex<double> c = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    c += p(i, j)
                         * std::polar(1.0, -2 * kPi * double(m * j + k * i) / n);
            c /= double(n * n);
            if ((m == 0) == (k == 0))
                EXPECT_NEAR(std::abs(c), 0, 1e-14) << m << "," << k;
        }
    }
}

TEST(Biaxial, RequiresUnitSquare)
{
    PeriodicField const f(Grid(8, 8, 1.0), Lattice::eisenstein());
    try
    {
        biaxial_decompose(f);
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_STREQ(e.what(),
                     "biaxial decomposition requires the unit square torus");
    }
    EXPECT_THROW(biaxial_project(f), Error);
}

TEST(Metric, BuildAndStatistics)
{
    auto const flat = build_metric(Lattice::unit_square(), Grid(16, 16, 1.0));
    EXPECT_DOUBLE_EQ(flat.area(), 1.0);

    auto const eis = build_metric(Lattice::eisenstein(), Grid(16, 16, 1.0));
    EXPECT_NEAR(eis.area(), 1.0, 1e-15);
    EXPECT_NEAR(eis.sigma_sq(), std::numbers::sqrt3 / 2, 1e-12);

    auto const g = build_metric(Lattice::unit_square(),
                                one_var().sample(64, 64));
    EXPECT_NEAR(area(g), 1.045, 1e-14);
    EXPECT_GE(g.area(), g.mean() * g.mean());
}

TEST(Metric, RescalingPreservesGeometry)
{
    // Lattice of covolume 4: the factor doubles after normalization and the
    // total area is unchanged.
    Lattice const big({2, 0}, {0, 2});
    auto const m = build_metric(big, Grid(8, 8, 1.0));
    EXPECT_NEAR(m.lattice().covolume(), 1.0, 1e-15);
    EXPECT_NEAR(m.area(), 4.0, 1e-14);
    EXPECT_THROW(build_metric(big, Grid(8, 8, 1.0), Rescale::forbid), Error);
    EXPECT_NO_THROW(
        build_metric(Lattice::unit_square(), Grid(8, 8, 1.0), Rescale::forbid));
}

TEST(Metric, Homothety)
{
    auto const flat = build_metric(Lattice::unit_square(), Grid(8, 8, 1.0));
    EXPECT_DOUBLE_EQ(scale(flat, 2).area(), 4.0);
    auto const g = build_metric(Lattice::unit_square(),
                                one_var().sample(64, 64));
    auto const same = scale(g, 1);
    EXPECT_EQ(same.area(), g.area());
    EXPECT_EQ(same.mean(), g.mean());
    EXPECT_EQ(same.variance(), g.variance());
    auto const g3 = scale(g, 3);
    EXPECT_NEAR(g3.variance(), 0.405, 1e-13);
    EXPECT_NEAR(g3.area(), 9 * g.area(), 1e-13);
    EXPECT_NEAR(g3.mean(), 3 * g.mean(), 1e-14);
    EXPECT_THROW(scale(g, 0), Error);
    EXPECT_THROW(scale(g, -1), Error);
}

}  // namespace
}  // namespace loewner
