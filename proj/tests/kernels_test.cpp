#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "loewner/kernels.hpp"

namespace loewner {
namespace {

Grid random_grid(std::size_t n, std::size_t m, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(1.0, 3.0);
    Grid g(n, m);
    for (double& v : g.values())
        v = d(rng);
    return g;
}

bool same_bits(double a, double b)
{
    return std::memcmp(&a, &b, sizeof a) == 0;
}

TEST(Kernels, SerialAndParallelAreBitwiseEqual)
{
    for (auto [n, m] : {std::pair{4u, 4u}, {37u, 91u}, {256u, 256u}})
    {
        Grid const g = random_grid(n, m, n * 7 + m);
        using kernels::average;
        EXPECT_TRUE(same_bits(average(g, Exec::serial),
                              average(g, Exec::parallel)));
        EXPECT_TRUE(same_bits(kernels::average_square(g, Exec::serial),
                              kernels::average_square(g, Exec::parallel)));
        EXPECT_TRUE(same_bits(
            kernels::average_centered_square(g, 0.7, Exec::serial),
            kernels::average_centered_square(g, 0.7, Exec::parallel)));
        EXPECT_TRUE(same_bits(kernels::average_abs(g, Exec::serial),
                              kernels::average_abs(g, Exec::parallel)));
        auto const rs = kernels::row_averages(g, Exec::serial);
        auto const rp = kernels::row_averages(g, Exec::parallel);
        auto const cs = kernels::column_averages(g, Exec::serial);
        auto const cp = kernels::column_averages(g, Exec::parallel);
        ASSERT_EQ(rs.size(), n);
        ASSERT_EQ(cs.size(), m);
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_TRUE(same_bits(rs[k], rp[k]));
        for (std::size_t k = 0; k < m; ++k)
            EXPECT_TRUE(same_bits(cs[k], cp[k]));
    }
}

TEST(Kernels, AgreeWithLongDoubleSums)
{
    Grid const g = random_grid(64, 48, 1);
    long double s = 0, s2 = 0, a = 0;
    for (double v : g.values())
    {
        s += v;
        s2 += (long double)v * v;
        a += std::abs(v);
    }
    double const n = double(g.size());
    EXPECT_NEAR(kernels::average(g), double(s / n), 1e-14);
    EXPECT_NEAR(kernels::average_square(g), double(s2 / n), 1e-13);
    EXPECT_NEAR(kernels::average_abs(g), double(a / n), 1e-14);
}

TEST(Kernels, RowAndColumnAverages)
{
    Grid g(2, 3);
    g(0, 0) = 1, g(0, 1) = 2, g(0, 2) = 3;
    g(1, 0) = 4, g(1, 1) = 5, g(1, 2) = 6;
    auto const r = kernels::row_averages(g);
    auto const c = kernels::column_averages(g);
    EXPECT_DOUBLE_EQ(r[0], 2);
    EXPECT_DOUBLE_EQ(r[1], 5);
    EXPECT_DOUBLE_EQ(c[0], 2.5);
    EXPECT_DOUBLE_EQ(c[1], 3.5);
    EXPECT_DOUBLE_EQ(c[2], 4.5);
}

TEST(Grid, TransposeAndRows)
{
    Grid const g = random_grid(3, 5, 2);
    Grid const t = g.transposed();
    ASSERT_EQ(t.rows(), 5u);
    ASSERT_EQ(t.cols(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j)
        {
            EXPECT_EQ(t(j, i), g(i, j));
            EXPECT_EQ(g.row(i)[j], g(i, j));
        }
}

}  // namespace
}  // namespace loewner
