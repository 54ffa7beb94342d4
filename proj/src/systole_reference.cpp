#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "loewner/systole.hpp"

#include "cover_graph.hpp"

namespace loewner::reference {

// Plain Dijkstra from every base point of the transversal, no heuristic and
// no shared pruning. Intended for small grids in tests and benchmarks.
ClassLoop shortest_in_class(TorusMetric const& metric, HomotopyClass const& c)
{
    Grid const& f = metric.factor().samples();
    Lattice const& lattice = metric.lattice();
    detail::Stencil const st(lattice, f.rows(), f.cols());
    auto const cls = make_class(lattice, c.p, c.q);
    auto const tr = detail::make_transversal(f.rows(), f.cols(), cls);

    // Any straight stencil walk is no longer than this.
    double const bound = metric.factor().max() * (1 + st.anisotropy())
                         * cls.flat_length * (1 + 1e-9);
    double const radius = bound / metric.factor().min();
    auto const n = static_cast<std::int64_t>(f.rows());
    auto const m = static_cast<std::int64_t>(f.cols());
    auto const pad_i = static_cast<std::int64_t>(
                           std::ceil(n * norm(lattice.dual2()) * radius))
                       + 2;
    auto const pad_j = static_cast<std::int64_t>(
                           std::ceil(m * norm(lattice.dual1()) * radius))
                       + 2;
    std::int64_t const i0 = std::min<std::int64_t>(0, tr.di) - pad_i;
    std::int64_t const j0 = std::min<std::int64_t>(0, tr.dj) - pad_j;
    std::int64_t const height = std::abs(tr.di) + n + 2 * pad_i;
    std::int64_t const width = std::abs(tr.dj) + m + 2 * pad_j;
    auto const id = [&](std::int64_t i, std::int64_t j) {
        return (i - i0) * width + (j - j0);
    };

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(height * width));
    std::vector<std::int64_t> pred(dist.size());
    ClassLoop best;
    best.length = inf;

    for (auto const& s : tr.sources)
    {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(pred.begin(), pred.end(), -1);
        std::int64_t const from = id(s[0], s[1]);
        std::int64_t const to = id(s[0] + tr.di, s[1] + tr.dj);
        using Entry = std::pair<double, std::int64_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        dist[from] = 0;
        queue.emplace(0, from);
        while (!queue.empty())
        {
            auto const [d, u] = queue.top();
            queue.pop();
            if (d > dist[u])
            {
                continue;
            }
            if (u == to)
            {
                break;
            }
            std::int64_t const ui = u / width + i0;
            std::int64_t const uj = u % width + j0;
            for (auto const& step : st.steps())
            {
                std::int64_t const vi = ui + step.di;
                std::int64_t const vj = uj + step.dj;
                if (vi < i0 || vi >= i0 + height || vj < j0
                    || vj >= j0 + width)
                {
                    continue;
                }
                double const w = step.length * 0.5
                                 * (detail::wrapped(f, ui, uj)
                                    + detail::wrapped(f, vi, vj));
                std::int64_t const v = id(vi, vj);
                if (d + w < dist[v])
                {
                    dist[v] = d + w;
                    pred[v] = u;
                    queue.emplace(dist[v], v);
                }
            }
        }
        if (dist[to] < best.length)
        {
            best.length = dist[to];
            best.path.clear();
            for (std::int64_t u = to; u >= 0; u = pred[u])
            {
                best.path.insert(best.path.begin(),
                                 st.position(u / width + i0, u % width + j0));
            }
        }
    }
    return best;
}

}  // namespace loewner::reference
