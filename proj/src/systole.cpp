#include "loewner/systole.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>

#include <omp.h>

#include "loewner/error.hpp"
#include "loewner/kernels.hpp"

#include "cover_graph.hpp"

namespace loewner {
namespace {

using detail::CoverWindow;
using detail::Stencil;
using detail::Transversal;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack on search bounds so that equal-length candidates are never pruned
// by rounding.
constexpr double kBoundSlack = 1e-12;

// Base points searched together against one bound.
constexpr std::int64_t kBatch = 16;
// Loops within this relative margin of a known loop count as ties.
constexpr double kTieMargin = 1e-12;

double slack(double bound)
{
    return bound * (1 + kBoundSlack);
}

using HeapEntry = std::pair<double, std::int64_t>;

struct MinHeap
{
    std::vector<HeapEntry> items;

    bool empty() const { return items.empty(); }
    void push(double key, std::int64_t node)
    {
        items.emplace_back(key, node);
        std::push_heap(items.begin(), items.end(), std::greater<>{});
    }
    HeapEntry pop()
    {
        std::pop_heap(items.begin(), items.end(), std::greater<>{});
        auto top = items.back();
        items.pop_back();
        return top;
    }
    void clear() { items.clear(); }
};

// Neighbor offsets precomputed for a window.
struct Adjacency
{
    std::array<std::int64_t, 16> offset{};
    std::array<int, 16> di{};
    std::array<int, 16> dj{};
    std::array<double, 16> half_length{};
    Vec2 row_step;
    Vec2 col_step;

    Adjacency(Stencil const& st, std::int64_t width)
        : row_step(st.position(1, 0)), col_step(st.position(0, 1))
    {
        auto const steps = st.steps();
        for (std::size_t k = 0; k < steps.size(); ++k)
        {
            di[k] = steps[k].di;
            dj[k] = steps[k].dj;
            offset[k] = steps[k].di * width + steps[k].dj;
            half_length[k] = 0.5 * steps[k].length;
        }
    }
};

//! Distances from a node set, truncated above `limit` (left infinite).
std::vector<double>
distance_from_set(CoverWindow const& win, Adjacency const& adj,
                  std::vector<std::int64_t> const& seeds, double limit)
{
    std::int64_t const height = win.box().height;
    std::int64_t const width = win.box().width;
    std::vector<double> dist(static_cast<std::size_t>(win.size()), kInf);
    MinHeap heap;
    for (auto s : seeds)
    {
        dist[s] = 0;
        heap.push(0, s);
    }
    while (!heap.empty())
    {
        auto const [d, u] = heap.pop();
        if (d > dist[u])
        {
            continue;
        }
        std::int64_t const ui = u / width;
        std::int64_t const uj = u % width;
        double const fu = win.factor(u);
        for (std::size_t k = 0; k < 16; ++k)
        {
            std::int64_t const vi = ui + adj.di[k];
            std::int64_t const vj = uj + adj.dj[k];
            if (vi < 0 || vi >= height || vj < 0 || vj >= width)
            {
                continue;
            }
            std::int64_t const v = u + adj.offset[k];
            double const nd = d + adj.half_length[k] * (fu + win.factor(v));
            if (nd < dist[v] && nd <= limit)
            {
                dist[v] = nd;
                heap.push(nd, v);
            }
        }
    }
    return dist;
}

//! Per-thread A* state on one window; reset touches only visited nodes.
//! The heuristic is the larger of the distance to the nearest target and
//! min f times the flat distance to this run's own target; both are
//! consistent, hence so is their maximum.
class AStar
{
  public:
    AStar(CoverWindow const& win, Adjacency const& adj,
          std::vector<double> const& to_target, double min_f)
        : win_(win)
        , adj_(adj)
        , h_(to_target)
        , min_f_(min_f * (1 - 1e-14))
        , dist_(static_cast<std::size_t>(win.size()), kInf)
        , pred_(static_cast<std::size_t>(win.size()), -1)
        , closed_(static_cast<std::size_t>(win.size()), 0)
    {
    }

    //! Shortest distance src -> dst if it is <= limit, else infinity.
    double run(std::int64_t src, std::int64_t dst, double limit)
    {
        reset();
        std::int64_t const height = win_.box().height;
        std::int64_t const width = win_.box().width;
        std::int64_t const ti = dst / width;
        std::int64_t const tj = dst % width;
        auto const heuristic = [&](std::int64_t v, std::int64_t vi,
                                   std::int64_t vj) {
            Vec2 const gap = adj_.row_step * static_cast<double>(ti - vi)
                             + adj_.col_step * static_cast<double>(tj - vj);
            return std::max(h_[v], min_f_ * norm(gap));
        };
        dist_[src] = 0;
        touched_.push_back(src);
        heap_.push(heuristic(src, src / width, src % width), src);
        while (!heap_.empty())
        {
            auto const [key, u] = heap_.pop();
            if (closed_[u])
            {
                continue;
            }
            if (key > limit)
            {
                break;
            }
            closed_[u] = 1;
            if (u == dst)
            {
                return dist_[u];
            }
            std::int64_t const ui = u / width;
            std::int64_t const uj = u % width;
            double const fu = win_.factor(u);
            double const du = dist_[u];
            for (std::size_t k = 0; k < 16; ++k)
            {
                std::int64_t const vi = ui + adj_.di[k];
                std::int64_t const vj = uj + adj_.dj[k];
                if (vi < 0 || vi >= height || vj < 0 || vj >= width)
                {
                    continue;
                }
                std::int64_t const v = u + adj_.offset[k];
                if (closed_[v])
                {
                    continue;
                }
                double const nd = du
                                  + adj_.half_length[k]
                                        * (fu + win_.factor(v));
                if (nd < dist_[v])
                {
                    double const nkey = nd + heuristic(v, vi, vj);
                    if (nkey > limit)
                    {
                        continue;
                    }
                    if (dist_[v] == kInf)
                    {
                        touched_.push_back(v);
                    }
                    dist_[v] = nd;
                    pred_[v] = u;
                    heap_.push(nkey, v);
                }
            }
        }
        return kInf;
    }

    //! Node sequence src..dst of the last successful run.
    std::vector<std::int64_t> path_to(std::int64_t dst) const
    {
        std::vector<std::int64_t> nodes;
        for (std::int64_t u = dst; u >= 0; u = pred_[u])
        {
            nodes.push_back(u);
        }
        std::reverse(nodes.begin(), nodes.end());
        return nodes;
    }

  private:
    void reset()
    {
        for (auto u : touched_)
        {
            dist_[u] = kInf;
            pred_[u] = -1;
            closed_[u] = 0;
        }
        touched_.clear();
        heap_.clear();
    }

    CoverWindow const& win_;
    Adjacency const& adj_;
    std::vector<double> const& h_;
    double min_f_;
    std::vector<double> dist_;
    std::vector<std::int64_t> pred_;
    std::vector<std::uint8_t> closed_;
    std::vector<std::int64_t> touched_;
    MinHeap heap_;
};

//! Shortest loop of class `c` with length <= bound, if any. With `strict`,
//! `bound` is the length of a loop already in hand and only loops shorter
//! by more than kTieMargin are of interest.
std::optional<ClassLoop>
search_class(TorusMetric const& metric, Stencil const& st,
             HomotopyClass const& c, double bound, bool strict, Exec exec)
{
    Grid const& f = metric.factor().samples();
    double const min_f = metric.factor().min();
    double const limit = slack(bound);
    // Every loop of the class is at least this long; this also guarantees
    // that base points and their translates lie inside the cover window.
    double const floor_len = min_f * (1 - 1e-14) * c.flat_length;
    if (floor_len > limit)
    {
        return std::nullopt;
    }
    Transversal const tr = detail::make_transversal(f.rows(), f.cols(), c);
    CoverWindow const win(f,
                          detail::cover_box(metric.lattice(), f.rows(),
                                            f.cols(), tr, limit / min_f));
    Adjacency const adj(st, win.box().width);

    auto const n_src = static_cast<std::int64_t>(tr.sources.size());
    std::vector<std::int64_t> src(n_src);
    std::vector<std::int64_t> dst(n_src);
    for (std::int64_t k = 0; k < n_src; ++k)
    {
        auto const [i, j] = tr.sources[k];
        src[k] = win.index(i, j);
        dst[k] = win.index(i + tr.di, j + tr.dj);
    }
    std::vector<double> const to_target = distance_from_set(win, adj, dst,
                                                            limit);

    // Lower bound on the loop through base point k.
    auto const lower = [&](std::int64_t k) {
        return std::max(to_target[src[k]], floor_len);
    };

    // Most promising base points first so the shared bound tightens early.
    std::vector<std::int64_t> order;
    for (std::int64_t k = 0; k < n_src; ++k)
    {
        if (lower(k) <= limit)
        {
            order.push_back(k);
        }
    }
    if (order.empty())
    {
        return std::nullopt;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int64_t a, std::int64_t b) {
                         return lower(a) < lower(b);
                     });

    // Sources run in fixed-size batches; each batch prunes against the bound
    // left by the batches before it, so the outcome does not depend on the
    // thread count or schedule. Once a loop is known, ties within
    // kTieMargin are pruned as well, which keeps flat metrics (where every
    // base point ties) from re-exploring the same tie region.
    std::vector<double> length(n_src, kInf);
    double current = bound;
    bool found = strict;
    auto const n_order = static_cast<std::int64_t>(order.size());
    std::vector<std::unique_ptr<AStar>> pool(
        exec == Exec::parallel ? static_cast<std::size_t>(omp_get_max_threads())
                               : 1);
    auto const solver = [&](std::size_t t) -> AStar& {
        if (!pool[t])
        {
            pool[t] = std::make_unique<AStar>(win, adj, to_target, min_f);
        }
        return *pool[t];
    };
    for (std::int64_t start = 0; start < n_order; start += kBatch)
    {
        double const cut = found ? current * (1 - kTieMargin) : slack(current);
        if (lower(order[start]) > cut)
        {
            break;
        }
        std::int64_t const stop = std::min(n_order, start + kBatch);
        auto const work = [&](AStar& astar, std::int64_t r) {
            std::int64_t const k = order[r];
            if (lower(k) <= cut)
            {
                length[k] = astar.run(src[k], dst[k], cut);
            }
        };
        if (exec == Exec::parallel)
        {
#pragma omp parallel for schedule(dynamic, 1)
            for (std::int64_t r = start; r < stop; ++r)
            {
                work(solver(static_cast<std::size_t>(omp_get_thread_num())), r);
            }
        }
        else
        {
            for (std::int64_t r = start; r < stop; ++r)
            {
                work(solver(0), r);
            }
        }
        for (std::int64_t r = start; r < stop; ++r)
        {
            double const d = length[order[r]];
            if (d < kInf)
            {
                current = found ? std::min(current, d) : d;
                found = true;
            }
        }
    }

    // Ordered reduction: smallest length, then smallest base point index.
    std::int64_t winner = -1;
    for (std::int64_t k = 0; k < n_src; ++k)
    {
        if (length[k] < kInf && (winner < 0 || length[k] < length[winner]))
        {
            winner = k;
        }
    }
    if (winner < 0)
    {
        return std::nullopt;
    }
    AStar astar(win, adj, to_target, min_f);
    double const d = astar.run(src[winner], dst[winner],
                               slack(length[winner]));
    ClassLoop loop;
    loop.length = d;
    for (auto u : astar.path_to(dst[winner]))
    {
        loop.path.push_back(
            st.position(win.box().i0 + u / win.box().width,
                        win.box().j0 + u % win.box().width));
    }
    return loop;
}

//! Best straight stencil walk of class c over its transversal.
double straight_seed(Grid const& f, Stencil const& st, HomotopyClass const& c)
{
    Transversal const tr = detail::make_transversal(f.rows(), f.cols(), c);
    double best = kInf;
    for (auto const& s : tr.sources)
    {
        best = std::min(best, detail::straight_walk(f, st, s[0], s[1], tr.di,
                                                    tr.dj));
    }
    return best;
}

HomotopyClass class_of(Lattice const& lattice, Vec2 v)
{
    auto const p = static_cast<int>(std::lround(dot(v, lattice.dual1())));
    auto const q = static_cast<int>(std::lround(dot(v, lattice.dual2())));
    return make_class(lattice, p, q);
}

bool lex_less(HomotopyClass const& a, HomotopyClass const& b)
{
    return std::pair(a.p, a.q) < std::pair(b.p, b.q);
}

//! max |second difference| / step^2 along both grid axes.
double second_derivative_bound(Grid const& f, Stencil const& st)
{
    double const hx = norm(st.position(0, 1));
    double const hy = norm(st.position(1, 0));
    double worst = 0;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(f.rows()); ++i)
    {
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(f.cols()); ++j)
        {
            double const c = 2 * f(i, j);
            double const dxx = detail::wrapped(f, i, j + 1) - c
                               + detail::wrapped(f, i, j - 1);
            double const dyy = detail::wrapped(f, i + 1, j) - c
                               + detail::wrapped(f, i - 1, j);
            worst = std::max({worst, std::abs(dxx) / (hx * hx),
                              std::abs(dyy) / (hy * hy)});
        }
    }
    return worst;
}

void require_square(TorusMetric const& metric, char const* what)
{
    if (!metric.lattice().is_standard_square())
    {
        throw Error(what);
    }
}

}  // namespace

char const* to_string(SystoleMethod m)
{
    return m == SystoleMethod::one_var_exact ? "one_var_exact"
                                             : "grid_dijkstra";
}

HomotopyClass make_class(Lattice const& lattice, int p, int q)
{
    if (p == 0 && q == 0)
    {
        throw Error("homotopy class (0,0) is contractible");
    }
    if (p < 0 || (p == 0 && q < 0))
    {
        p = -p;
        q = -q;
    }
    return {p, q, norm(lattice.point(p, q))};
}

double flat_systole(Lattice const& lattice)
{
    return successive_minima(lattice).lambda1;
}

std::vector<HomotopyClass>
candidate_classes(Lattice const& lattice, double min_f, double upper_bound)
{
    double const lambda1 = flat_systole(lattice);
    if (!(min_f > 0) || !(upper_bound >= min_f * lambda1 * (1 - 1e-12)))
    {
        throw Error("invalid bound ordering: upper bound below min f * "
                    "lambda1");
    }
    double const cutoff = upper_bound / min_f;
    double const keep = cutoff * (1 + 1e-12);
    auto const p_max = static_cast<int>(
        std::floor(cutoff * norm(lattice.dual1()) + 1e-9));
    auto const q_max = static_cast<int>(
        std::floor(cutoff * norm(lattice.dual2()) + 1e-9));
    std::vector<HomotopyClass> out;
    for (int p = 0; p <= p_max; ++p)
    {
        for (int q = -q_max; q <= q_max; ++q)
        {
            if (p == 0 && q <= 0)
            {
                continue;
            }
            auto const c = make_class(lattice, p, q);
            if (c.flat_length <= keep)
            {
                out.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
        if (a.flat_length != b.flat_length)
        {
            return a.flat_length < b.flat_length;
        }
        return lex_less(a, b);
    });
    return out;
}

double stencil_error_bound(Lattice const& lattice, std::size_t rows,
                           std::size_t cols)
{
    return Stencil(lattice, rows, cols).anisotropy();
}

ClassLoop shortest_in_class(TorusMetric const& metric, HomotopyClass const& c,
                            Exec exec)
{
    Grid const& f = metric.factor().samples();
    Stencil const st(metric.lattice(), f.rows(), f.cols());
    auto const cls = make_class(metric.lattice(), c.p, c.q);
    auto loop = search_class(metric, st, cls, straight_seed(f, st, cls), false,
                             exec);
    if (!loop)
    {
        // The straight walk is itself a loop of the class.
        throw Error("internal: class search missed its seed loop");
    }
    return std::move(*loop);
}

SystoleEstimate systole_upper(TorusMetric const& metric,
                              SystoleOptions const& options)
{
    Lattice const& lattice = metric.lattice();
    Grid const& f = metric.factor().samples();
    double const min_f = metric.factor().min();
    double const max_f = metric.factor().max();
    Stencil const st(lattice, f.rows(), f.cols());

    auto const minima = successive_minima(lattice);
    double bound = std::min(straight_seed(f, st, class_of(lattice, minima.v1)),
                            straight_seed(f, st, class_of(lattice, minima.v2)));

    auto const classes = candidate_classes(
        lattice, min_f, bound * options.class_cutoff_factor);

    std::optional<ClassLoop> best;
    HomotopyClass best_class;
    for (auto const& c : classes)
    {
        if (min_f * c.flat_length > slack(bound))
        {
            break;
        }
        // A class that would win a tie must not have its ties pruned.
        bool const strict = best && lex_less(best_class, c);
        auto loop = search_class(metric, st, c, bound, strict, options.exec);
        if (!loop)
        {
            continue;
        }
        bool const better = !best || loop->length < best->length
                            || (loop->length == best->length
                                && lex_less(c, best_class));
        if (better)
        {
            best = std::move(loop);
            best_class = c;
            bound = std::min(bound, best->length);
        }
    }
    if (!best)
    {
        throw Error("internal: no loop found below the straight seed");
    }

    SystoleEstimate est;
    est.upper = best->length;
    est.witness_class = best_class;
    est.witness_path = std::move(best->path);
    est.rows = f.rows();
    est.cols = f.cols();
    est.method = SystoleMethod::grid_dijkstra;
    est.stencil_error = st.anisotropy();

    double flat_length = 0;
    for (std::size_t k = 1; k < est.witness_path.size(); ++k)
    {
        flat_length += norm(est.witness_path[k] - est.witness_path[k - 1]);
    }
    double const h = std::max(norm(st.position(0, 1)),
                              norm(st.position(1, 0)));
    est.err_quadrature = flat_length * st.max_step() * st.max_step() / 12
                         * second_derivative_bound(f, st);
    est.error_budget = est.stencil_error * est.upper + 2 * h * (max_f - min_f)
                       + est.err_quadrature;
    est.lower_fubini = std::sqrt(metric.sigma_sq())
                       * std::max(0.0, est.upper - est.error_budget);
    return est;
}

std::optional<Axis> one_variable_axis(PeriodicField const& field)
{
    constexpr double tol = 1e-10;
    Grid const& g = field.samples();
    auto const constant_rows = [&] {
        for (std::size_t i = 0; i < g.rows(); ++i)
        {
            for (std::size_t j = 1; j < g.cols(); ++j)
            {
                if (std::abs(g(i, j) - g(i, 0)) > tol)
                {
                    return false;
                }
            }
        }
        return true;
    };
    auto const constant_cols = [&] {
        for (std::size_t j = 0; j < g.cols(); ++j)
        {
            for (std::size_t i = 1; i < g.rows(); ++i)
            {
                if (std::abs(g(i, j) - g(0, j)) > tol)
                {
                    return false;
                }
            }
        }
        return true;
    };
    if (constant_rows())
    {
        return Axis::y;
    }
    if (constant_cols())
    {
        return Axis::x;
    }
    return std::nullopt;
}

double systole_one_var(TorusMetric const& metric)
{
    constexpr char const* msg
        = "one-variable oracle requires square torus and f = f(y)";
    require_square(metric, msg);
    auto const axis = one_variable_axis(metric.factor());
    if (!axis)
    {
        throw Error(msg);
    }
    Grid const& g = metric.factor().samples();
    auto const profile = *axis == Axis::y ? kernels::row_averages(g)
                                          : kernels::column_averages(g);
    return *std::min_element(profile.begin(), profile.end());
}

TorusMetric averaged_metric(TorusMetric const& metric, Axis along)
{
    require_square(metric, "averaged metric requires the unit square torus");
    Grid const& g = metric.factor().samples();
    Grid out(g.rows(), g.cols());
    if (along == Axis::x)
    {
        auto const avg = kernels::row_averages(g);
        for (std::size_t i = 0; i < g.rows(); ++i)
        {
            for (std::size_t j = 0; j < g.cols(); ++j)
            {
                out(i, j) = avg[i];
            }
        }
    }
    else
    {
        auto const avg = kernels::column_averages(g);
        for (std::size_t i = 0; i < g.rows(); ++i)
        {
            for (std::size_t j = 0; j < g.cols(); ++j)
            {
                out(i, j) = avg[j];
            }
        }
    }
    return TorusMetric(PeriodicField(std::move(out), metric.lattice()));
}

}  // namespace loewner
