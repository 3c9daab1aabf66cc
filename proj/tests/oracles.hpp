#pragma once

// Brute-force reference implementations, written straight from the
// definitions. They share no search code with the library and are only
// meant for tiny instances.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/width_metrics.hpp"

namespace oracle {

using fuzzyvc::FunctionClass;
using fuzzyvc::FuzzySetSystem;
using fuzzyvc::Rational;

inline bool contains(const std::vector<std::size_t>& s, std::size_t x)
{
    return std::find(s.begin(), s.end(), x) != s.end();
}

inline std::vector<std::size_t> members(std::uint64_t mask)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 64; ++i)
        if (mask >> i & 1)
            out.push_back(i);
    return out;
}

/** Patterns Z ⊆ Y decided by some set: S+ ∩ Y = Z and S- ∩ Y = Y \ Z. */
inline std::set<std::vector<std::size_t>> traces(const FuzzySetSystem& f, const std::vector<std::size_t>& y)
{
    std::set<std::vector<std::size_t>> out;
    for (const auto& s : f.sets())
    {
        std::vector<std::size_t> z;
        bool decided = true;
        for (std::size_t x : y)
        {
            if (contains(s.plus, x))
                z.push_back(x);
            else if (!contains(s.minus, x))
                decided = false;
        }
        if (decided)
            out.insert(z);
    }
    return out;
}

inline std::size_t shatter(const FuzzySetSystem& f, std::size_t n)
{
    std::size_t best = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.ground_size()); ++m)
        if (static_cast<std::size_t>(__builtin_popcountll(m)) == n)
            best = std::max(best, oracle::traces(f, members(m)).size());
    return best;
}

inline std::optional<std::size_t> vc(const FuzzySetSystem& f)
{
    if (shatter(f, 0) != 1)
        return std::nullopt;
    std::size_t d = 0;
    while (d + 1 <= f.ground_size() && shatter(f, d + 1) == (std::size_t{1} << (d + 1)))
        ++d;
    return d;
}

inline FuzzySetSystem slice(const FunctionClass& q, const Rational& r, const Rational& s)
{
    std::vector<fuzzyvc::FuzzySet> sets;
    for (const auto& row : q.rows())
    {
        fuzzyvc::FuzzySet fs;
        for (std::size_t x = 0; x < row.size(); ++x)
        {
            if (row[x] <= r)
                fs.plus.push_back(x);
            else if (row[x] >= s)
                fs.minus.push_back(x);
        }
        sets.push_back(fs);
    }
    return FuzzySetSystem(q.point_count(), sets);
}

/** vc_eps over the thresholds r = i/den in [0, 1-eps]. */
inline std::size_t vc_eps_grid(const FunctionClass& q, const Rational& eps, long den)
{
    std::size_t best = 0;
    for (long i = 0; Rational(i, den) <= 1 - eps; ++i)
        best = std::max(best, oracle::vc(oracle::slice(q, Rational(i, den), Rational(i, den) + eps)).value_or(0));
    return best;
}

/** fs_eps with witness values restricted to the grid j/den; exact when den covers all midpoints. */
inline std::size_t fat_grid(const FunctionClass& q, const Rational& eps, long den)
{
    std::size_t best = 0;
    const std::size_t n = q.point_count();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m)
    {
        const auto a = members(m);
        if (a.size() <= best)
            continue;
        std::vector<long> w(a.size(), 0);
        bool found = false;
        while (!found)
        {
            std::set<std::uint64_t> patterns;
            for (const auto& row : q.rows())
            {
                std::uint64_t pat = 0;
                bool decided = true;
                for (std::size_t i = 0; i < a.size(); ++i)
                {
                    const Rational diff = row[a[i]] - Rational(w[i], den);
                    if (diff <= -eps)
                        pat |= std::uint64_t{1} << i;
                    else if (!(diff >= eps))
                        decided = false;
                }
                if (decided)
                    patterns.insert(pat);
            }
            found = patterns.size() == (std::size_t{1} << a.size());
            std::size_t i = 0;
            while (i < a.size() && ++w[i] > den)
                w[i++] = 0;
            if (i == a.size())
                break;
        }
        if (found)
            best = a.size();
    }
    return best;
}

/** Smallest index set meeting every set, by increasing size. */
inline std::size_t min_hitting(std::size_t points, const std::vector<std::vector<std::size_t>>& sets)
{
    for (std::size_t size = 0; size <= points; ++size)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << points); ++m)
        {
            if (static_cast<std::size_t>(__builtin_popcountll(m)) != size)
                continue;
            bool ok = true;
            for (const auto& s : sets)
                ok = ok && std::any_of(s.begin(), s.end(), [&](std::size_t x) { return m >> x & 1; });
            if (ok)
                return size;
        }
    return SIZE_MAX;
}

/** Solves A x = b exactly (square); nullopt if singular. */
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = 0; r < n; ++r)
        {
            if (r == c || a[r][c] == 0)
                continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return x;
}

/**
 * Optimum of `sense`·(c·x) over {x >= 0 : rows[i]·x (>= if ge else <=) rhs[i]},
 * by enumerating every basic solution. Assumes the optimum is attained.
 */
inline std::optional<Rational> lp_vertex(const std::vector<std::vector<Rational>>& rows,
                                         const std::vector<Rational>& rhs, bool ge, const std::vector<Rational>& c,
                                         bool maximise)
{
    const std::size_t n = c.size();
    // Constraint pool: the given rows, then x_j >= 0.
    std::vector<std::vector<Rational>> pool = rows;
    std::vector<Rational> pool_rhs = rhs;
    for (std::size_t j = 0; j < n; ++j)
    {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        pool.push_back(e);
        pool_rhs.push_back(0);
    }
    std::optional<Rational> best;
    const std::size_t total = pool.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << total); ++m)
    {
        if (static_cast<std::size_t>(__builtin_popcountll(m)) != n)
            continue;
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (std::size_t i : members(m))
        {
            a.push_back(pool[i]);
            b.push_back(pool_rhs[i]);
        }
        const auto x = solve_square(a, b);
        if (!x)
            continue;
        bool feasible = std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; });
        for (std::size_t i = 0; i < rows.size() && feasible; ++i)
        {
            Rational lhs = 0;
            for (std::size_t j = 0; j < n; ++j)
                lhs += rows[i][j] * (*x)[j];
            feasible = ge ? lhs >= rhs[i] : lhs <= rhs[i];
        }
        if (!feasible)
            continue;
        Rational v = 0;
        for (std::size_t j = 0; j < n; ++j)
            v += c[j] * (*x)[j];
        if (!best || (maximise ? v > *best : v < *best))
            best = v;
    }
    return best;
}

inline Rational tau_star(std::size_t points, const std::vector<std::vector<std::size_t>>& sets)
{
    if (sets.empty())
        return 0;
    std::vector<std::vector<Rational>> rows;
    for (const auto& s : sets)
    {
        std::vector<Rational> r(points, Rational(0));
        for (std::size_t x : s)
            r[x] = 1;
        rows.push_back(r);
    }
    return *lp_vertex(rows, std::vector<Rational>(sets.size(), Rational(1)), true,
                      std::vector<Rational>(points, Rational(1)), false);
}

inline Rational nu_star(std::size_t points, const std::vector<std::vector<std::size_t>>& sets)
{
    if (sets.empty())
        return 0;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t x = 0; x < points; ++x)
    {
        std::vector<Rational> r(sets.size(), Rational(0));
        for (std::size_t k = 0; k < sets.size(); ++k)
            if (contains(sets[k], x))
                r[k] = 1;
        rows.push_back(r);
    }
    return *lp_vertex(rows, std::vector<Rational>(points, Rational(1)), false,
                      std::vector<Rational>(sets.size(), Rational(1)), true);
}

/** E_σ sup_a σ·a over all 2^n sign vectors. */
inline Rational rademacher(const std::vector<std::vector<Rational>>& pts)
{
    const std::size_t n = pts.front().size();
    Rational total = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    {
        std::optional<Rational> best;
        for (const auto& a : pts)
        {
            Rational v = 0;
            for (std::size_t i = 0; i < n; ++i)
                v += (m >> i & 1) ? a[i] : Rational(-a[i]);
            if (!best || v > *best)
                best = v;
        }
        total += *best;
    }
    return total / Rational(static_cast<long>(std::uint64_t{1} << n));
}

/** Calls visit on every ordered n-tuple over {0..k-1}. */
template <typename F>
void for_each_tuple(std::size_t k, std::size_t n, F&& visit)
{
    std::vector<std::size_t> t(n, 0);
    while (true)
    {
        visit(t);
        std::size_t i = 0;
        while (i < n && ++t[i] == k)
            t[i++] = 0;
        if (i == n)
            return;
    }
}

/** r_Q(n): sup over ordered tuples x̄ ∈ X^n of w_R(Q(x̄)). */
inline Rational rademacher_sup(const FunctionClass& q, std::size_t n)
{
    Rational best = 0;
    for_each_tuple(q.point_count(), n, [&](const std::vector<std::size_t>& t) {
        best = std::max(best, rademacher(q.evaluate(t)));
    });
    return best;
}

inline bool is_approx(const std::vector<std::size_t>& xbar, const FunctionClass& q,
                      const fuzzyvc::DiscreteMeasure& mu, const Rational& eps)
{
    for (const auto& row : q.rows())
    {
        Rational av = 0, ex = 0;
        for (std::size_t x : xbar)
            av += row[x];
        av /= static_cast<long>(xbar.size());
        for (std::size_t x = 0; x < row.size(); ++x)
            ex += mu[x] * row[x];
        if (av - ex > eps || ex - av > eps)
            return false;
    }
    return true;
}

/** Smallest m <= cap with an ε-approximation in support^m, or nullopt. */
inline std::optional<std::size_t> min_approx_size(const FunctionClass& q, const fuzzyvc::DiscreteMeasure& mu,
                                                  const Rational& eps, std::size_t cap)
{
    const auto support = mu.support();
    for (std::size_t m = 1; m <= cap; ++m)
    {
        bool found = false;
        for_each_tuple(support.size(), m, [&](const std::vector<std::size_t>& t) {
            if (found)
                return;
            std::vector<std::size_t> xbar;
            for (std::size_t i : t)
                xbar.push_back(support[i]);
            found = is_approx(xbar, q, mu, eps);
        });
        if (found)
            return m;
    }
    return std::nullopt;
}

inline Rational linf(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    Rational d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, a[i] > b[i] ? Rational(a[i] - b[i]) : Rational(b[i] - a[i]));
    return d;
}

/** Minimum number of centres from `centres` whose eps-balls cover `pts`. */
inline std::size_t min_cover(const std::vector<std::vector<Rational>>& pts,
                             const std::vector<std::vector<Rational>>& centres, const Rational& eps)
{
    std::vector<std::vector<std::size_t>> covering(pts.size());
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (std::size_t c = 0; c < centres.size(); ++c)
            if (linf(pts[p], centres[c]) <= eps)
                covering[p].push_back(c);
    return min_hitting(centres.size(), covering);
}

/**
 * Minimum cover of pts by eps-balls centred on the lattice (1/den)Z^dim ∩ [0,1]^dim:
 * a group of points fits one ball iff every coordinate window [max p - eps, min p + eps]
 * holds a lattice value; then the fewest groups partitioning the points.
 */
inline std::size_t min_lattice_cover(const std::vector<std::vector<Rational>>& pts, const Rational& eps, long den)
{
    const std::size_t k = pts.size();
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    std::vector<bool> fits(full + 1, false);
    for (std::uint64_t m = 1; m <= full; ++m)
    {
        bool ok = true;
        for (std::size_t i = 0; i < pts.front().size() && ok; ++i)
        {
            Rational lo = 0, hi = 1;
            for (std::size_t p : members(m))
            {
                lo = std::max(lo, Rational(pts[p][i] - eps));
                hi = std::min(hi, Rational(pts[p][i] + eps));
            }
            ok = false;
            for (long j = 0; j <= den && !ok; ++j)
                ok = Rational(j, den) >= lo && Rational(j, den) <= hi;
        }
        fits[m] = ok;
    }
    std::vector<std::size_t> best(full + 1, SIZE_MAX);
    best[0] = 0;
    for (std::uint64_t m = 1; m <= full; ++m)
        for (std::uint64_t sub = m; sub; sub = (sub - 1) & m)
            if (fits[sub] && best[m ^ sub] != SIZE_MAX)
                best[m] = std::min(best[m], best[m ^ sub] + 1);
    return best[full];
}

/** Largest subset of pts pairwise more than 2·eps apart. */
inline std::size_t max_packing(const std::vector<std::vector<Rational>>& pts, const Rational& eps)
{
    std::size_t best = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << pts.size()); ++m)
    {
        const auto idx = members(m);
        bool ok = true;
        for (std::size_t i = 0; i < idx.size() && ok; ++i)
            for (std::size_t j = i + 1; j < idx.size() && ok; ++j)
                ok = linf(pts[idx[i]], pts[idx[j]]) > 2 * eps;
        if (ok)
            best = std::max(best, idx.size());
    }
    return best;
}

inline bool is_net(const std::vector<std::size_t>& a, const FuzzySetSystem& f, const fuzzyvc::DiscreteMeasure& mu,
                   const Rational& eps)
{
    for (const auto& s : f.sets())
    {
        Rational mass = 0;
        for (std::size_t x : s.plus)
            mass += mu[x];
        if (mass < eps)
            continue;
        if (std::all_of(a.begin(), a.end(), [&](std::size_t x) { return contains(s.minus, x); }))
            return false;
    }
    return true;
}

inline bool pq(const std::vector<std::vector<std::size_t>>& sets, std::size_t points, std::size_t p, std::size_t q)
{
    const std::size_t n = sets.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    {
        if (static_cast<std::size_t>(__builtin_popcountll(m)) != p)
            continue;
        bool some = false;
        for (std::uint64_t sub = m; sub && !some; sub = (sub - 1) & m)
        {
            if (static_cast<std::size_t>(__builtin_popcountll(sub)) != q)
                continue;
            for (std::size_t x = 0; x < points && !some; ++x)
            {
                bool all = true;
                for (std::size_t k : members(sub))
                    all = all && contains(sets[k], x);
                some = all;
            }
        }
        if (!some)
            return false;
    }
    return true;
}

}   // namespace oracle
