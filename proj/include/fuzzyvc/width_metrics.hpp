#pragma once

/**
 * Rademacher / Gaussian mean widths and complexities, ε-approximations,
 * ℓ∞ covering and packing numbers, and the closed-form bound calculators
 * that relate them.
 *
 * Exact quantities are computed with rationals by enumeration; Monte Carlo
 * quantities are deterministic functions of (seed, samples).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyvc/combinatorics.hpp"
#include "fuzzyvc/cover_search.hpp"
#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/random.hpp"
#include "fuzzyvc/rational.hpp"

namespace fuzzyvc {

/** A finitely supported probability measure on {0, ..., n-1} with exact weights. */
class DiscreteMeasure
{
    public:
        DiscreteMeasure() = default;

        explicit DiscreteMeasure(std::vector<Rational> weights) : weights_(std::move(weights))
        {
            Rational total = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
            {
                if (weights_[i] < 0)
                    throw DomainError("weights[" + std::to_string(i) + "]: negative weight");
                total += weights_[i];
            }
            if (total != 1)
                throw DomainError("weights: sum is " + to_string(total) + ", expected 1");
        }

        static DiscreteMeasure uniform(std::size_t n)
        {
            return DiscreteMeasure(std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
        }

        std::size_t size() const noexcept { return weights_.size(); }
        const std::vector<Rational>& weights() const noexcept { return weights_; }
        const Rational& operator[](std::size_t i) const { return weights_[i]; }

        /** Points of positive weight, ascending. */
        std::vector<Index> support() const
        {
            std::vector<Index> s;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                if (weights_[i] > 0)
                    s.push_back(i);
            return s;
        }

        Rational mass(const IndexSet& set) const
        {
            Rational m = 0;
            for (Index i : set)
                m += weights_.at(i);
            return m;
        }

        Rational expectation(const std::vector<Rational>& values) const
        {
            Rational e = 0;
            for (std::size_t i = 0; i < weights_.size(); ++i)
                if (!weights_[i].is_zero())
                    e += weights_[i] * values.at(i);
            return e;
        }

        friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

    private:
        std::vector<Rational> weights_;
};

/** Draws i.i.d. points from a DiscreteMeasure, exactly when the common denominator fits 64 bits. */
class MeasureSampler
{
    public:
        explicit MeasureSampler(const DiscreteMeasure& mu)
        {
            const BigInt den = common_denominator(mu.weights());
            exact_ = den <= BigInt(std::numeric_limits<std::uint64_t>::max());
            std::uint64_t acc = 0;
            double dacc = 0.0;
            for (std::size_t i = 0; i < mu.size(); ++i)
            {
                if (mu[i].is_zero())
                    continue;
                points_.push_back(i);
                if (exact_)
                {
                    acc += (mu[i] * den).convert_to<BigInt>().convert_to<std::uint64_t>();
                    cumulative_.push_back(acc);
                }
                dacc += to_double(mu[i]);
                cumulative_double_.push_back(dacc);
            }
            total_ = acc;
        }

        Index draw(Rng& rng) const
        {
            if (exact_)
            {
                const std::uint64_t u = rng.below(total_);
                const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
                return points_[static_cast<std::size_t>(it - cumulative_.begin())];
            }
            const double u = rng.uniform() * cumulative_double_.back();
            auto it = std::upper_bound(cumulative_double_.begin(), cumulative_double_.end(), u);
            if (it == cumulative_double_.end())
                --it;
            return points_[static_cast<std::size_t>(it - cumulative_double_.begin())];
        }

        std::vector<Index> draw_tuple(Rng& rng, std::size_t n) const
        {
            std::vector<Index> t(n);
            for (auto& x : t)
                x = draw(rng);
            return t;
        }

    private:
        bool exact_ = true;
        std::vector<Index> points_;
        std::vector<std::uint64_t> cumulative_;
        std::vector<double> cumulative_double_;
        std::uint64_t total_ = 0;
};

// ---------------------------------------------------------------------------
// Mean widths

enum class SignDistribution { Rademacher, Gaussian };

enum class EstimateMode { Exact, MonteCarlo };

struct WidthOptions
{
    EstimateMode mode = EstimateMode::Exact;
    std::size_t samples = 0;
    std::uint64_t seed = 0;

    static WidthOptions exact() { return {}; }
    static WidthOptions monte_carlo(std::size_t samples, std::uint64_t seed)
    {
        return {EstimateMode::MonteCarlo, samples, seed};
    }
};

struct WidthEstimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    EstimateMode mode = EstimateMode::Exact;
    /** Set exactly when mode is Exact. */
    std::optional<Rational> exact;
    /** The supremum was searched over a random subset of tuples only. */
    bool lower_bound = false;
};

inline constexpr std::size_t kMaxExactDimension = 20;
inline constexpr std::size_t kMaxProfileTuples = 200000;

using PointSet = std::vector<std::vector<Rational>>;

namespace detail {

inline std::size_t check_points(const PointSet& points)
{
    if (points.empty())
        throw DomainError("mean_width: point set is empty");
    const std::size_t n = points.front().size();
    for (const auto& p : points)
        if (p.size() != n)
            throw DomainError("mean_width: points have different dimensions");
    return n;
}

/** E over all 2^n sign vectors of max_a σ·a, exactly. */
inline Rational exact_rademacher_width(const PointSet& points)
{
    const std::size_t n = points.front().size();
    if (n > kMaxExactDimension)
        throw CapacityError("mean_width: exact Rademacher width limited to dimension " +
                            std::to_string(kMaxExactDimension));
    std::vector<Rational> all;
    for (const auto& p : points)
        all.insert(all.end(), p.begin(), p.end());
    const BigInt den = common_denominator(all);
    // Scale to integers; the fast path needs |coordinate| * n well inside 64 bits.
    std::vector<std::vector<std::int64_t>> scaled;
    bool fits = true;
    const BigInt limit = BigInt(1) << 40;
    for (const auto& p : points)
    {
        std::vector<std::int64_t> row;
        for (const auto& v : p)
        {
            const BigInt s = (v * den).convert_to<BigInt>();
            if (s > limit || s < -limit)
                fits = false;
            row.push_back(fits ? s.convert_to<std::int64_t>() : 0);
        }
        scaled.push_back(std::move(row));
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    if (fits)
    {
        __int128 sum = 0;
        for (std::uint64_t mask = 0; mask < total; ++mask)
        {
            std::int64_t best = std::numeric_limits<std::int64_t>::min();
            for (const auto& a : scaled)
            {
                std::int64_t dotp = 0;
                for (std::size_t i = 0; i < n; ++i)
                    dotp += (mask >> i & 1) ? a[i] : -a[i];
                best = std::max(best, dotp);
            }
            sum += best;
        }
        const bool negative = sum < 0;
        unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-sum) : static_cast<unsigned __int128>(sum);
        BigInt big = static_cast<std::uint64_t>(mag >> 64);
        big <<= 64;
        big += static_cast<std::uint64_t>(mag);
        if (negative)
            big = -big;
        return Rational(big, BigInt(total) * den);
    }
    Rational sum = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask)
    {
        std::optional<Rational> best;
        for (const auto& a : points)
        {
            Rational dotp = 0;
            for (std::size_t i = 0; i < n; ++i)
                dotp += (mask >> i & 1) ? a[i] : Rational(-a[i]);
            if (!best || dotp > *best)
                best = dotp;
        }
        sum += *best;
    }
    return sum / Rational(BigInt(total));
}

inline std::vector<std::vector<double>> to_doubles(const PointSet& points)
{
    std::vector<std::vector<double>> out;
    for (const auto& p : points)
    {
        std::vector<double> row;
        for (const auto& v : p)
            row.push_back(to_double(v));
        out.push_back(std::move(row));
    }
    return out;
}

struct RunningMean
{
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;

    void add(double x)
    {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    double std_error() const
    {
        if (count < 2)
            return 0.0;
        return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
    }
};

inline void draw_signs(Rng& rng, SignDistribution dist, std::vector<double>& sigma)
{
    for (auto& s : sigma)
        s = dist == SignDistribution::Rademacher ? static_cast<double>(rng.sign()) : rng.normal();
}

inline double sup_dot(const std::vector<std::vector<double>>& points, const std::vector<double>& sigma)
{
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : points)
    {
        double d = 0.0;
        for (std::size_t i = 0; i < sigma.size(); ++i)
            d += sigma[i] * a[i];
        best = std::max(best, d);
    }
    return best;
}

inline WidthEstimate monte_carlo_width(const PointSet& points, SignDistribution dist, const WidthOptions& opt)
{
    if (opt.samples == 0)
        throw DomainError("mean_width: Monte Carlo mode needs samples >= 1");
    const auto pts = to_doubles(points);
    Rng rng(opt.seed);
    std::vector<double> sigma(points.front().size());
    RunningMean acc;
    for (std::size_t k = 0; k < opt.samples; ++k)
    {
        draw_signs(rng, dist, sigma);
        acc.add(sup_dot(pts, sigma));
    }
    WidthEstimate w;
    w.value = acc.mean;
    w.std_error = acc.std_error();
    w.samples = opt.samples;
    w.seed = opt.seed;
    w.mode = EstimateMode::MonteCarlo;
    return w;
}

inline WidthEstimate exact_estimate(const Rational& value)
{
    WidthEstimate w;
    w.value = to_double(value);
    w.mode = EstimateMode::Exact;
    w.exact = value;
    return w;
}

}   // namespace detail

/** w(A, σ) = E_σ[sup_{a in A} σ·a]. Exact mode supports Rademacher signs up to dimension 20. */
inline WidthEstimate mean_width(const PointSet& points, SignDistribution dist, const WidthOptions& opt)
{
    detail::check_points(points);
    if (opt.mode == EstimateMode::Exact)
    {
        if (dist == SignDistribution::Gaussian)
            throw UnsupportedError("mean_width: Gaussian widths have no exact mode");
        return detail::exact_estimate(detail::exact_rademacher_width(points));
    }
    return detail::monte_carlo_width(points, dist, opt);
}

/**
 * Without a measure: r_Q(n) (or g_Q(n)) = sup over x̄ in X^n of w(Q(x̄)).
 * Coordinate order does not change the width (permuting coordinates
 * permutes sign vectors), so the supremum runs over column multisets.
 * Monte Carlo mode evaluates every multiset with common random signs when
 * there are at most kMaxProfileTuples of them, and a seeded random subset
 * otherwise (flagged as a lower bound).
 *
 * With a measure: (1/n) E_{μ^n}[w(Q(x̄))]; exact by weighted enumeration of
 * support multisets, or joint Monte Carlo over (x̄, σ).
 */
inline WidthEstimate width_profile(const FunctionClass& q, std::size_t n, SignDistribution dist,
                                   const std::optional<DiscreteMeasure>& mu, const WidthOptions& opt)
{
    if (n == 0)
        throw DomainError("width_profile: n must be at least 1");
    if (q.size() == 0)
        throw DomainError("width_profile: function class is empty");
    if (opt.mode == EstimateMode::Exact && dist == SignDistribution::Gaussian)
        throw UnsupportedError("width_profile: Gaussian widths have no exact mode");
    if (opt.mode == EstimateMode::Exact && n > kMaxExactDimension)
        throw CapacityError("width_profile: exact mode limited to n <= " + std::to_string(kMaxExactDimension));
    if (mu && mu->size() != q.point_count())
        throw DomainError("width_profile: measure size does not match point count");

    const std::vector<Index> columns = [&] {
        if (mu)
            return mu->support();
        std::vector<Index> all(q.point_count());
        for (Index i = 0; i < all.size(); ++i)
            all[i] = i;
        return all;
    }();
    if (columns.empty())
        throw DomainError("width_profile: no points to evaluate");
    const BigInt tuple_count = binomial(columns.size() + n - 1, n);
    auto select = [&](const std::vector<Index>& multiset) {
        std::vector<Index> xbar;
        for (Index k : multiset)
            xbar.push_back(columns[k]);
        return xbar;
    };

    if (!mu)
    {
        if (opt.mode == EstimateMode::Exact)
        {
            if (tuple_count > kMaxProfileTuples)
                throw CapacityError("width_profile: too many column multisets for exact mode");
            Rational best = 0;
            bool first = true;
            for_each_multiset(columns.size(), n, [&](const std::vector<Index>& ms) {
                const Rational w = detail::exact_rademacher_width(q.evaluate(select(ms)));
                if (first || w > best)
                    best = w;
                first = false;
                return true;
            });
            return detail::exact_estimate(best);
        }
        WidthEstimate best;
        bool first = true;
        auto consider = [&](const std::vector<Index>& xbar) {
            auto w = detail::monte_carlo_width(q.evaluate(xbar), dist, opt);
            if (first || w.value > best.value)
                best = w;
            first = false;
        };
        if (tuple_count <= kMaxProfileTuples)
            for_each_multiset(columns.size(), n, [&](const std::vector<Index>& ms) {
                consider(select(ms));
                return true;
            });
        else
        {
            Rng rng(opt.seed, 1);
            for (std::size_t k = 0; k < 256; ++k)
            {
                std::vector<Index> xbar(n);
                for (auto& x : xbar)
                    x = columns[rng.below(columns.size())];
                consider(xbar);
            }
            best.lower_bound = true;
        }
        return best;
    }

    if (opt.mode == EstimateMode::Exact)
    {
        if (tuple_count > kMaxProfileTuples)
            throw CapacityError("width_profile: too many support multisets for exact mode");
        Rational total = 0;
        for_each_multiset(columns.size(), n, [&](const std::vector<Index>& ms) {
            const auto xbar = select(ms);
            Rational prob = Rational(orderings_of(ms));
            for (Index x : xbar)
                prob *= (*mu)[x];
            total += prob * detail::exact_rademacher_width(q.evaluate(xbar));
            return true;
        });
        return detail::exact_estimate(total / Rational(static_cast<long>(n)));
    }

    if (opt.samples == 0)
        throw DomainError("width_profile: Monte Carlo mode needs samples >= 1");
    const MeasureSampler sampler(*mu);
    Rng rng(opt.seed);
    std::vector<double> sigma(n);
    detail::RunningMean acc;
    for (std::size_t k = 0; k < opt.samples; ++k)
    {
        const auto pts = detail::to_doubles(q.evaluate(sampler.draw_tuple(rng, n)));
        detail::draw_signs(rng, dist, sigma);
        acc.add(detail::sup_dot(pts, sigma) / static_cast<double>(n));
    }
    WidthEstimate w;
    w.value = acc.mean;
    w.std_error = acc.std_error();
    w.samples = opt.samples;
    w.seed = opt.seed;
    w.mode = EstimateMode::MonteCarlo;
    return w;
}

// ---------------------------------------------------------------------------
// ε-approximations

/** Av(x̄; q) = (1/n) sum q(x_i). */
inline Rational average_over(const std::vector<Index>& xbar, const std::vector<Rational>& row)
{
    Rational s = 0;
    for (Index x : xbar)
        s += row.at(x);
    return s / Rational(static_cast<long>(xbar.size()));
}

/** max over rows of |Av(x̄; q) - E_μ[q]| (0 for an empty class). */
inline Rational max_deviation(const std::vector<Index>& xbar, const FunctionClass& q, const DiscreteMeasure& mu)
{
    if (xbar.empty())
        throw DomainError("approximation: tuple is empty");
    if (mu.size() != q.point_count())
        throw DomainError("approximation: measure size does not match point count");
    Rational worst = 0;
    for (const auto& row : q.rows())
        worst = std::max(worst, abs_of(average_over(xbar, row) - mu.expectation(row)));
    return worst;
}

inline bool is_eps_approximation(const std::vector<Index>& xbar, const FunctionClass& q, const DiscreteMeasure& mu,
                                 const Rational& eps)
{
    return max_deviation(xbar, q, mu) <= eps;
}

enum class ApproximationStrategy { Random, ExhaustiveMin };

inline constexpr std::size_t kMaxApproximationTuples = 2000000;

/**
 * A verified ε-approximation drawn from the support of μ.
 *  - Random: for sizes 1..size_cap, `attempts` i.i.d. μ-samples per size.
 *  - ExhaustiveMin: the smallest size admitting one; the first support
 *    multiset of that size in lexicographic order.
 * Throws NotFoundError (carrying the best deviation reached) when none is found.
 */
inline std::vector<Index> find_eps_approximation(const FunctionClass& q, const DiscreteMeasure& mu,
                                                 const Rational& eps, ApproximationStrategy strategy,
                                                 std::size_t size_cap, std::uint64_t seed = 0,
                                                 std::size_t attempts = 4)
{
    if (eps <= 0)
        throw DomainError("find_eps_approximation: eps must be positive");
    if (mu.size() != q.point_count())
        throw DomainError("find_eps_approximation: measure size does not match point count");
    const auto support = mu.support();
    std::optional<Rational> best;
    if (strategy == ApproximationStrategy::ExhaustiveMin)
    {
        for (std::size_t m = 1; m <= size_cap; ++m)
        {
            if (binomial(support.size() + m - 1, m) > kMaxApproximationTuples)
                throw CapacityError("find_eps_approximation: tuple enumeration too large at size " +
                                    std::to_string(m));
            std::vector<Index> found;
            for_each_multiset(support.size(), m, [&](const std::vector<Index>& ms) {
                std::vector<Index> xbar;
                for (Index k : ms)
                    xbar.push_back(support[k]);
                const Rational dev = max_deviation(xbar, q, mu);
                if (!best || dev < *best)
                    best = dev;
                if (dev <= eps)
                {
                    found = std::move(xbar);
                    return false;
                }
                return true;
            });
            if (!found.empty())
                return found;
        }
    }
    else
    {
        const MeasureSampler sampler(mu);
        Rng rng(seed);
        for (std::size_t m = 1; m <= size_cap; ++m)
            for (std::size_t a = 0; a < attempts; ++a)
            {
                auto xbar = sampler.draw_tuple(rng, m);
                const Rational dev = max_deviation(xbar, q, mu);
                if (!best || dev < *best)
                    best = dev;
                if (dev <= eps)
                    return xbar;
            }
    }
    throw NotFoundError("find_eps_approximation: no approximation within size cap " + std::to_string(size_cap),
                        best ? to_double(*best) : -1.0);
}

// ---------------------------------------------------------------------------
// Covering and packing numbers

enum class CoverMethod { Internal, Grid, Packing };

inline constexpr std::size_t kMaxGridDimension = 4;

namespace detail {

inline Rational linf_distance(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    Rational d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, abs_of(a[i] - b[i]));
    return d;
}

inline PointSet distinct_points(PointSet pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}   // namespace detail

/**
 * ℓ∞ covering / packing numbers of Q(x̄) at scale eps.
 *  - Internal: minimum cover with centres among the points of Q(x̄).
 *  - Grid: minimum cover with centres on the lattice step·Z^k ∩ [0,1]^k
 *    (k = |x̄| <= 4, 1/step a positive integer).
 *  - Packing: maximum number of points pairwise more than 2·eps apart.
 * All exact. Packing <= external cover <= Internal, and external <= Grid.
 */
inline std::size_t covering_number(const FunctionClass& q, const std::vector<Index>& xbar, const Rational& eps,
                                   CoverMethod method, const Rational& step = Rational(0))
{
    if (eps <= 0)
        throw DomainError("covering_number: eps must be positive");
    const PointSet pts = detail::distinct_points(q.evaluate(xbar));
    if (pts.empty())
        return 0;
    switch (method)
    {
        case CoverMethod::Internal:
        {
            std::vector<std::vector<Index>> sets(pts.size());
            for (std::size_t p = 0; p < pts.size(); ++p)
                for (std::size_t c = 0; c < pts.size(); ++c)
                    if (detail::linf_distance(pts[p], pts[c]) <= eps)
                        sets[p].push_back(c);
            return minimum_hitting_set(pts.size(), sets).size();
        }
        case CoverMethod::Packing:
        {
            const Rational sep = 2 * eps;
            std::vector<Bits> adj(pts.size(), Bits(pts.size()));
            for (std::size_t a = 0; a < pts.size(); ++a)
                for (std::size_t b = a + 1; b < pts.size(); ++b)
                    if (detail::linf_distance(pts[a], pts[b]) <= sep)
                    {
                        adj[a].set(b);
                        adj[b].set(a);
                    }
            return maximum_independent_set(adj).size();
        }
        case CoverMethod::Grid:
        {
            if (xbar.size() > kMaxGridDimension)
                throw CapacityError("covering_number(grid): dimension " + std::to_string(xbar.size()) +
                                    " exceeds " + std::to_string(kMaxGridDimension));
            if (step <= 0 || boost::multiprecision::numerator(step) != 1)
                throw DomainError("covering_number(grid): step must be 1/k for a positive integer k");
            const long k = boost::multiprecision::denominator(step).convert_to<long>();
            // Per-coordinate lattice values within eps of some point, then all products.
            std::vector<std::vector<Rational>> axis(xbar.size());
            for (std::size_t i = 0; i < xbar.size(); ++i)
            {
                for (long j = 0; j <= k; ++j)
                {
                    const Rational g(j, k);
                    if (std::any_of(pts.begin(), pts.end(),
                                    [&](const auto& p) { return abs_of(p[i] - g) <= eps; }))
                        axis[i].push_back(g);
                }
            }
            PointSet centers{{}};
            for (const auto& values : axis)
            {
                PointSet next;
                for (const auto& c : centers)
                    for (const auto& v : values)
                    {
                        auto e = c;
                        e.push_back(v);
                        next.push_back(std::move(e));
                    }
                centers = std::move(next);
            }
            std::vector<std::vector<Index>> sets(pts.size());
            for (std::size_t p = 0; p < pts.size(); ++p)
            {
                for (std::size_t c = 0; c < centers.size(); ++c)
                    if (detail::linf_distance(pts[p], centers[c]) <= eps)
                        sets[p].push_back(c);
                if (sets[p].empty())
                    throw DomainError("covering_number(grid): no lattice point within eps of a data point");
            }
            return minimum_hitting_set(centers.size(), sets).size();
        }
    }
    throw DomainError("covering_number: unknown method");
}

// ---------------------------------------------------------------------------
// Bound calculators (natural logarithms throughout)

/** 2 (4n/eps^2)^{d ln(2en/(d eps))}: covering-number bound given fat-shattering dimension d. */
inline double covering_bound(std::size_t d, std::size_t n, double eps)
{
    if (d < 1 || n < 1 || !(eps > 0.0 && eps <= 1.0))
        throw DomainError("covering_bound: need d >= 1, n >= 1, 0 < eps <= 1");
    const double dd = static_cast<double>(d), nn = static_cast<double>(n);
    const double exponent = dd * std::log(2.0 * std::numbers::e * nn / (dd * eps));
    return 2.0 * std::pow(4.0 * nn / (eps * eps), exponent);
}

/** 12 n N exp(-eps^2 n / 36), valid for n >= 2/eps^2. */
inline double deviation_bound(std::size_t n, double eps, double ncov)
{
    if (!(eps > 0.0))
        throw DomainError("deviation_bound: eps must be positive");
    const double nn = static_cast<double>(n);
    if (nn < 2.0 / (eps * eps))
        throw DomainError("deviation_bound: requires n >= 2/eps^2");
    return 12.0 * nn * ncov * std::exp(-eps * eps * nn / 36.0);
}

/**
 * Sample size (constant / eps^2) (d ln^2(d/eps) + ln(1/delta)). The constant
 * is unknown in general and must be supplied by the caller.
 */
inline double approximation_sample_size(double eps, double delta, std::size_t d, double constant)
{
    if (!(eps > 0.0) || !(delta > 0.0 && delta < 1.0))
        throw DomainError("approximation_sample_size: need eps > 0 and 0 < delta < 1");
    const double dd = static_cast<double>(d);
    const double log_term = d == 0 ? 0.0 : std::log(dd / eps);
    return constant / (eps * eps) * (dd * log_term * log_term + std::log(1.0 / delta));
}

struct DeviationEstimate
{
    double probability = 0.0;
    /** Binomial standard error sqrt(p(1-p)/trials). */
    double std_error = 0.0;
    std::size_t trials = 0;
    std::size_t exceedances = 0;
};

/**
 * Monte Carlo estimate of P[sup_q (Av(x̄, q) - E_μ[q]) > eps] for x̄ ~ μ^n.
 * Each trial is evaluated exactly; the result depends only on the arguments.
 */
inline DeviationEstimate deviation_estimate(const FunctionClass& q, const DiscreteMeasure& mu, std::size_t n,
                                            const Rational& eps, std::size_t trials, std::uint64_t seed)
{
    if (trials == 0)
        throw DomainError("deviation_estimate: trials must be at least 1");
    if (n == 0)
        throw DomainError("deviation_estimate: n must be at least 1");
    if (mu.size() != q.point_count())
        throw DomainError("deviation_estimate: measure size does not match point count");
    // sum q(x_i) > n (E[q] + eps), compared exactly.
    std::vector<Rational> thresholds;
    for (const auto& row : q.rows())
        thresholds.push_back(Rational(static_cast<long>(n)) * (mu.expectation(row) + eps));
    const MeasureSampler sampler(mu);
    Rng rng(seed);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t)
    {
        const auto xbar = sampler.draw_tuple(rng, n);
        for (std::size_t k = 0; k < q.size(); ++k)
        {
            Rational s = 0;
            for (Index x : xbar)
                s += q[k][x];
            if (s > thresholds[k])
            {
                ++hits;
                break;
            }
        }
    }
    DeviationEstimate e;
    e.trials = trials;
    e.exceedances = hits;
    e.probability = static_cast<double>(hits) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.probability * (1.0 - e.probability) / static_cast<double>(trials));
    return e;
}

}   // namespace fuzzyvc
