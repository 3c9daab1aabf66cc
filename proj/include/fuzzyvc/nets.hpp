#pragma once

/**
 * ε-nets for fuzzy set systems and the transversal-via-net construction.
 *
 * A ⊆ X is an ε-net for F with respect to μ when every S with μ(S+) >= ε
 * has A ⊄ S-, i.e. A meets the outer set X \ S-. Finding a small net is
 * therefore a hitting-set problem over the outer sets of the heavy members.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "fuzzyvc/cover_search.hpp"
#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/lp_exact.hpp"
#include "fuzzyvc/random.hpp"
#include "fuzzyvc/width_metrics.hpp"

namespace fuzzyvc {

struct NetCertificate
{
    IndexSet net;
    Rational eps;
    std::size_t checked_sets = 0;
    std::size_t heavy_sets = 0;
    /** Random strategy only: number of sample draws made (1 = first draw succeeded). */
    std::size_t draws = 0;
    /** Random strategy only: sample size per draw. */
    std::size_t sample_size = 0;
};

/** Q^{r,s}: every value clamped into [r, s]. */
inline FunctionClass clamp_class(const FunctionClass& q, const Rational& r, const Rational& s)
{
    if (!(r < s) || r < 0 || s > 1)
        throw DomainError("clamp_class: need 0 <= r < s <= 1");
    std::vector<std::vector<Rational>> rows;
    rows.reserve(q.size());
    for (const auto& row : q.rows())
    {
        std::vector<Rational> out;
        out.reserve(row.size());
        for (const auto& v : row)
            out.push_back(v < r ? r : (v > s ? s : v));
        rows.push_back(std::move(out));
    }
    return FunctionClass(q.point_count(), std::move(rows));
}

/** Indices of the members with μ(S+) >= eps. */
inline std::vector<Index> heavy_sets(const FuzzySetSystem& f, const DiscreteMeasure& mu, const Rational& eps)
{
    if (mu.size() != f.ground_size())
        throw DomainError("net: measure size does not match ground size");
    std::vector<Index> heavy;
    for (std::size_t k = 0; k < f.size(); ++k)
        if (mu.mass(f[k].plus) >= eps)
            heavy.push_back(k);
    return heavy;
}

inline bool is_eps_net(const IndexSet& a, const FuzzySetSystem& f, const DiscreteMeasure& mu, const Rational& eps)
{
    detail::check_index_set(a, f.ground_size(), "net");
    for (Index k : heavy_sets(f, mu, eps))
    {
        const auto& minus = f[k].minus;
        if (std::includes(minus.begin(), minus.end(), a.begin(), a.end()))
            return false;
    }
    return true;
}

namespace detail {

inline NetCertificate certify_net(IndexSet a, const FuzzySetSystem& f, const DiscreteMeasure& mu, const Rational& eps)
{
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (!is_eps_net(a, f, mu, eps))
        throw std::logic_error("net certificate failed replay");
    NetCertificate c;
    c.net = std::move(a);
    c.eps = eps;
    c.checked_sets = f.size();
    c.heavy_sets = heavy_sets(f, mu, eps).size();
    return c;
}

inline std::vector<std::vector<Index>> heavy_outer_sets(const FuzzySetSystem& f, const DiscreteMeasure& mu,
                                                        const Rational& eps)
{
    std::vector<std::vector<Index>> outer;
    for (Index k : heavy_sets(f, mu, eps))
        outer.push_back(complement(f[k].minus, f.ground_size()));
    return outer;
}

}   // namespace detail

/**
 * An ε-net for Q_{r,s} obtained from a δ-approximation of Q^{r,s} with
 * δ = (s - r)·eps/2, which is strictly below the (s - r)·eps threshold that
 * makes every such approximation a net.
 */
inline NetCertificate net_from_approximation(const FunctionClass& q, const DiscreteMeasure& mu, const Rational& r,
                                             const Rational& s, const Rational& eps,
                                             ApproximationStrategy strategy, std::size_t size_cap,
                                             std::uint64_t seed = 0)
{
    if (!(r < s) || r < 0 || s > 1)
        throw DomainError("net_from_approximation: need 0 <= r < s <= 1");
    if (eps <= 0)
        throw DomainError("net_from_approximation: eps must be positive");
    const Rational delta = (s - r) * eps / 2;
    const auto approx = find_eps_approximation(clamp_class(q, r, s), mu, delta, strategy, size_cap, seed);
    return detail::certify_net(IndexSet(approx.begin(), approx.end()), slice(q, r, s), mu, eps);
}

enum class NetMethod { Random, Greedy, ExhaustiveMin };

struct NetStrategy
{
    NetMethod method = NetMethod::Greedy;
    /** Random only: sample size ⌈C·d·eps⁻¹·ln(eps⁻¹ + e)⌉ with d = max(vc(F), 1). */
    double constant = 16.0;
    std::uint64_t seed = 0;
    std::size_t retry_cap = 32;

    static NetStrategy greedy() { return {}; }
    static NetStrategy exhaustive_min() { return {NetMethod::ExhaustiveMin}; }
    static NetStrategy random(double constant, std::uint64_t seed, std::size_t retry_cap = 32)
    {
        return {NetMethod::Random, constant, seed, retry_cap};
    }
};

/** The random strategy's sample size for dimension d (d = 0 is treated as 1). */
inline std::size_t net_sample_size(double constant, std::size_t d, const Rational& eps)
{
    const double e = to_double(eps);
    const double dd = static_cast<double>(std::max<std::size_t>(d, 1));
    return static_cast<std::size_t>(std::ceil(constant * dd / e * std::log(1.0 / e + std::numbers::e)));
}

/**
 * An ε-net for `f` w.r.t. `mu`:
 *  - Random: i.i.d. μ-samples of the size above, fresh deterministic stream
 *    per retry; NotFoundError after `retry_cap` failures.
 *  - Greedy: repeatedly the point outside S- for the most unhit heavy sets.
 *  - ExhaustiveMin: a minimum-size net.
 */
inline NetCertificate find_eps_net(const FuzzySetSystem& f, const DiscreteMeasure& mu, const Rational& eps,
                                   const NetStrategy& strategy)
{
    if (eps <= 0)
        throw DomainError("find_eps_net: eps must be positive");
    const auto outer = detail::heavy_outer_sets(f, mu, eps);
    if (outer.empty())
        return detail::certify_net({}, f, mu, eps);
    switch (strategy.method)
    {
        case NetMethod::Greedy:
            return detail::certify_net(greedy_hitting_set(f.ground_size(), outer), f, mu, eps);
        case NetMethod::ExhaustiveMin:
            return detail::certify_net(minimum_hitting_set(f.ground_size(), outer), f, mu, eps);
        case NetMethod::Random:
        {
            const std::size_t d = vc_dimension(f).value_or(0);
            const std::size_t size = net_sample_size(strategy.constant, d, eps);
            const MeasureSampler sampler(mu);
            for (std::size_t attempt = 0; attempt < strategy.retry_cap; ++attempt)
            {
                Rng rng(strategy.seed, attempt + 1);
                auto draw = sampler.draw_tuple(rng, size);
                IndexSet a(draw.begin(), draw.end());
                std::sort(a.begin(), a.end());
                a.erase(std::unique(a.begin(), a.end()), a.end());
                if (is_eps_net(a, f, mu, eps))
                {
                    auto cert = detail::certify_net(std::move(a), f, mu, eps);
                    cert.draws = attempt + 1;
                    cert.sample_size = size;
                    return cert;
                }
            }
            throw NotFoundError("find_eps_net: no net among " + std::to_string(strategy.retry_cap) + " draws of " +
                                std::to_string(size) + " points (" + std::to_string(outer.size()) + " heavy sets)");
        }
    }
    throw DomainError("find_eps_net: unknown strategy");
}

struct TransversalCertificate
{
    IndexSet transversal;
    /** τ*(F_i) and its optimal weights. */
    Rational tau_star;
    std::vector<Rational> weights;
    /** μ({x}) = weights[x] / tau_star. */
    DiscreteMeasure measure;
    NetCertificate net;
};

/**
 * A transversal of the outer system F_o: solve τ*(F_i) exactly, normalise
 * the optimal weights into μ, and take a (1/τ*)-net of F. Every member has
 * μ(S+) >= 1/τ*, so the net meets every outer set. Throws InfeasibleError
 * if an inner set is empty.
 */
inline TransversalCertificate transversal_via_net(const FuzzySetSystem& f,
                                                  const NetStrategy& strategy = NetStrategy::greedy())
{
    const auto [inner, outer] = inner_outer(f);
    TransversalCertificate cert;
    if (f.empty())
        return cert;
    const auto frac = fractional_transversal(inner);
    cert.tau_star = frac.value;
    cert.weights = frac.weights;
    std::vector<Rational> mu;
    for (const auto& w : frac.weights)
        mu.push_back(w / frac.value);
    cert.measure = DiscreteMeasure(std::move(mu));
    cert.net = find_eps_net(f, cert.measure, 1 / frac.value, strategy);
    cert.transversal = cert.net.net;
    if (!is_transversal(outer, cert.transversal))
        throw std::logic_error("transversal_via_net: net is not a transversal of the outer system");
    return cert;
}

}   // namespace fuzzyvc
