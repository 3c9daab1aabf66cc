#pragma once

/**
 * Fractional Helly witnesses for fuzzy relations and the (p,q) pipeline for
 * function classes, each returning a certificate that can be replayed.
 */

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyvc/combinatorics.hpp"
#include "fuzzyvc/cover_search.hpp"
#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/lp_exact.hpp"
#include "fuzzyvc/nets.hpp"

namespace fuzzyvc {

namespace detail {

inline std::vector<Bits> as_bits(const std::vector<IndexSet>& sets, std::size_t ground)
{
    std::vector<Bits> out(sets.size(), Bits(ground));
    for (std::size_t k = 0; k < sets.size(); ++k)
        for (Index x : sets[k])
            out[k].set(x);
    return out;
}

/** Does some q-subset of `members` have a common point? Depth-first with intersection pruning. */
inline bool has_intersecting_subset(const std::vector<Bits>& sets, const std::vector<Index>& members, std::size_t q,
                                    std::size_t start, const Bits& common, std::size_t chosen)
{
    if (chosen == q)
        return true;
    for (std::size_t i = start; i + (q - chosen) <= members.size(); ++i)
    {
        Bits next = common & sets[members[i]];
        if (next.none())
            continue;
        if (has_intersecting_subset(sets, members, q, i + 1, next, chosen + 1))
            return true;
    }
    return false;
}

}   // namespace detail

/**
 * The (p,q) property: every p members (by position) include q members with
 * a common point. Exhaustive over all p-subfamilies. Requires p >= q >= 1 and
 * at least p members.
 */
inline bool has_pq_property(const SetSystem& s, std::size_t p, std::size_t q)
{
    if (q < 1 || p < q)
        throw DomainError("has_pq_property: need p >= q >= 1");
    if (s.size() < p)
        throw DomainError("has_pq_property: family has " + std::to_string(s.size()) + " members, fewer than p = " +
                          std::to_string(p));
    const auto sets = detail::as_bits(s.sets(), s.ground_size());
    Bits everything(s.ground_size());
    everything.set();
    return for_each_combination(s.size(), p, [&](const std::vector<Index>& members) {
        return detail::has_intersecting_subset(sets, members, q, 0, everything, 0);
    });
}

/** p' = p(d - 1) + 1. */
inline std::size_t p_prime(std::size_t p, std::size_t d)
{
    if (p < 1 || d < 1)
        throw DomainError("p_prime: need p >= 1 and d >= 1");
    return p * (d - 1) + 1;
}

struct HellyParameters
{
    std::size_t m = 0;
    Rational beta;
};

inline constexpr std::size_t kDefaultHellyMmax = 32;

/** The smallest m in [k, m_max] with dual_shatter(m) < (alpha/4)·C(m,k), and beta = 1/(2m). */
inline std::optional<HellyParameters> helly_parameters(const std::function<std::size_t(std::size_t)>& dual_shatter,
                                                       std::size_t k, const Rational& alpha,
                                                       std::size_t m_max = kDefaultHellyMmax)
{
    if (k < 1)
        throw DomainError("helly_parameters: k must be at least 1");
    if (alpha <= 0 || alpha > 1)
        throw DomainError("helly_parameters: alpha must lie in (0, 1]");
    for (std::size_t m = k; m <= m_max; ++m)
        if (Rational(static_cast<long>(dual_shatter(m))) < alpha / 4 * Rational(binomial(m, k)))
            return HellyParameters{m, Rational(1, static_cast<long>(2 * m))};
    return std::nullopt;
}

struct HellyCertificate
{
    std::size_t k = 0;
    Rational alpha;
    std::size_t m = 0;
    Rational beta;
    std::size_t n = 0;
    /** Fraction of k-subsets of columns whose plus parts share a point. */
    Rational good_fraction;
    /** Columns whose minus part avoids the witness. */
    IndexSet J;
    Index witness = 0;
};

namespace detail {

inline std::vector<Bits> plus_columns(const FuzzyRelation& rel)
{
    std::vector<Bits> cols(rel.y_size(), Bits(rel.x_size()));
    for (std::size_t x = 0; x < rel.x_size(); ++x)
        for (std::size_t y = 0; y < rel.y_size(); ++y)
            if (rel.at(x, y) == Membership::Plus)
                cols[y].set(x);
    return cols;
}

inline BigInt count_intersecting(const std::vector<Bits>& sets, std::size_t k, std::size_t ground)
{
    BigInt count = 0;
    // Depth-first over increasing indices; a branch dies once its intersection is empty.
    std::function<void(std::size_t, const Bits&, std::size_t)> walk = [&](std::size_t start, const Bits& common,
                                                                          std::size_t depth) {
        if (depth == k)
        {
            ++count;
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= sets.size(); ++i)
        {
            Bits next = common & sets[i];
            if (next.any())
                walk(i + 1, next, depth + 1);
        }
    };
    Bits all(ground);
    all.set();
    walk(0, all, 0);
    return count;
}

}   // namespace detail

/** π_{R_X}(m) for the relation's row system, with 0 when m exceeds the number of columns. */
inline std::function<std::size_t(std::size_t)> dual_shatter_oracle(const FuzzyRelation& rel)
{
    auto rows = std::make_shared<FuzzySetSystem>(rel.row_system());
    auto memo = std::make_shared<std::map<std::size_t, std::size_t>>();
    return [rows, memo](std::size_t m) -> std::size_t {
        if (m > rows->ground_size())
            return 0;
        auto it = memo->find(m);
        if (it != memo->end())
            return it->second;
        const std::size_t v = shatter_function(*rows, m);
        memo->emplace(m, v);
        return v;
    };
}

/**
 * Fractional Helly witness over the columns b_1..b_n of `rel`:
 *  1. the fraction of k-subsets of columns with intersecting plus parts must
 *     be at least alpha (HypothesisError otherwise);
 *  2. (m, beta) come from helly_parameters on the exact dual shatter function
 *     (NotFoundError if no m <= m_max qualifies);
 *  3. the witness is the smallest-index point outside the most minus parts,
 *     and J collects those columns; |J| >= ⌈beta·n⌉ is required.
 */
inline HellyCertificate fractional_helly_witness(const FuzzyRelation& rel, std::size_t k, const Rational& alpha,
                                                 std::size_t m_max = kDefaultHellyMmax)
{
    const std::size_t n = rel.y_size();
    if (k < 1 || k > n)
        throw DomainError("fractional_helly_witness: need 1 <= k <= number of columns");
    if (alpha <= 0 || alpha > 1)
        throw DomainError("fractional_helly_witness: alpha must lie in (0, 1]");
    if (rel.x_size() == 0)
        throw DomainError("fractional_helly_witness: relation has no points");
    HellyCertificate cert;
    cert.k = k;
    cert.alpha = alpha;
    cert.n = n;
    const BigInt good = detail::count_intersecting(detail::plus_columns(rel), k, rel.x_size());
    cert.good_fraction = Rational(good, binomial(n, k));
    if (cert.good_fraction < alpha)
        throw HypothesisError("fractional_helly_witness: only " + to_string(cert.good_fraction) +
                              " of the k-subsets intersect, below alpha = " + to_string(alpha));
    const auto params = helly_parameters(dual_shatter_oracle(rel), k, alpha, m_max);
    if (!params)
        throw NotFoundError("fractional_helly_witness: no m <= " + std::to_string(m_max) +
                            " satisfies the dual shatter condition");
    cert.m = params->m;
    cert.beta = params->beta;
    std::size_t best = 0;
    for (std::size_t x = 0; x < rel.x_size(); ++x)
    {
        std::size_t avoid = 0;
        for (std::size_t y = 0; y < n; ++y)
            if (rel.at(x, y) != Membership::Minus)
                ++avoid;
        if (avoid > best || x == 0)
        {
            best = avoid;
            cert.witness = x;
        }
    }
    for (std::size_t y = 0; y < n; ++y)
        if (rel.at(cert.witness, y) != Membership::Minus)
            cert.J.push_back(y);
    if (BigInt(cert.J.size()) < ceil_of(cert.beta * Rational(static_cast<long>(n))))
        throw NotFoundError("fractional_helly_witness: best point avoids only " + std::to_string(cert.J.size()) +
                            " minus parts");
    return cert;
}

/** Replays a certificate against its relation: counts, parameters, witness and bound. */
inline bool verify_helly_certificate(const FuzzyRelation& rel, const HellyCertificate& c)
{
    if (c.n != rel.y_size() || c.witness >= rel.x_size() || c.m == 0)
        return false;
    if (c.beta != Rational(1, static_cast<long>(2 * c.m)))
        return false;
    const BigInt good = detail::count_intersecting(detail::plus_columns(rel), c.k, rel.x_size());
    if (Rational(good, binomial(c.n, c.k)) != c.good_fraction || c.good_fraction < c.alpha)
        return false;
    for (Index j : c.J)
        if (j >= c.n || rel.at(c.witness, j) == Membership::Minus)
            return false;
    return BigInt(c.J.size()) >= ceil_of(c.beta * Rational(static_cast<long>(c.n)));
}

// ---------------------------------------------------------------------------
// (p,q) pipeline

enum class StageStatus { Verified, Refuted, Skipped };

inline const char* to_string(StageStatus s)
{
    switch (s)
    {
        case StageStatus::Verified: return "verified";
        case StageStatus::Refuted: return "refuted";
        case StageStatus::Skipped: return "skipped";
    }
    return "?";
}

struct StageRecord
{
    std::string name;
    StageStatus status = StageStatus::Verified;
    std::string detail;

    friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

struct PqCertificate
{
    std::size_t p = 0;
    std::size_t q = 0;
    /** vc*(Q_{r,t}), with the empty family counted as 0. */
    std::size_t d = 0;
    /** vc(Q_{t,s}); reported only. */
    std::size_t d2 = 0;
    /** p(d-1)+1, or absent when d = 0. */
    std::optional<std::size_t> p_prime;
    /** Optimal fractional packing f of Q_{<t} and its value ν* = τ*(Q_{<t}). */
    std::vector<Rational> packing;
    Rational tau_star_outer;
    /** τ*(Q_{<=t}) <= τ*(Q_{<t}). */
    Rational tau_star_inner_t;
    BigInt denominator = 1;
    std::vector<BigInt> multiplicities;
    BigInt expanded_size = 0;
    /** Point outside S- for the most expanded pairs, and that count. */
    Index heavy_point = 0;
    BigInt heavy_count = 0;
    /** Intersecting (d+1)-subsets of the expanded inner family, when counted. */
    std::optional<BigInt> intersecting_tuples;
    /** C(N,p) / C(N-d+1, p-d+1) with N the expanded size; reported, never asserted. */
    std::optional<Rational> intersecting_bound;
    std::vector<StageRecord> stages;
};

struct PqResult
{
    IndexSet transversal;
    PqCertificate certificate;
    TransversalCertificate net;
};

struct PqOptions
{
    NetStrategy net = NetStrategy::greedy();
    /** Exhaustive checks on the expanded family are skipped above this many subsets. */
    std::size_t enumeration_budget = 200000;
    /** The expanded family is not materialised beyond this many members. */
    std::size_t expansion_cap = 4096;
};

namespace detail {

inline std::vector<IndexSet> expanded_inner(const SetSystem& inner, const std::vector<BigInt>& mult)
{
    std::vector<IndexSet> out;
    for (std::size_t k = 0; k < inner.size(); ++k)
        for (BigInt i = 0; i < mult[k]; ++i)
            out.push_back(inner[k]);
    return out;
}

}   // namespace detail

/**
 * Runs the (p,q) chain on a finite function class with thresholds
 * r < t < s: check the guards (q >= vc*(Q_{r,t}) + 1, (p,q) property of
 * Q_{<=r}); solve τ*(Q_{<t}) = ν*(Q_{<t}) exactly and expand the optimal
 * packing into integer multiplicities; locate the heavy point; then build a
 * transversal of Q_{<s} from a net of Q_{t,s}. Every step is recorded.
 */
inline PqResult pq_pipeline(const FunctionClass& q, const Rational& r, const Rational& t, const Rational& s,
                            std::size_t p, std::size_t qq, const PqOptions& options = {})
{
    if (!(r >= 0 && r < t && t < s && s <= 1))
        throw DomainError("pq_pipeline[thresholds]: need 0 <= r < t < s <= 1");
    if (qq < 1 || p < qq)
        throw DomainError("pq_pipeline[thresholds]: need p >= q >= 1");
    PqResult result;
    auto& cert = result.certificate;
    cert.p = p;
    cert.q = qq;
    cert.stages.push_back({"thresholds", StageStatus::Verified,
                           "r=" + to_string(r) + " t=" + to_string(t) + " s=" + to_string(s)});

    const FuzzySetSystem lower = slice(q, r, t);
    cert.d = vc_dimension(dual_system(lower)).value_or(0);
    if (qq < cert.d + 1)
        throw DomainError("pq_pipeline[dual-vc]: q = " + std::to_string(qq) + " but vc*(Q_{r,t}) = " +
                          std::to_string(cert.d));
    cert.stages.push_back({"dual-vc", StageStatus::Verified, "vc*=" + std::to_string(cert.d)});

    const SetSystem inner_r = slice_inner(q, r);
    if (!has_pq_property(inner_r, p, qq))
        throw DomainError("pq_pipeline[pq-property]: Q_{<=r} lacks the (p,q) property");
    cert.stages.push_back({"pq-property", StageStatus::Verified, "Q_{<=r} has (p,q)"});

    const SetSystem outer_t = slice_outer(q, t);
    const auto packing = fractional_packing(outer_t);
    const auto cover = fractional_transversal(outer_t);
    if (packing.value != cover.value)
        throw std::logic_error("pq_pipeline: LP duality failed");
    cert.packing = packing.weights;
    cert.tau_star_outer = packing.value;
    cert.stages.push_back({"fractional-packing", StageStatus::Verified, "nu*=tau*=" + to_string(packing.value)});

    cert.denominator = common_denominator(cert.packing);
    BigInt total = 0;
    for (const auto& f : cert.packing)
    {
        const Rational m = f * Rational(cert.denominator);
        if (boost::multiprecision::denominator(m) != 1)
            throw std::logic_error("pq_pipeline: non-integral multiplicity");
        cert.multiplicities.push_back(boost::multiprecision::numerator(m));
        total += cert.multiplicities.back();
    }
    cert.expanded_size = total;
    if (Rational(total) != Rational(cert.denominator) * cert.tau_star_outer)
        throw std::logic_error("pq_pipeline: multiplicities do not sum to D*nu*");
    cert.stages.push_back({"multiplicities", StageStatus::Verified,
                           "D=" + cert.denominator.str() + " N=" + total.str()});

    const bool materialise = total <= options.expansion_cap;
    const auto expanded =
        materialise ? detail::expanded_inner(inner_r, cert.multiplicities) : std::vector<IndexSet>{};
    if (!materialise)
        cert.stages.push_back({"expanded-pq", StageStatus::Skipped, "expanded family too large"});
    else if (cert.d >= 1)
    {
        cert.p_prime = p_prime(p, cert.d);
        const std::size_t pp = *cert.p_prime;
        if (pp < qq || expanded.size() < pp)
            cert.stages.push_back({"expanded-pq", StageStatus::Skipped,
                                   "p'=" + std::to_string(pp) + " not applicable"});
        else if (binomial(expanded.size(), pp) > options.enumeration_budget)
            cert.stages.push_back({"expanded-pq", StageStatus::Skipped, "p'=" + std::to_string(pp) + " over budget"});
        else
        {
            const bool holds = has_pq_property(SetSystem(q.point_count(), expanded), pp, qq);
            cert.stages.push_back({"expanded-pq", holds ? StageStatus::Verified : StageStatus::Refuted,
                                   "p'=" + std::to_string(pp)});
        }
    }
    else
        cert.stages.push_back({"expanded-pq", StageStatus::Skipped, "d=0"});

    if (materialise && expanded.size() >= p && expanded.size() + 1 >= cert.d && p + 1 >= cert.d)
    {
        const BigInt below = binomial(expanded.size() + 1 - cert.d, p + 1 - cert.d);
        if (below != 0)
            cert.intersecting_bound = Rational(binomial(expanded.size(), p), below);
    }
    const std::size_t kk = cert.d + 1;
    if (materialise && expanded.size() >= kk && binomial(expanded.size(), kk) <= options.enumeration_budget)
    {
        const auto bits = detail::as_bits(expanded, q.point_count());
        cert.intersecting_tuples = detail::count_intersecting(bits, kk, q.point_count());
        cert.stages.push_back({"helly-count", StageStatus::Verified,
                               cert.intersecting_tuples->str() + " of " + binomial(expanded.size(), kk).str() +
                                   " (d+1)-subsets intersect"});
    }
    else
        cert.stages.push_back({"helly-count", StageStatus::Skipped, "over budget or too few sets"});

    // Heavy point: outside S- (i.e. q(a) < t) for the most expanded pairs.
    for (Index a = 0; a < q.point_count(); ++a)
    {
        BigInt count = 0;
        for (std::size_t k = 0; k < q.size(); ++k)
            if (q[k][a] < t)
                count += cert.multiplicities[k];
        if (a == 0 || count > cert.heavy_count)
        {
            cert.heavy_count = count;
            cert.heavy_point = a;
        }
    }
    if (Rational(cert.heavy_count) > Rational(cert.denominator))
        throw std::logic_error("pq_pipeline: heavy point violates the packing constraint");
    cert.stages.push_back({"heavy-point", StageStatus::Verified,
                           "a=" + std::to_string(cert.heavy_point) + " pairs=" + cert.heavy_count.str()});

    cert.tau_star_inner_t = fractional_transversal(slice_inner(q, t)).value;
    if (cert.tau_star_inner_t > cert.tau_star_outer)
        throw std::logic_error("pq_pipeline: enlarging sets increased tau*");
    cert.stages.push_back({"enlarge", StageStatus::Verified,
                           "tau*(Q_{<=t})=" + to_string(cert.tau_star_inner_t)});

    const FuzzySetSystem upper = slice(q, t, s);
    cert.d2 = vc_dimension(upper).value_or(0);
    result.net = transversal_via_net(upper, options.net);
    result.transversal = result.net.transversal;
    if (!is_transversal(slice_outer(q, s), result.transversal))
        throw std::logic_error("pq_pipeline: result is not a transversal of Q_{<s}");
    cert.stages.push_back({"transversal", StageStatus::Verified,
                           "size=" + std::to_string(result.transversal.size())});
    return result;
}

/**
 * Independent replay of a pipeline result: recomputes ν*, the multiplicity
 * arithmetic, the heavy-point count and the transversal property.
 */
inline bool verify_pq_result(const FunctionClass& q, const Rational& t, const Rational& s, const PqResult& res)
{
    const auto& c = res.certificate;
    const SetSystem outer_t = slice_outer(q, t);
    const auto packing = fractional_packing(outer_t);
    if (packing.value != c.tau_star_outer || fractional_transversal(outer_t).value != c.tau_star_outer)
        return false;
    if (c.packing.size() != q.size() || c.multiplicities.size() != q.size())
        return false;
    // The recorded packing must itself be feasible and optimal.
    Rational value = 0;
    for (const auto& f : c.packing)
        value += f;
    if (value != c.tau_star_outer)
        return false;
    for (Index a = 0; a < q.point_count(); ++a)
    {
        Rational load = 0;
        for (std::size_t k = 0; k < q.size(); ++k)
            if (q[k][a] < t)
                load += c.packing[k];
        if (load > 1)
            return false;
    }
    BigInt total = 0;
    for (std::size_t k = 0; k < q.size(); ++k)
    {
        if (Rational(c.multiplicities[k]) != c.packing[k] * Rational(c.denominator))
            return false;
        total += c.multiplicities[k];
    }
    if (total != c.expanded_size || Rational(total) != Rational(c.denominator) * c.tau_star_outer)
        return false;
    BigInt heavy = 0;
    for (std::size_t k = 0; k < q.size(); ++k)
        if (q[k][c.heavy_point] < t)
            heavy += c.multiplicities[k];
    if (heavy != c.heavy_count || heavy > c.denominator)
        return false;
    if (fractional_transversal(slice_inner(q, t)).value != c.tau_star_inner_t ||
        c.tau_star_inner_t > c.tau_star_outer)
        return false;
    return is_transversal(slice_outer(q, s), res.transversal);
}

}   // namespace fuzzyvc
