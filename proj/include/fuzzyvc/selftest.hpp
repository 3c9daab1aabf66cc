#pragma once

/**
 * Seeded property suites behind `fuzzyvc selftest`. Each suite draws its own
 * instances from (seed, suite, case), so suites are independent and a report
 * for a given seed and budget is byte-stable.
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fuzzyvc/generators.hpp"
#include "fuzzyvc/helly_pq.hpp"
#include "fuzzyvc/instance_io.hpp"
#include "fuzzyvc/lp_exact.hpp"
#include "fuzzyvc/nets.hpp"
#include "fuzzyvc/width_metrics.hpp"

namespace fuzzyvc {

enum class Budget { Small, Medium };

inline Budget parse_budget(const std::string& s)
{
    if (s == "small")
        return Budget::Small;
    if (s == "medium")
        return Budget::Medium;
    throw ParseError("--budget: expected small or medium");
}

struct SuiteResult
{
    std::string name;
    /** Instances drawn, and those meeting the suite's hypothesis. */
    std::size_t cases = 0;
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0; }
};

namespace detail {

/** Outcome of one case: nullopt when the hypothesis does not hold, else a failure message or "". */
using CaseCheck = std::function<std::optional<std::string>(Rng&, std::size_t)>;

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::uint64_t suite_id, std::size_t cases,
                             const CaseCheck& check)
{
    SuiteResult out;
    out.name = name;
    out.cases = cases;
    for (std::size_t c = 0; c < cases; ++c)
    {
        Rng rng(seed, (suite_id << 32) | c);
        std::optional<std::string> verdict;
        try
        {
            verdict = check(rng, c);
        }
        catch (const std::exception& e)
        {
            verdict = std::string("exception: ") + e.what();
        }
        if (!verdict)
            continue;
        ++out.checked;
        if (!verdict->empty())
        {
            if (out.failures++ == 0)
                out.first_failure = "case " + std::to_string(c) + ": " + *verdict;
        }
    }
    return out;
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

inline FunctionClass random_class(Rng& rng, std::size_t points, std::size_t rows, std::size_t grid)
{
    GeneratorParams p;
    p.n = points;
    p.k = rows;
    p.grid = grid;
    return std::get<FunctionClass>(generate(GeneratorKind::RandomFunctionMatrix, p, rng.next()));
}

inline FuzzySetSystem random_fuzzy_system(Rng& rng, std::size_t n, std::size_t k)
{
    GeneratorParams p;
    p.n = n;
    p.k = k;
    return std::get<FuzzySetSystem>(generate(GeneratorKind::RandomFuzzy, p, rng.next()));
}

inline DiscreteMeasure random_measure(Rng& rng, std::size_t n, std::size_t support)
{
    std::vector<Rational> w(n, Rational(0));
    std::vector<long> raw;
    long total = 0;
    for (std::size_t i = 0; i < support; ++i)
    {
        raw.push_back(1 + static_cast<long>(rng.below(4)));
        total += raw.back();
    }
    // Support: the first `support` points of a random rotation.
    const std::size_t shift = rng.below(n);
    for (std::size_t i = 0; i < support; ++i)
        w[(i + shift) % n] = Rational(raw[i], total);
    return DiscreteMeasure(std::move(w));
}

inline Rational pick_rational(Rng& rng, long lo, long hi, long den)
{
    return Rational(lo + static_cast<long>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))), den);
}

}   // namespace detail

inline std::vector<SuiteResult> run_selftest(std::uint64_t seed, Budget budget)
{
    using detail::pick;
    const std::size_t scale = budget == Budget::Small ? 3 : 12;
    std::vector<SuiteResult> out;

    out.push_back(detail::run_suite("sauer_shelah", seed, 1, 20 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const auto f = detail::random_fuzzy_system(rng, pick(rng, 1, 7), pick(rng, 0, 20));
        const std::size_t d = vc_dimension(f).value_or(0);
        for (std::size_t n = 0; n <= f.ground_size(); ++n)
            if (BigInt(shatter_function(f, n)) > sauer_bound(d, n))
                return "pi(" + std::to_string(n) + ") exceeds the bound";
        return "";
    }));

    out.push_back(detail::run_suite("fat_shattering_sandwich", seed, 2, 10 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const auto q = detail::random_class(rng, pick(rng, 1, 4), pick(rng, 1, 6), 8);
        for (long k : {1L, 2L, 4L})
        {
            const Rational eps(k, 8);
            const std::size_t fs = fat_shattering(q, eps);
            if (2 * eps <= 1 && vc_eps(q, 2 * eps) > fs)
                return "vc_2eps > fs_eps at eps=" + to_string(eps);
            const BigInt factor = 2 * ceil_of(1 / eps) - 1;
            if (BigInt(fs) > factor * vc_eps(q, eps))
                return "fs_eps above (2*ceil(1/eps)-1)*vc_eps at eps=" + to_string(eps);
        }
        return "";
    }));

    out.push_back(detail::run_suite("width_sandwich", seed, 3, 5 * scale, [](Rng& rng, std::size_t c)
                                        -> std::optional<std::string> {
        const std::size_t n = pick(rng, 2, 5), count = pick(rng, 1, 6);
        PointSet pts(count);
        for (auto& p : pts)
            for (std::size_t i = 0; i < n; ++i)
                p.push_back(detail::pick_rational(rng, 0, 4, 4));
        const double wr = mean_width(pts, SignDistribution::Rademacher, WidthOptions::exact()).value;
        const auto wg = mean_width(pts, SignDistribution::Gaussian, WidthOptions::monte_carlo(4000, rng.next() + c));
        const double k = std::sqrt(std::numbers::pi / 2);
        if (wr > k * (wg.value + 3 * wg.std_error) + 1e-12)
            return "left inequality";
        if (k * (wg.value - 3 * wg.std_error) > 2 * std::sqrt(std::log(double(n))) * wr + 1e-12)
            return "right inequality";
        return "";
    }));

    out.push_back(detail::run_suite("approximation_existence", seed, 4, 10 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const std::size_t points = pick(rng, 1, 3);
        const auto q = detail::random_class(rng, points, pick(rng, 1, 3), 2);
        const auto mu = detail::random_measure(rng, points, pick(rng, 1, points));
        const std::size_t n = pick(rng, 1, 6);
        const Rational eps = detail::pick_rational(rng, 1, 4, 4);
        const auto r = width_profile(q, n, SignDistribution::Rademacher, std::nullopt, WidthOptions::exact());
        if (!(*r.exact / static_cast<long>(n) < eps))
            return std::nullopt;
        try
        {
            const auto a = find_eps_approximation(q, mu, eps, ApproximationStrategy::ExhaustiveMin, n);
            return is_eps_approximation(a, q, mu, eps) ? "" : "returned tuple fails verification";
        }
        catch (const NotFoundError&)
        {
            return "no approximation of size <= n";
        }
    }));

    out.push_back(detail::run_suite("approximation_is_net", seed, 5, 10 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const std::size_t points = pick(rng, 1, 4);
        const auto q = detail::random_class(rng, points, pick(rng, 1, 5), 4);
        const auto mu = detail::random_measure(rng, points, pick(rng, 1, points));
        const Rational r = detail::pick_rational(rng, 0, 1, 4), s = r + detail::pick_rational(rng, 1, 2, 4);
        const Rational eps = detail::pick_rational(rng, 1, 4, 4);
        const Rational delta = (s - r) * eps / 2;
        const auto clamped = clamp_class(q, r, s);
        const auto fuzzy = slice(q, r, s);
        const auto support = mu.support();
        std::string failure;
        for (std::size_t m = 1; m <= 3 && failure.empty(); ++m)
            for_each_multiset(support.size(), m, [&](const std::vector<Index>& pos) {
                std::vector<Index> a;
                for (Index i : pos)
                    a.push_back(support[i]);
                if (!is_eps_approximation(a, clamped, mu, delta))
                    return true;
                IndexSet set(a.begin(), a.end());
                set.erase(std::unique(set.begin(), set.end()), set.end());
                if (!is_eps_net(set, fuzzy, mu, eps))
                {
                    failure = "approximation is not a net";
                    return false;
                }
                return true;
            });
        return failure;
    }));

    out.push_back(detail::run_suite("trace_separation", seed, 6, 10 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const std::size_t points = pick(rng, 1, 4);
        const auto q = detail::random_class(rng, points, pick(rng, 1, 8), 4);
        std::vector<Index> xbar;
        for (std::size_t i = 0, m = pick(rng, 1, 3); i < m; ++i)
            xbar.push_back(rng.below(points));
        const Rational r = detail::pick_rational(rng, 0, 2, 4), s = r + detail::pick_rational(rng, 1, 4 - 2, 4);
        if (s > 1)
            return std::nullopt;
        const auto fuzzy = slice(q, r, s);
        IndexSet y(xbar.begin(), xbar.end());
        std::sort(y.begin(), y.end());
        y.erase(std::unique(y.begin(), y.end()), y.end());
        const std::size_t patterns = traces(fuzzy, y).size();
        const std::size_t cover = covering_number(q, xbar, (s - r) * Rational(49, 100), CoverMethod::Internal);
        return patterns <= cover ? "" : "trace count exceeds internal cover";
    }));

    out.push_back(detail::run_suite("lp_duality", seed, 7, 20 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const auto f = detail::random_fuzzy_system(rng, pick(rng, 1, 7), pick(rng, 1, 8));
        const auto outer = inner_outer(f).second;
        for (const auto& s : outer.sets())
            if (s.empty())
                return std::nullopt;
        const auto tau = fractional_transversal(outer), nu = fractional_packing(outer);
        if (tau.value != nu.value)
            return "tau* = " + to_string(tau.value) + " but nu* = " + to_string(nu.value);
        return Rational(static_cast<long>(transversal_number(outer))) >= tau.value ? "" : "tau < tau*";
    }));

    out.push_back(detail::run_suite("transversal_via_net", seed, 8, 10 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const auto f = detail::random_fuzzy_system(rng, pick(rng, 1, 8), pick(rng, 1, 8));
        const auto [inner, outer] = inner_outer(f);
        for (const auto& s : inner.sets())
            if (s.empty())
                return std::nullopt;
        const auto cert = transversal_via_net(f);
        if (!is_transversal(outer, cert.transversal))
            return "not a transversal of the outer system";
        const std::size_t tau = transversal_number(outer);
        if (cert.transversal.size() < tau)
            return "net transversal below the exhaustive minimum";
        return BigInt(tau) >= ceil_of(fractional_transversal(outer).value) ? "" : "tau < ceil(tau*)";
    }));

    out.push_back(detail::run_suite("fractional_helly", seed, 9, 5 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        GeneratorParams p;
        p.n = pick(rng, 4, 10);
        p.k = pick(rng, 2, 8);
        p.margin = pick(rng, 0, 1);
        const auto f = std::get<FuzzySetSystem>(generate(GeneratorKind::FuzzyMarginIntervals, p, rng.next()));
        const auto rel = FuzzyRelation::of_system(f);
        const BigInt good = detail::count_intersecting(detail::plus_columns(rel), 2, rel.x_size());
        if (good == 0)
            return std::nullopt;
        const Rational alpha(good, binomial(rel.y_size(), 2));
        const auto cert = fractional_helly_witness(rel, 2, alpha);
        return verify_helly_certificate(rel, cert) ? "" : "certificate does not replay";
    }));

    out.push_back(detail::run_suite("pq_pipeline", seed, 10, 5 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        GeneratorParams gp;
        gp.n = pick(rng, 4, 7);
        gp.k = pick(rng, 3, 6);
        gp.width = detail::pick_rational(rng, 1, 3, 4);
        const auto q = std::get<FunctionClass>(generate(GeneratorKind::DistanceFunctions, gp, rng.next()));
        const Rational r(1, 4), t(1, 2), s(3, 4);
        const std::size_t d = vc_dimension(dual_system(slice(q, r, t))).value_or(0);
        const std::size_t qq = d + 1;
        if (qq > q.size())
            return std::nullopt;
        const auto inner = slice_inner(q, r);
        for (std::size_t p = qq; p <= q.size(); ++p)
            if (has_pq_property(inner, p, qq))
            {
                const auto res = pq_pipeline(q, r, t, s, p, qq);
                return verify_pq_result(q, t, s, res) ? "" : "result does not replay";
            }
        return std::nullopt;
    }));

    out.push_back(detail::run_suite("deviation_bound", seed, 11, 3 * scale, [](Rng& rng, std::size_t)
                                        -> std::optional<std::string> {
        const std::size_t points = pick(rng, 1, 3);
        const auto q = detail::random_class(rng, points, pick(rng, 1, 3), 4);
        const auto mu = detail::random_measure(rng, points, pick(rng, 1, points));
        const Rational eps(1, 2);
        const std::size_t n = pick(rng, 8, 16);
        const auto est = deviation_estimate(q, mu, n, eps, 200, rng.next());
        std::size_t distinct = 1;
        for (std::size_t i = 1; i < q.size(); ++i)
            if (std::find(q.rows().begin(), q.rows().begin() + i, q[i]) == q.rows().begin() + i)
                ++distinct;
        const double bound = std::min(1.0, deviation_bound(n, 0.5, static_cast<double>(distinct)));
        return bound >= est.probability - 3 * est.std_error ? "" : "estimate exceeds bound";
    }));

    return out;
}

inline Json selftest_json(const std::vector<SuiteResult>& suites)
{
    Json arr = Json::array();
    bool all = true;
    for (const auto& s : suites)
    {
        all = all && s.passed();
        arr.push_back({{"name", s.name},
                       {"cases", s.cases},
                       {"checked", s.checked},
                       {"failures", s.failures},
                       {"first_failure", s.first_failure},
                       {"passed", s.passed()}});
    }
    return {{"suites", arr}, {"passed", all}};
}

}   // namespace fuzzyvc
