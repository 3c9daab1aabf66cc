#pragma once

/** Seeded instance families. The same (kind, params, seed) always yields the same instance. */

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/instance_io.hpp"
#include "fuzzyvc/random.hpp"
#include "fuzzyvc/rational.hpp"

namespace fuzzyvc {

enum class GeneratorKind { CrispIntervals, FuzzyMarginIntervals, DistanceFunctions, RandomFuzzy, RandomFunctionMatrix };

inline GeneratorKind parse_generator_kind(const std::string& name)
{
    if (name == "crisp_intervals")
        return GeneratorKind::CrispIntervals;
    if (name == "fuzzy_margin_intervals")
        return GeneratorKind::FuzzyMarginIntervals;
    if (name == "distance_functions")
        return GeneratorKind::DistanceFunctions;
    if (name == "random_fuzzy")
        return GeneratorKind::RandomFuzzy;
    if (name == "random_function_matrix")
        return GeneratorKind::RandomFunctionMatrix;
    throw ParseError("unknown generator kind \"" + name + "\"");
}

struct GeneratorParams
{
    /** Ground points. */
    std::size_t n = 8;
    /** Sets or rows. */
    std::size_t k = 6;
    /** Integer margin w of fuzzy_margin_intervals. */
    std::size_t margin = 1;
    /** Slope width w of distance_functions, in (0, 1]. */
    Rational width = Rational(1, 2);
    /** Entry probabilities of random_fuzzy; p_plus + p_minus <= 1. */
    Rational p_plus = Rational(1, 3);
    Rational p_minus = Rational(1, 3);
    /** Value grid 1/grid of random_function_matrix. */
    std::size_t grid = 8;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> random_interval(Rng& rng, std::size_t n)
{
    std::size_t a = rng.below(n), b = rng.below(n);
    if (a > b)
        std::swap(a, b);
    return {a, b};
}

/** True with probability p (exact: compares against p's numerator on its denominator). */
inline bool bernoulli(Rng& rng, const Rational& p)
{
    const auto den = boost::multiprecision::denominator(p).convert_to<std::uint64_t>();
    const auto num = boost::multiprecision::numerator(p).convert_to<std::uint64_t>();
    return rng.below(den) < num;
}

}   // namespace detail

/**
 * crisp_intervals: k intervals [a, b] of the points 0..n-1.
 * fuzzy_margin_intervals: plus = [a+w, b-w], minus = outside [a-w, b+w].
 * distance_functions: q_c(x) = min(1, |x - c| / w) for grid points x = i/(n-1)
 *   and k random grid centres c.
 * random_fuzzy: each (point, set) entry is Plus, Minus or Star independently.
 * random_function_matrix: k rows of n values drawn from {0, 1/grid, ..., 1}.
 */
inline InstanceFile generate(GeneratorKind kind, const GeneratorParams& p, std::uint64_t seed)
{
    if (p.n < 1 || p.n > kMaxMaskGround)
        throw DomainError("generate: n must lie in [1, " + std::to_string(kMaxMaskGround) + "]");
    Rng rng(seed, static_cast<std::uint64_t>(kind) + 1);
    switch (kind)
    {
        case GeneratorKind::CrispIntervals:
        {
            std::vector<IndexSet> sets;
            for (std::size_t j = 0; j < p.k; ++j)
            {
                const auto [a, b] = detail::random_interval(rng, p.n);
                IndexSet s;
                for (std::size_t x = a; x <= b; ++x)
                    s.push_back(x);
                sets.push_back(std::move(s));
            }
            return SetSystem(p.n, std::move(sets));
        }
        case GeneratorKind::FuzzyMarginIntervals:
        {
            std::vector<FuzzySet> sets;
            const auto w = static_cast<long>(p.margin);
            for (std::size_t j = 0; j < p.k; ++j)
            {
                const auto [a, b] = detail::random_interval(rng, p.n);
                FuzzySet s;
                for (std::size_t x = 0; x < p.n; ++x)
                {
                    const auto xi = static_cast<long>(x);
                    if (xi >= static_cast<long>(a) + w && xi <= static_cast<long>(b) - w)
                        s.plus.push_back(x);
                    else if (xi < static_cast<long>(a) - w || xi > static_cast<long>(b) + w)
                        s.minus.push_back(x);
                }
                sets.push_back(std::move(s));
            }
            return FuzzySetSystem(p.n, std::move(sets));
        }
        case GeneratorKind::DistanceFunctions:
        {
            if (p.n < 2)
                throw DomainError("generate: distance_functions needs n >= 2");
            if (p.width <= 0 || p.width > 1)
                throw DomainError("generate: width must lie in (0, 1]");
            const Rational step(1, static_cast<long>(p.n - 1));
            std::vector<std::vector<Rational>> rows;
            for (std::size_t j = 0; j < p.k; ++j)
            {
                const Rational c = step * static_cast<long>(rng.below(p.n));
                std::vector<Rational> row;
                for (std::size_t x = 0; x < p.n; ++x)
                {
                    const Rational v = abs_of(step * static_cast<long>(x) - c) / p.width;
                    row.push_back(v > 1 ? Rational(1) : v);
                }
                rows.push_back(std::move(row));
            }
            return FunctionClass(p.n, std::move(rows));
        }
        case GeneratorKind::RandomFuzzy:
        {
            if (p.p_plus < 0 || p.p_minus < 0 || p.p_plus + p.p_minus > 1)
                throw DomainError("generate: need p_plus, p_minus >= 0 with p_plus + p_minus <= 1");
            const Rational minus_given_not_plus = p.p_plus == 1 ? Rational(0) : p.p_minus / (1 - p.p_plus);
            std::vector<FuzzySet> sets(p.k);
            for (auto& s : sets)
                for (std::size_t x = 0; x < p.n; ++x)
                {
                    if (detail::bernoulli(rng, p.p_plus))
                        s.plus.push_back(x);
                    else if (detail::bernoulli(rng, minus_given_not_plus))
                        s.minus.push_back(x);
                }
            return FuzzySetSystem(p.n, std::move(sets));
        }
        case GeneratorKind::RandomFunctionMatrix:
        {
            if (p.grid < 1)
                throw DomainError("generate: grid must be at least 1");
            std::vector<std::vector<Rational>> rows(p.k);
            for (auto& row : rows)
                for (std::size_t x = 0; x < p.n; ++x)
                    row.emplace_back(static_cast<long>(rng.below(p.grid + 1)), static_cast<long>(p.grid));
            return FunctionClass(p.n, std::move(rows));
        }
    }
    throw DomainError("generate: unknown kind");
}

}   // namespace fuzzyvc
