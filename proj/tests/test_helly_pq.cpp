#include <gtest/gtest.h>

#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/generators.hpp"
#include "fuzzyvc/helly_pq.hpp"
#include "fuzzyvc/random.hpp"
#include "oracles.hpp"

using namespace fuzzyvc;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

const SetSystem kTriangle(3, {{0, 1}, {1, 2}, {0, 2}});

std::vector<std::vector<std::size_t>> as_lists(const SetSystem& s) { return {s.sets().begin(), s.sets().end()}; }

SetSystem random_system(Rng& rng, std::size_t points, std::size_t sets)
{
    std::vector<IndexSet> v;
    for (std::size_t k = 0; k < sets; ++k)
    {
        IndexSet s;
        for (Index x = 0; x < points; ++x)
            if (rng.below(2))
                s.push_back(x);
        v.push_back(s);
    }
    return SetSystem(points, v);
}

FuzzyRelation random_relation(Rng& rng, std::size_t xs, std::size_t ys)
{
    std::vector<Membership> e(xs * ys);
    for (auto& m : e)
        m = static_cast<Membership>(rng.below(3));
    return FuzzyRelation(xs, ys, e);
}

// Row x of the relation as a fuzzy set over the columns.
FuzzySetSystem rows_of(const FuzzyRelation& rel)
{
    std::vector<FuzzySet> sets(rel.x_size());
    for (std::size_t x = 0; x < rel.x_size(); ++x)
        for (std::size_t y = 0; y < rel.y_size(); ++y)
        {
            if (rel.at(x, y) == Membership::Plus)
                sets[x].plus.push_back(y);
            else if (rel.at(x, y) == Membership::Minus)
                sets[x].minus.push_back(y);
        }
    return FuzzySetSystem(rel.y_size(), sets);
}

FunctionClass distance_class(std::uint64_t seed, std::size_t n, std::size_t k)
{
    GeneratorParams params;
    params.n = n;
    params.k = k;
    return std::get<FunctionClass>(generate(GeneratorKind::DistanceFunctions, params, seed));
}

}   // namespace

TEST(PqProperty, Examples)
{
    EXPECT_TRUE(has_pq_property(kTriangle, 2, 2));
    EXPECT_FALSE(has_pq_property(kTriangle, 3, 3));
    EXPECT_TRUE(has_pq_property(SetSystem(4, {{0}, {1, 2}, {3}, {0, 3}}), 1, 1));
    EXPECT_THROW(has_pq_property(kTriangle, 4, 2), DomainError);
    EXPECT_THROW(has_pq_property(kTriangle, 2, 3), DomainError);
}

TEST(PqProperty, AgreesWithOracleAndMonotoneInP)
{
    Rng rng(51, 0);
    for (int trial = 0; trial < 80; ++trial)
    {
        const std::size_t points = 1 + rng.below(5);
        const auto s = random_system(rng, points, 1 + rng.below(6));
        for (std::size_t p = 1; p <= s.size(); ++p)
            for (std::size_t qq = 1; qq <= p; ++qq)
            {
                const bool holds = has_pq_property(s, p, qq);
                EXPECT_EQ(holds, oracle::pq(as_lists(s), points, p, qq));
                if (holds && p < s.size())
                {
                    EXPECT_TRUE(has_pq_property(s, p + 1, qq));
                }
            }
    }
}

TEST(PPrime, Examples)
{
    EXPECT_EQ(p_prime(2, 1), 1u);
    EXPECT_EQ(p_prime(1, 2), 2u);
    EXPECT_EQ(p_prime(3, 3), 7u);
    EXPECT_THROW(p_prime(0, 1), DomainError);
    EXPECT_THROW(p_prime(1, 0), DomainError);
}

TEST(HellyParameters, Examples)
{
    const auto interval = helly_parameters([](std::size_t m) { return m + 1; }, 2, q(1));
    ASSERT_TRUE(interval);
    EXPECT_EQ(interval->m, 10u);
    EXPECT_EQ(interval->beta, q(1, 20));

    for (std::size_t k : {1u, 2u, 3u})
        EXPECT_FALSE(helly_parameters([](std::size_t m) { return std::size_t{1} << m; }, k, q(1, 2), 20));

    const auto zero = helly_parameters([](std::size_t) { return std::size_t{0}; }, 1, q(1));
    ASSERT_TRUE(zero);
    EXPECT_EQ(zero->m, 1u);
    EXPECT_EQ(zero->beta, q(1, 2));

    EXPECT_THROW(helly_parameters([](std::size_t) { return std::size_t{0}; }, 0, q(1)), DomainError);
    EXPECT_THROW(helly_parameters([](std::size_t) { return std::size_t{0}; }, 1, q(0)), DomainError);
}

TEST(HellyParameters, SmallestQualifyingM)
{
    Rng rng(52, 0);
    for (int trial = 0; trial < 40; ++trial)
    {
        const std::size_t k = 1 + rng.below(3);
        const Rational alpha(1 + static_cast<long>(rng.below(4)), 4);
        const std::size_t slope = 1 + rng.below(4);
        auto pi = [slope](std::size_t m) { return slope * m * m + 1; };
        const auto got = helly_parameters(pi, k, alpha, 40);
        std::optional<std::size_t> expected;
        for (std::size_t m = k; m <= 40 && !expected; ++m)
            if (Rational(static_cast<long>(pi(m))) < alpha / 4 * Rational(binomial(m, k)))
                expected = m;
        ASSERT_EQ(got.has_value(), expected.has_value());
        if (got)
        {
            EXPECT_EQ(got->m, *expected);
        }
    }
}

TEST(DualShatter, MatchesOracleAndVanishesBeyondColumns)
{
    Rng rng(53, 0);
    for (int trial = 0; trial < 30; ++trial)
    {
        const auto rel = random_relation(rng, 1 + rng.below(5), 1 + rng.below(4));
        const auto pi = dual_shatter_oracle(rel);
        const auto rows = rows_of(rel);
        for (std::size_t m = 0; m <= rel.y_size(); ++m)
            EXPECT_EQ(pi(m), oracle::shatter(rows, m));
        EXPECT_EQ(pi(rel.y_size() + 1), 0u);
    }
}

TEST(FractionalHelly, Examples)
{
    const FuzzyRelation point(1, 3, {Membership::Plus, Membership::Plus, Membership::Plus});
    const auto a = fractional_helly_witness(point, 2, q(1));
    EXPECT_EQ(a.witness, 0u);
    EXPECT_EQ(a.J, (IndexSet{0, 1, 2}));
    EXPECT_TRUE(verify_helly_certificate(point, a));

    const auto tri = FuzzyRelation::of_system(FuzzySetSystem::from_crisp(kTriangle));
    const auto b = fractional_helly_witness(tri, 2, q(1));
    EXPECT_EQ(b.J.size(), 2u);
    EXPECT_EQ(b.good_fraction, q(1));
    EXPECT_TRUE(verify_helly_certificate(tri, b));

    const FuzzyRelation split(2, 2, {Membership::Plus, Membership::Minus, Membership::Minus, Membership::Plus});
    EXPECT_THROW(fractional_helly_witness(split, 2, q(1, 2)), HypothesisError);
    EXPECT_THROW(fractional_helly_witness(split, 3, q(1, 2)), DomainError);
}

TEST(FractionalHelly, CertificatesReplayOnMarginIntervals)
{
    std::size_t certified = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed)
    {
        GeneratorParams params;
        params.n = 6 + seed % 4;
        params.k = 4 + seed % 5;
        const auto f = std::get<FuzzySetSystem>(generate(GeneratorKind::FuzzyMarginIntervals, params, seed));
        const auto rel = FuzzyRelation::of_system(f);
        std::size_t good = 0, total = 0;
        oracle::for_each_tuple(rel.y_size(), 2, [&](const std::vector<std::size_t>& t) {
            if (t[0] >= t[1])
                return;
            ++total;
            for (std::size_t x = 0; x < rel.x_size(); ++x)
                if (rel.at(x, t[0]) == Membership::Plus && rel.at(x, t[1]) == Membership::Plus)
                {
                    ++good;
                    break;
                }
        });
        if (good == 0)
            continue;
        const Rational alpha(static_cast<long>(good), static_cast<long>(total));
        const auto params_found = helly_parameters(dual_shatter_oracle(rel), 2, alpha);
        if (!params_found)
        {
            EXPECT_THROW(fractional_helly_witness(rel, 2, alpha), NotFoundError);
            continue;
        }
        const auto cert = fractional_helly_witness(rel, 2, alpha);
        ++certified;
        EXPECT_EQ(cert.good_fraction, alpha);
        EXPECT_TRUE(verify_helly_certificate(rel, cert));
        std::size_t best = 0;
        for (std::size_t x = 0; x < rel.x_size(); ++x)
        {
            std::size_t avoid = 0;
            for (std::size_t y = 0; y < rel.y_size(); ++y)
                avoid += rel.at(x, y) != Membership::Minus;
            best = std::max(best, avoid);
        }
        EXPECT_EQ(cert.J.size(), best);
    }
    EXPECT_GT(certified, 10u);
}

// With n <= 2m columns, ⌈βn⌉ = 1 and any point of a plus column gives a valid singleton J.
TEST(FractionalHelly, SingletonSufficesWhenNAtMostTwoM)
{
    Rng rng(54, 0);
    for (int trial = 0; trial < 40; ++trial)
    {
        const auto rel = random_relation(rng, 1 + rng.below(5), 1 + rng.below(6));
        const std::size_t m = (rel.y_size() + 1) / 2;
        const Rational beta(1, static_cast<long>(2 * m));
        EXPECT_EQ(ceil_of(beta * Rational(static_cast<long>(rel.y_size()))), BigInt(1));
        for (std::size_t y = 0; y < rel.y_size(); ++y)
            for (std::size_t x = 0; x < rel.x_size(); ++x)
                if (rel.at(x, y) == Membership::Plus)
                {
                    HellyCertificate c;
                    c.k = 1;
                    c.m = m;
                    c.beta = beta;
                    c.n = rel.y_size();
                    c.witness = x;
                    c.J = {y};
                    c.alpha = c.good_fraction =
                        Rational(detail::count_intersecting(detail::plus_columns(rel), 1, rel.x_size()),
                                 binomial(rel.y_size(), 1));
                    EXPECT_TRUE(verify_helly_certificate(rel, c));
                }
    }
}

// A singleton meets |J| >= ⌈n/(2m)⌉ only while n <= 2m; the range 2m < n <= 2m² needs more.
TEST(FractionalHelly, SingletonBoundNeedsNAtMostTwoM)
{
    for (std::size_t m = 2; m <= 6; ++m)
    {
        const Rational beta(1, static_cast<long>(2 * m));
        EXPECT_EQ(ceil_of(beta * Rational(static_cast<long>(2 * m))), BigInt(1));
        EXPECT_EQ(ceil_of(beta * Rational(static_cast<long>(2 * m + 1))), BigInt(2));
        EXPECT_LE(2 * m + 1, 2 * m * m);
    }
}

TEST(PqPipeline, TriangleExample)
{
    const FunctionClass tri(3, {{q(0), q(0), q(1)}, {q(1), q(0), q(0)}, {q(0), q(1), q(0)}});
    const auto res = pq_pipeline(tri, q(0), q(1, 3), q(2, 3), 2, 2);
    EXPECT_LE(res.transversal.size(), 2u);
    EXPECT_TRUE(is_transversal(slice_outer(tri, q(2, 3)), res.transversal));
    EXPECT_TRUE(verify_pq_result(tri, q(1, 3), q(2, 3), res));
    for (const auto& stage : res.certificate.stages)
        EXPECT_NE(stage.status, StageStatus::Refuted) << stage.name;
    EXPECT_EQ(res.certificate.stages.back().name, "transversal");
}

TEST(PqPipeline, ConstantZeroRow)
{
    const FunctionClass zero(3, {{q(0), q(0), q(0)}});
    const auto res = pq_pipeline(zero, q(1, 4), q(1, 2), q(3, 4), 1, 1);
    EXPECT_EQ(res.transversal.size(), 1u);
    EXPECT_TRUE(verify_pq_result(zero, q(1, 2), q(3, 4), res));
}

TEST(PqPipeline, Guards)
{
    // Rows separating every pair of points make the dual dimension at least 2.
    const FunctionClass rich(2, {{q(0), q(0)}, {q(0), q(1)}, {q(1), q(0)}, {q(1), q(1)}});
    EXPECT_THROW(pq_pipeline(rich, q(0), q(1, 2), q(3, 4), 2, 1), DomainError);
    const FunctionClass apart(2, {{q(0), q(1)}, {q(1), q(0)}});
    EXPECT_THROW(pq_pipeline(apart, q(0), q(1, 2), q(3, 4), 2, 2), DomainError);
    EXPECT_THROW(pq_pipeline(apart, q(1, 2), q(1, 2), q(3, 4), 2, 2), DomainError);
    EXPECT_THROW(pq_pipeline(apart, q(0), q(1, 2), q(3, 4), 1, 2), DomainError);
}

TEST(PqPipeline, DistanceClassesReplayAndAreDeterministic)
{
    std::size_t ran = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed)
    {
        const auto cls = distance_class(seed, 5 + seed % 3, 3 + seed % 3);
        const Rational r(1, 4), t(1, 2), s(3, 4);
        const std::size_t d = vc_dimension(dual_system(slice(cls, r, t))).value_or(0);
        const std::size_t qq = d + 1;
        const auto inner = slice_inner(cls, r);
        std::optional<std::size_t> p;
        for (std::size_t cand = qq; cand <= inner.size() && !p; ++cand)
            if (oracle::pq(as_lists(inner), cls.point_count(), cand, qq))
                p = cand;
        if (!p)
            continue;
        ++ran;
        const auto a = pq_pipeline(cls, r, t, s, *p, qq);
        const auto b = pq_pipeline(cls, r, t, s, *p, qq);
        EXPECT_TRUE(verify_pq_result(cls, t, s, a));
        EXPECT_EQ(a.transversal, b.transversal);
        EXPECT_EQ(a.certificate.stages, b.certificate.stages);
        EXPECT_EQ(a.certificate.multiplicities, b.certificate.multiplicities);

        const auto& c = a.certificate;
        BigInt total = 0;
        for (const auto& m : c.multiplicities)
            total += m;
        EXPECT_EQ(Rational(total), Rational(c.denominator) * c.tau_star_outer);
        EXPECT_EQ(c.tau_star_outer, oracle::tau_star(cls.point_count(), as_lists(slice_outer(cls, t))));
        EXPECT_LE(c.tau_star_inner_t, c.tau_star_outer);
        const auto outer_s = as_lists(slice_outer(cls, s));
        for (const auto& set : outer_s)
            EXPECT_TRUE(std::any_of(set.begin(), set.end(),
                                    [&](std::size_t x) { return oracle::contains(a.transversal, x); }));
        for (const auto& stage : c.stages)
            EXPECT_NE(stage.status, StageStatus::Refuted) << stage.name;
    }
    EXPECT_GT(ran, 5u);
}
