#pragma once

/**
 * Exact rational linear programming (two-phase tableau simplex with Bland's
 * smallest-index rule) and the transversal / packing numbers built on it.
 *
 * Every optimal solution carries a dual vector, one entry per constraint,
 * and is re-verified by substitution before it is returned.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyvc/cover_search.hpp"
#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/rational.hpp"

namespace fuzzyvc {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint
{
    std::vector<Rational> coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/** Absent ends are unbounded. The default is x >= 0. */
struct VariableBounds
{
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;
};

struct LpProblem
{
    Sense sense = Sense::Minimize;
    std::vector<Rational> objective;
    std::vector<Constraint> constraints;
    /** One entry per variable, or empty for x >= 0 throughout. */
    std::vector<VariableBounds> bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution
{
    LpStatus status = LpStatus::Infeasible;
    Rational optimum;
    std::vector<Rational> primal;
    /**
     * d(optimum)/d(rhs_i) for each constraint: for minimisation, >= rows get
     * nonnegative duals and <= rows nonpositive ones; for maximisation the
     * other way round.
     */
    std::vector<Rational> dual;
};

namespace detail {

/** x_j = offset + sum coef * x'_k over standard-form columns. */
struct VariableMap
{
    Rational offset;
    std::vector<std::pair<std::size_t, Rational>> terms;
};

class Tableau
{
    public:
        Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis)
            : rows_(std::move(rows)), basis_(std::move(basis)),
              width_(rows_.empty() ? 0 : rows_.front().size() - 1) {}

        std::size_t width() const { return width_; }
        std::size_t height() const { return rows_.size(); }
        const std::vector<std::size_t>& basis() const { return basis_; }
        const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
        const Rational& rhs(std::size_t i) const { return rows_[i][width_]; }

        /**
         * Minimise `cost` over the current basis, entering only columns flagged in
         * `allowed`. Returns false if unbounded.
         */
        bool minimise(const std::vector<Rational>& cost, const std::vector<char>& allowed)
        {
            std::vector<Rational> reduced(width_);
            auto refresh = [&] {
                for (std::size_t j = 0; j < width_; ++j)
                {
                    Rational r = cost[j];
                    for (std::size_t i = 0; i < rows_.size(); ++i)
                        if (!is_zero(rows_[i][j]))
                            r -= cost[basis_[i]] * rows_[i][j];
                    reduced[j] = r;
                }
            };
            refresh();
            while (true)
            {
                std::size_t enter = width_;
                for (std::size_t j = 0; j < width_; ++j)
                    if (allowed[j] && reduced[j] < 0)
                    {
                        enter = j;
                        break;
                    }
                if (enter == width_)
                    return true;
                std::size_t leave = rows_.size();
                Rational best_ratio;
                for (std::size_t i = 0; i < rows_.size(); ++i)
                {
                    if (rows_[i][enter] <= 0)
                        continue;
                    Rational ratio = rows_[i][width_] / rows_[i][enter];
                    if (leave == rows_.size() || ratio < best_ratio ||
                        (ratio == best_ratio && basis_[i] < basis_[leave]))
                    {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
                if (leave == rows_.size())
                    return false;
                pivot(leave, enter);
                const Rational factor = reduced[enter];
                for (std::size_t j = 0; j < width_; ++j)
                    if (!is_zero(rows_[leave][j]))
                        reduced[j] -= factor * rows_[leave][j];
            }
        }

        void pivot(std::size_t r, std::size_t c)
        {
            const Rational p = rows_[r][c];
            for (auto& v : rows_[r])
                if (!is_zero(v))
                    v /= p;
            for (std::size_t i = 0; i < rows_.size(); ++i)
            {
                if (i == r || is_zero(rows_[i][c]))
                    continue;
                const Rational f = rows_[i][c];
                for (std::size_t j = 0; j <= width_; ++j)
                    if (!is_zero(rows_[r][j]))
                        rows_[i][j] -= f * rows_[r][j];
            }
            basis_[r] = c;
        }

    private:
        static bool is_zero(const Rational& v) { return v.is_zero(); }

        std::vector<std::vector<Rational>> rows_;
        std::vector<std::size_t> basis_;
        std::size_t width_;
};

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    return s;
}

inline bool satisfies(const Rational& lhs, Relation rel, const Rational& rhs)
{
    switch (rel)
    {
        case Relation::LessEqual: return lhs <= rhs;
        case Relation::GreaterEqual: return lhs >= rhs;
        case Relation::Equal: return lhs == rhs;
    }
    return false;
}

}   // namespace detail

/** Exact primal feasibility of `x` (constraints and variable bounds). */
inline bool is_feasible(const LpProblem& p, const std::vector<Rational>& x)
{
    if (x.size() != p.objective.size())
        return false;
    for (const auto& c : p.constraints)
        if (!detail::satisfies(detail::dot(c.coefficients, x), c.relation, c.rhs))
            return false;
    for (std::size_t j = 0; j < x.size(); ++j)
    {
        const VariableBounds b = p.bounds.empty() ? VariableBounds{} : p.bounds[j];
        if ((b.lower && x[j] < *b.lower) || (b.upper && x[j] > *b.upper))
            return false;
    }
    return true;
}

/**
 * Replays an optimal solution of a problem whose variables are all x >= 0:
 * primal feasibility, dual sign conditions, dual feasibility and equality
 * of the two objective values (which implies complementary slackness).
 */
inline bool verify_certificate(const LpProblem& p, const LpSolution& s)
{
    if (s.status != LpStatus::Optimal || !is_feasible(p, s.primal) || s.dual.size() != p.constraints.size())
        return false;
    for (const auto& b : p.bounds)
        if (!b.lower || *b.lower != 0 || b.upper)
            return false;
    if (detail::dot(p.objective, s.primal) != s.optimum)
        return false;
    const bool minimise = p.sense == Sense::Minimize;
    Rational dual_value = 0;
    std::vector<Rational> column(p.objective.size(), Rational(0));
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
    {
        const auto& c = p.constraints[i];
        const Rational& y = s.dual[i];
        if (c.relation == Relation::GreaterEqual && (minimise ? y < 0 : y > 0))
            return false;
        if (c.relation == Relation::LessEqual && (minimise ? y > 0 : y < 0))
            return false;
        dual_value += c.rhs * y;
        for (std::size_t j = 0; j < column.size(); ++j)
            if (!c.coefficients[j].is_zero())
                column[j] += c.coefficients[j] * y;
    }
    for (std::size_t j = 0; j < column.size(); ++j)
        if (minimise ? column[j] > p.objective[j] : column[j] < p.objective[j])
            return false;
    return dual_value == s.optimum;
}

/** Exact two-phase simplex; deterministic, terminates by Bland's rule. */
inline LpSolution solve_lp(const LpProblem& p)
{
    const std::size_t n = p.objective.size();
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
        if (p.constraints[i].coefficients.size() != n)
            throw DomainError("solve_lp: constraint " + std::to_string(i) + " has the wrong length");
    if (!p.bounds.empty() && p.bounds.size() != n)
        throw DomainError("solve_lp: bounds must be empty or one per variable");

    // Substitute variables so every standard-form column is >= 0.
    std::vector<detail::VariableMap> vars(n);
    std::size_t cols = 0;
    struct BoundRow
    {
        std::size_t column;
        Rational limit;
    };
    std::vector<BoundRow> bound_rows;
    for (std::size_t j = 0; j < n; ++j)
    {
        const VariableBounds b = p.bounds.empty() ? VariableBounds{} : p.bounds[j];
        if (b.lower)
        {
            if (b.upper && *b.upper < *b.lower)
                return LpSolution{LpStatus::Infeasible, 0, {}, {}};
            vars[j].offset = *b.lower;
            vars[j].terms.push_back({cols, Rational(1)});
            if (b.upper)
                bound_rows.push_back({cols, *b.upper - *b.lower});
            ++cols;
        }
        else if (b.upper)
        {
            vars[j].offset = *b.upper;
            vars[j].terms.push_back({cols++, Rational(-1)});
        }
        else
        {
            vars[j].terms.push_back({cols++, Rational(1)});
            vars[j].terms.push_back({cols++, Rational(-1)});
        }
    }
    const std::size_t structural = cols;

    struct Row
    {
        std::vector<Rational> a;
        Relation rel;
        Rational b;
        bool flipped = false;
    };
    std::vector<Row> rows;
    for (const auto& c : p.constraints)
    {
        Row r{std::vector<Rational>(structural, Rational(0)), c.relation, c.rhs};
        for (std::size_t j = 0; j < n; ++j)
        {
            if (c.coefficients[j].is_zero())
                continue;
            r.b -= c.coefficients[j] * vars[j].offset;
            for (const auto& [k, coef] : vars[j].terms)
                r.a[k] += c.coefficients[j] * coef;
        }
        rows.push_back(std::move(r));
    }
    for (const auto& br : bound_rows)
    {
        Row r{std::vector<Rational>(structural, Rational(0)), Relation::LessEqual, br.limit};
        r.a[br.column] = 1;
        rows.push_back(std::move(r));
    }
    for (auto& r : rows)
        if (r.b < 0)
        {
            for (auto& v : r.a)
                v = -v;
            r.b = -r.b;
            r.flipped = true;
            if (r.rel == Relation::LessEqual)
                r.rel = Relation::GreaterEqual;
            else if (r.rel == Relation::GreaterEqual)
                r.rel = Relation::LessEqual;
        }

    const std::size_t m = rows.size();
    std::size_t slack_count = 0, artificial_count = 0;
    for (const auto& r : rows)
    {
        if (r.rel != Relation::Equal)
            ++slack_count;
        if (r.rel != Relation::LessEqual)
            ++artificial_count;
    }
    const std::size_t width = structural + slack_count + artificial_count;
    const std::size_t first_artificial = structural + slack_count;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1, Rational(0)));
    std::vector<std::size_t> basis(m), identity_column(m);
    std::vector<std::pair<std::size_t, int>> slack_owner;
    std::size_t next_slack = structural, next_art = first_artificial;
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = 0; j < structural; ++j)
            t[i][j] = rows[i].a[j];
        t[i][width] = rows[i].b;
        if (rows[i].rel == Relation::LessEqual)
        {
            t[i][next_slack] = 1;
            slack_owner.push_back({i, 1});
            basis[i] = identity_column[i] = next_slack++;
        }
        else
        {
            if (rows[i].rel == Relation::GreaterEqual)
            {
                t[i][next_slack++] = -1;
                slack_owner.push_back({i, -1});
            }
            t[i][next_art] = 1;
            basis[i] = identity_column[i] = next_art++;
        }
    }

    detail::Tableau tab(std::move(t), std::move(basis));
    std::vector<char> allowed(width, 1);
    if (artificial_count > 0)
    {
        std::vector<Rational> phase1(width, Rational(0));
        for (std::size_t j = first_artificial; j < width; ++j)
            phase1[j] = 1;
        tab.minimise(phase1, allowed);
        Rational infeasibility = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis()[i] >= first_artificial)
                infeasibility += tab.rhs(i);
        if (infeasibility > 0)
            return LpSolution{LpStatus::Infeasible, 0, {}, {}};
        for (std::size_t i = 0; i < m; ++i)
        {
            if (tab.basis()[i] < first_artificial)
                continue;
            for (std::size_t j = 0; j < first_artificial; ++j)
                if (!tab.at(i, j).is_zero())
                {
                    tab.pivot(i, j);
                    break;
                }
        }
        for (std::size_t j = first_artificial; j < width; ++j)
            allowed[j] = 0;
    }

    const bool maximise = p.sense == Sense::Maximize;
    std::vector<Rational> cost(width, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
    {
        const Rational c = maximise ? Rational(-p.objective[j]) : p.objective[j];
        for (const auto& [k, coef] : vars[j].terms)
            cost[k] += c * coef;
    }
    if (!tab.minimise(cost, allowed))
        return LpSolution{LpStatus::Unbounded, 0, {}, {}};

    std::vector<Rational> xs(width, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        xs[tab.basis()[i]] = tab.rhs(i);

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.primal.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
    {
        Rational v = vars[j].offset;
        for (const auto& [k, coef] : vars[j].terms)
            v += coef * xs[k];
        sol.primal[j] = v;
    }
    sol.optimum = detail::dot(p.objective, sol.primal);

    // y = c_B B^{-1}; column i of B^{-1} sits under row i's initial identity column.
    std::vector<Rational> y(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
        {
            const Rational& entry = tab.at(k, identity_column[i]);
            if (!entry.is_zero())
                y[i] += cost[tab.basis()[k]] * entry;
        }

    // Standard-form certificate: reduced costs nonnegative and b.y = c.x.
    Rational by = 0, cx = 0;
    for (std::size_t i = 0; i < m; ++i)
        by += rows[i].b * y[i];
    for (std::size_t j = 0; j < first_artificial; ++j)
    {
        cx += cost[j] * xs[j];
        Rational col = 0;
        if (j < structural)
        {
            for (std::size_t i = 0; i < m; ++i)
                if (!rows[i].a[j].is_zero())
                    col += rows[i].a[j] * y[i];
        }
        else
        {
            const auto [row, sign] = slack_owner[j - structural];
            col = sign * y[row];
        }
        if (col > cost[j])
            throw std::logic_error("solve_lp: dual certificate failed (reduced cost)");
    }
    if (by != cx)
        throw std::logic_error("solve_lp: dual certificate failed (objective gap)");

    sol.dual.assign(p.constraints.size(), Rational(0));
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
    {
        Rational v = rows[i].flipped ? Rational(-y[i]) : y[i];
        sol.dual[i] = maximise ? Rational(-v) : v;
    }
    if (!is_feasible(p, sol.primal))
        throw std::logic_error("solve_lp: primal solution failed replay");
    return sol;
}

// ---------------------------------------------------------------------------
// Transversals and packings

struct FractionalResult
{
    Rational value;
    /** Optimal primal weights (per point for transversals, per set for packings). */
    std::vector<Rational> weights;
    /** Optimal dual weights: a packing certificate for transversals and vice versa. */
    std::vector<Rational> dual_weights;
};

namespace detail {

inline void require_nonempty_sets(const SetSystem& s, const char* op)
{
    for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k].empty())
            throw InfeasibleError(std::string(op) + ": set " + std::to_string(k) + " is empty");
}

inline LpProblem transversal_lp(const SetSystem& s)
{
    LpProblem p;
    p.sense = Sense::Minimize;
    p.objective.assign(s.ground_size(), Rational(1));
    for (const auto& set : s.sets())
    {
        Constraint c{std::vector<Rational>(s.ground_size(), Rational(0)), Relation::GreaterEqual, Rational(1)};
        for (Index x : set)
            c.coefficients[x] = 1;
        p.constraints.push_back(std::move(c));
    }
    return p;
}

inline LpProblem packing_lp(const SetSystem& s)
{
    LpProblem p;
    p.sense = Sense::Maximize;
    p.objective.assign(s.size(), Rational(1));
    for (Index x = 0; x < s.ground_size(); ++x)
    {
        Constraint c{std::vector<Rational>(s.size(), Rational(0)), Relation::LessEqual, Rational(1)};
        for (std::size_t k = 0; k < s.size(); ++k)
            if (std::binary_search(s[k].begin(), s[k].end(), x))
                c.coefficients[k] = 1;
        p.constraints.push_back(std::move(c));
    }
    return p;
}

}   // namespace detail

/**
 * τ*(S): minimum of sum t(x) subject to sum_{x in S} t(x) >= 1 for every
 * member and t >= 0. The empty family has τ* = 0. Throws InfeasibleError if
 * some member is empty.
 */
inline FractionalResult fractional_transversal(const SetSystem& s)
{
    detail::require_nonempty_sets(s, "fractional_transversal");
    if (s.size() == 0)
        return {Rational(0), std::vector<Rational>(s.ground_size(), Rational(0)), {}};
    const auto lp = detail::transversal_lp(s);
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal || !verify_certificate(lp, sol))
        throw std::logic_error("fractional_transversal: LP did not certify");
    return {sol.optimum, std::move(sol.primal), std::move(sol.dual)};
}

/** ν*(S): maximum of sum f(S) subject to sum_{S ∋ x} f(S) <= 1 per point, f >= 0. */
inline FractionalResult fractional_packing(const SetSystem& s)
{
    detail::require_nonempty_sets(s, "fractional_packing");
    if (s.size() == 0)
        return {Rational(0), {}, std::vector<Rational>(s.ground_size(), Rational(0))};
    const auto lp = detail::packing_lp(s);
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal || !verify_certificate(lp, sol))
        throw std::logic_error("fractional_packing: LP did not certify");
    return {sol.optimum, std::move(sol.primal), std::move(sol.dual)};
}

/** True when `t` meets every member of `s`. */
inline bool is_transversal(const SetSystem& s, const IndexSet& t)
{
    return std::all_of(s.sets().begin(), s.sets().end(), [&](const IndexSet& set) {
        return std::any_of(t.begin(), t.end(),
                           [&](Index x) { return std::binary_search(set.begin(), set.end(), x); });
    });
}

/** A minimum transversal, by branch-and-bound with ⌈τ*⌉ as the root bound. */
inline IndexSet minimum_transversal(const SetSystem& s)
{
    detail::require_nonempty_sets(s, "transversal_number");
    if (s.size() == 0)
        return {};
    const auto lower = fractional_transversal(s).value;
    return minimum_hitting_set(s.ground_size(), s.sets(), ceil_of(lower).convert_to<std::size_t>());
}

/** τ(S): the minimum size of a transversal. */
inline std::size_t transversal_number(const SetSystem& s)
{
    return minimum_transversal(s).size();
}

}   // namespace fuzzyvc
