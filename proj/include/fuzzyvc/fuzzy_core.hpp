#pragma once

/**
 * Fuzzy set systems, fuzzy relations and finite function classes, with exact
 * traces, shatter functions and VC-type dimensions.
 *
 * A fuzzy set S on a ground set X = {0, ..., n-1} is a pair (plus, minus) of
 * disjoint index sets: points in `plus` belong to S, points in `minus` do not,
 * and membership of every other point is undetermined. A fuzzy set traces the
 * pattern Z on Y only when it decides every point of Y (plus ∩ Y = Z and
 * minus ∩ Y = Y \ Z).
 *
 * Everything here is immutable after construction and all operations are pure.
 * Exhaustive operations run on 64-bit masks and are limited to ground sets of
 * at most 64 points.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyvc/combinatorics.hpp"
#include "fuzzyvc/cover_search.hpp"
#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/rational.hpp"

namespace fuzzyvc {

/** Sorted, duplicate-free list of point indices. */
using IndexSet = std::vector<Index>;

inline constexpr std::size_t kMaxMaskGround = 64;

struct FuzzySet
{
    IndexSet plus;
    IndexSet minus;

    friend bool operator==(const FuzzySet&, const FuzzySet&) = default;
};

namespace detail {

inline void check_index_set(const IndexSet& s, std::size_t ground, const std::string& what)
{
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (s[i] >= ground)
            throw DomainError(what + ": index " + std::to_string(s[i]) + " outside ground set of size " +
                              std::to_string(ground));
        if (i > 0 && s[i] <= s[i - 1])
            throw DomainError(what + ": indices must be strictly ascending");
    }
}

inline bool disjoint(const IndexSet& a, const IndexSet& b)
{
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size())
    {
        if (a[i] == b[j])
            return false;
        (a[i] < b[j]) ? ++i : ++j;
    }
    return true;
}

inline std::uint64_t to_mask(const IndexSet& s)
{
    std::uint64_t m = 0;
    for (Index i : s)
        m |= std::uint64_t{1} << i;
    return m;
}

inline IndexSet complement(const IndexSet& s, std::size_t ground)
{
    IndexSet out;
    std::size_t j = 0;
    for (Index i = 0; i < ground; ++i)
    {
        if (j < s.size() && s[j] == i)
            ++j;
        else
            out.push_back(i);
    }
    return out;
}

inline void require_mask_ground(std::size_t ground, const char* op)
{
    if (ground > kMaxMaskGround)
        throw CapacityError(std::string(op) + ": ground set of size " + std::to_string(ground) +
                            " exceeds the exhaustive limit of " + std::to_string(kMaxMaskGround));
}

}   // namespace detail

/** A crisp set system: an ordered list of subsets of {0, ..., ground_size-1}. */
class SetSystem
{
    public:
        SetSystem() = default;

        SetSystem(std::size_t ground_size, std::vector<IndexSet> sets)
            : ground_size_(ground_size), sets_(std::move(sets))
        {
            for (std::size_t k = 0; k < sets_.size(); ++k)
                detail::check_index_set(sets_[k], ground_size_, "sets[" + std::to_string(k) + "]");
        }

        std::size_t ground_size() const noexcept { return ground_size_; }
        std::size_t size() const noexcept { return sets_.size(); }
        const std::vector<IndexSet>& sets() const noexcept { return sets_; }
        const IndexSet& operator[](std::size_t k) const { return sets_[k]; }

        friend bool operator==(const SetSystem&, const SetSystem&) = default;

    private:
        std::size_t ground_size_ = 0;
        std::vector<IndexSet> sets_;
};

/**
 * An ordered list of fuzzy sets on {0, ..., ground_size-1}. Duplicates are
 * kept: the list position is the identity of a set.
 */
class FuzzySetSystem
{
    public:
        FuzzySetSystem() = default;

        FuzzySetSystem(std::size_t ground_size, std::vector<FuzzySet> sets)
            : ground_size_(ground_size), sets_(std::move(sets))
        {
            for (std::size_t k = 0; k < sets_.size(); ++k)
            {
                const std::string where = "sets[" + std::to_string(k) + "]";
                detail::check_index_set(sets_[k].plus, ground_size_, where + ".plus");
                detail::check_index_set(sets_[k].minus, ground_size_, where + ".minus");
                if (!detail::disjoint(sets_[k].plus, sets_[k].minus))
                    throw DomainError(where + ": plus and minus must be disjoint");
            }
        }

        /** The crisp system viewed as fuzzy sets (S, X \ S). */
        static FuzzySetSystem from_crisp(const SetSystem& crisp)
        {
            std::vector<FuzzySet> sets;
            for (const auto& s : crisp.sets())
                sets.push_back({s, detail::complement(s, crisp.ground_size())});
            return FuzzySetSystem(crisp.ground_size(), std::move(sets));
        }

        std::size_t ground_size() const noexcept { return ground_size_; }
        std::size_t size() const noexcept { return sets_.size(); }
        bool empty() const noexcept { return sets_.empty(); }
        const std::vector<FuzzySet>& sets() const noexcept { return sets_; }
        const FuzzySet& operator[](std::size_t k) const { return sets_[k]; }

        friend bool operator==(const FuzzySetSystem&, const FuzzySetSystem&) = default;

    private:
        std::size_t ground_size_ = 0;
        std::vector<FuzzySet> sets_;
};

enum class Membership : char { Star, Plus, Minus };

/**
 * A fuzzy relation between X = {0..x_size-1} and Y = {0..y_size-1}, stored row
 * major (row x, column y).
 */
class FuzzyRelation
{
    public:
        FuzzyRelation() = default;

        FuzzyRelation(std::size_t x_size, std::size_t y_size, std::vector<Membership> entries)
            : x_size_(x_size), y_size_(y_size), entries_(std::move(entries))
        {
            if (entries_.size() != x_size_ * y_size_)
                throw DomainError("fuzzy relation: entry count does not match " + std::to_string(x_size_) +
                                  " x " + std::to_string(y_size_));
        }

        /** Relation X x F of a fuzzy set system: entry (x, S) is Plus iff x ∈ S+, Minus iff x ∈ S-. */
        static FuzzyRelation of_system(const FuzzySetSystem& f)
        {
            std::vector<Membership> e(f.ground_size() * f.size(), Membership::Star);
            for (std::size_t s = 0; s < f.size(); ++s)
            {
                for (Index x : f[s].plus)
                    e[x * f.size() + s] = Membership::Plus;
                for (Index x : f[s].minus)
                    e[x * f.size() + s] = Membership::Minus;
            }
            return FuzzyRelation(f.ground_size(), f.size(), std::move(e));
        }

        std::size_t x_size() const noexcept { return x_size_; }
        std::size_t y_size() const noexcept { return y_size_; }
        Membership at(std::size_t x, std::size_t y) const { return entries_[x * y_size_ + y]; }
        const std::vector<Membership>& entries() const noexcept { return entries_; }

        FuzzyRelation transposed() const
        {
            std::vector<Membership> e(entries_.size());
            for (std::size_t x = 0; x < x_size_; ++x)
                for (std::size_t y = 0; y < y_size_; ++y)
                    e[y * x_size_ + x] = at(x, y);
            return FuzzyRelation(y_size_, x_size_, std::move(e));
        }

        /** R^Y: one fuzzy set on X per column y. */
        FuzzySetSystem column_system() const
        {
            std::vector<FuzzySet> sets(y_size_);
            for (std::size_t y = 0; y < y_size_; ++y)
                for (std::size_t x = 0; x < x_size_; ++x)
                {
                    if (at(x, y) == Membership::Plus)
                        sets[y].plus.push_back(x);
                    else if (at(x, y) == Membership::Minus)
                        sets[y].minus.push_back(x);
                }
            return FuzzySetSystem(x_size_, std::move(sets));
        }

        /** R_X: one fuzzy set on Y per row x. */
        FuzzySetSystem row_system() const { return transposed().column_system(); }

        friend bool operator==(const FuzzyRelation&, const FuzzyRelation&) = default;

    private:
        std::size_t x_size_ = 0;
        std::size_t y_size_ = 0;
        std::vector<Membership> entries_;
};

/** A finite class of functions X -> [0,1], stored as exact rational rows. */
class FunctionClass
{
    public:
        FunctionClass() = default;

        FunctionClass(std::size_t point_count, std::vector<std::vector<Rational>> rows)
            : point_count_(point_count), rows_(std::move(rows))
        {
            for (std::size_t k = 0; k < rows_.size(); ++k)
            {
                if (rows_[k].size() != point_count_)
                    throw DomainError("values[" + std::to_string(k) + "]: expected " + std::to_string(point_count_) +
                                      " values");
                for (std::size_t x = 0; x < point_count_; ++x)
                    if (rows_[k][x] < 0 || rows_[k][x] > 1)
                        throw DomainError("values[" + std::to_string(k) + "][" + std::to_string(x) +
                                          "]: value outside [0,1]");
            }
        }

        std::size_t point_count() const noexcept { return point_count_; }
        std::size_t size() const noexcept { return rows_.size(); }
        const std::vector<std::vector<Rational>>& rows() const noexcept { return rows_; }
        const std::vector<Rational>& operator[](std::size_t k) const { return rows_[k]; }

        /** Q(x̄): the rows restricted to the tuple `xbar`, one vector per row. */
        std::vector<std::vector<Rational>> evaluate(const std::vector<Index>& xbar) const
        {
            std::vector<std::vector<Rational>> out;
            out.reserve(rows_.size());
            for (const auto& row : rows_)
            {
                std::vector<Rational> v;
                v.reserve(xbar.size());
                for (Index x : xbar)
                {
                    if (x >= point_count_)
                        throw DomainError("point index " + std::to_string(x) + " out of range");
                    v.push_back(row[x]);
                }
                out.push_back(std::move(v));
            }
            return out;
        }

        friend bool operator==(const FunctionClass&, const FunctionClass&) = default;

    private:
        std::size_t point_count_ = 0;
        std::vector<std::vector<Rational>> rows_;
};

// ---------------------------------------------------------------------------
// Traces and shattering

namespace detail {

struct MaskedSet
{
    std::uint64_t plus;
    std::uint64_t minus;
};

inline std::vector<MaskedSet> masks_of(const FuzzySetSystem& f)
{
    std::vector<MaskedSet> out;
    out.reserve(f.size());
    for (const auto& s : f.sets())
        out.push_back({to_mask(s.plus), to_mask(s.minus)});
    return out;
}

/** Number of distinct patterns traced on the mask `y`; stops counting at `cap`. */
inline std::size_t trace_count(const std::vector<MaskedSet>& sets, std::uint64_t y, std::size_t cap,
                               std::vector<std::uint64_t>& scratch)
{
    scratch.clear();
    for (const auto& s : sets)
        if (((s.plus | s.minus) & y) == y)
            scratch.push_back(s.plus & y);
    std::sort(scratch.begin(), scratch.end());
    const auto count = static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
    return std::min(count, cap);
}

inline std::uint64_t mask_of_indices(const std::vector<Index>& idx)
{
    std::uint64_t m = 0;
    for (Index i : idx)
        m |= std::uint64_t{1} << i;
    return m;
}

}   // namespace detail

/**
 * F ∩ Y: the distinct patterns Z ⊆ Y traced by members of `f`, each a sorted
 * index set. `y` must be a subset of the ground set.
 */
inline std::vector<IndexSet> traces(const FuzzySetSystem& f, const IndexSet& y)
{
    detail::check_index_set(y, f.ground_size(), "traces: Y");
    std::vector<IndexSet> out;
    for (const auto& s : f.sets())
    {
        IndexSet z;
        bool decided = true;
        for (Index p : y)
        {
            if (std::binary_search(s.plus.begin(), s.plus.end(), p))
                z.push_back(p);
            else if (!std::binary_search(s.minus.begin(), s.minus.end(), p))
            {
                decided = false;
                break;
            }
        }
        if (decided)
            out.push_back(std::move(z));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool shatters(const FuzzySetSystem& f, const IndexSet& y)
{
    return traces(f, y).size() == (std::size_t{1} << y.size());
}

/** π_F(n): the largest number of patterns traced on an n-point subset. Exhaustive. */
inline std::size_t shatter_function(const FuzzySetSystem& f, std::size_t n)
{
    if (n > f.ground_size())
        throw DomainError("shatter_function: n = " + std::to_string(n) + " exceeds ground size " +
                          std::to_string(f.ground_size()));
    detail::require_mask_ground(f.ground_size(), "shatter_function");
    const auto sets = detail::masks_of(f);
    const std::size_t ceiling = n < 63 ? std::min<std::size_t>(f.size(), std::size_t{1} << n) : f.size();
    std::size_t best = 0;
    std::vector<std::uint64_t> scratch;
    for_each_combination(f.ground_size(), n, [&](const std::vector<Index>& idx) {
        best = std::max(best, detail::trace_count(sets, detail::mask_of_indices(idx), ceiling, scratch));
        return best < ceiling;
    });
    return best;
}

/**
 * Largest d with π_F(k) = 2^k for every k <= d. Absent for the empty family,
 * where no set traces even the empty pattern.
 */
inline std::optional<std::size_t> vc_dimension(const FuzzySetSystem& f)
{
    if (f.empty())
        return std::nullopt;
    detail::require_mask_ground(f.ground_size(), "vc_dimension");
    const auto sets = detail::masks_of(f);
    std::vector<std::uint64_t> scratch;
    // Shattered sets of size d are exactly the extensions of shattered sets of size d-1.
    std::vector<std::uint64_t> level{0};
    std::size_t d = 0;
    while (d + 1 <= f.ground_size() && d + 1 < 63 && (std::size_t{1} << (d + 1)) <= f.size())
    {
        const std::size_t full = std::size_t{1} << (d + 1);
        std::vector<std::uint64_t> next;
        for (std::uint64_t y : level)
        {
            const int top = y == 0 ? -1 : 63 - std::countl_zero(y);
            for (std::size_t p = static_cast<std::size_t>(top + 1); p < f.ground_size(); ++p)
            {
                const std::uint64_t cand = y | (std::uint64_t{1} << p);
                if (detail::trace_count(sets, cand, full, scratch) == full)
                    next.push_back(cand);
            }
        }
        if (next.empty())
            break;
        level = std::move(next);
        ++d;
    }
    return d;
}

/** F*: the system on the index set of F whose i-th fuzzy set collects the sets deciding point i. */
inline FuzzySetSystem dual_system(const FuzzySetSystem& f)
{
    return FuzzyRelation::of_system(f).transposed().column_system();
}

/** Inner system {S+} and outer system {X \ S-}, in list order. */
inline std::pair<SetSystem, SetSystem> inner_outer(const FuzzySetSystem& f)
{
    std::vector<IndexSet> inner, outer;
    for (const auto& s : f.sets())
    {
        inner.push_back(s.plus);
        outer.push_back(detail::complement(s.minus, f.ground_size()));
    }
    return {SetSystem(f.ground_size(), std::move(inner)), SetSystem(f.ground_size(), std::move(outer))};
}

// ---------------------------------------------------------------------------
// Function classes

/** Q_{r,s}: one fuzzy set ({q <= r}, {q >= s}) per row. Requires 0 <= r < s <= 1. */
inline FuzzySetSystem slice(const FunctionClass& q, const Rational& r, const Rational& s)
{
    if (!(r < s))
        throw DomainError("slice: need r < s");
    if (r < 0 || s > 1)
        throw DomainError("slice: need 0 <= r < s <= 1");
    std::vector<FuzzySet> sets;
    sets.reserve(q.size());
    for (const auto& row : q.rows())
    {
        FuzzySet fs;
        for (Index x = 0; x < q.point_count(); ++x)
        {
            if (row[x] <= r)
                fs.plus.push_back(x);
            else if (row[x] >= s)
                fs.minus.push_back(x);
        }
        sets.push_back(std::move(fs));
    }
    return FuzzySetSystem(q.point_count(), std::move(sets));
}

/** Q_{<=r} = {{x : q(x) <= r}}. */
inline SetSystem slice_inner(const FunctionClass& q, const Rational& r)
{
    std::vector<IndexSet> sets;
    for (const auto& row : q.rows())
    {
        IndexSet s;
        for (Index x = 0; x < q.point_count(); ++x)
            if (row[x] <= r)
                s.push_back(x);
        sets.push_back(std::move(s));
    }
    return SetSystem(q.point_count(), std::move(sets));
}

/** Q_{<s} = {{x : q(x) < s}}. */
inline SetSystem slice_outer(const FunctionClass& q, const Rational& s)
{
    std::vector<IndexSet> sets;
    for (const auto& row : q.rows())
    {
        IndexSet out;
        for (Index x = 0; x < q.point_count(); ++x)
            if (row[x] < s)
                out.push_back(x);
        sets.push_back(std::move(out));
    }
    return SetSystem(q.point_count(), std::move(sets));
}

namespace detail {

inline void check_gap(const Rational& eps, const char* op)
{
    if (eps <= 0 || eps > 1)
        throw DomainError(std::string(op) + ": eps must lie in (0, 1]");
}

}   // namespace detail

/**
 * Thresholds r at which vc(Q_{r,r+eps}) can attain its supremum over
 * [0, 1-eps]. Between consecutive breakpoints the inner sets are fixed and
 * the outer sets only shrink, so the left breakpoint dominates the open
 * interval; breakpoints are data values v and v - eps, plus both ends.
 */
inline std::vector<Rational> candidate_thresholds(const FunctionClass& q, const Rational& eps)
{
    const Rational hi = 1 - eps;
    std::vector<Rational> cand{Rational(0), hi};
    for (const auto& row : q.rows())
        for (const auto& v : row)
            for (const Rational& c : {v, Rational(v - eps)})
                if (c >= 0 && c <= hi)
                    cand.push_back(c);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

/** vc_eps(Q) = sup over r in [0, 1-eps] of vc(Q_{r,r+eps}); 0 for an empty class. */
inline std::size_t vc_eps(const FunctionClass& q, const Rational& eps)
{
    detail::check_gap(eps, "vc_eps");
    std::size_t best = 0;
    for (const auto& r : candidate_thresholds(q, eps))
        best = std::max(best, vc_dimension(slice(q, r, r + eps)).value_or(0));
    return best;
}

namespace detail {

/**
 * Exact fat-shattering search. For a column a and a witness value w, each
 * row is below (q(a) <= w - eps), above (q(a) >= w + eps) or neither. A
 * witness works for A iff every pattern on A is realised by some row. Any
 * valid witness can be moved to the midpoint of its feasible interval, whose
 * ends are realised values shifted by eps, so midpoints of value pairs
 * (and the values themselves) are a complete candidate list.
 */
class FatShatterSearch
{
    public:
        FatShatterSearch(const FunctionClass& q, const Rational& eps) : rows_(q.size())
        {
            for (Index a = 0; a < q.point_count(); ++a)
            {
                std::vector<Rational> cand;
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (std::size_t j = i; j < q.size(); ++j)
                        cand.push_back((q[i][a] + q[j][a]) / 2);
                std::sort(cand.begin(), cand.end());
                cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
                std::vector<std::vector<signed char>> states;
                for (const auto& w : cand)
                {
                    std::vector<signed char> st(rows_, 0);
                    for (std::size_t i = 0; i < rows_; ++i)
                    {
                        if (q[i][a] <= w - eps)
                            st[i] = 1;
                        else if (q[i][a] >= w + eps)
                            st[i] = -1;
                    }
                    // Only witnesses splitting the rows into both sides can take part.
                    if (std::find(st.begin(), st.end(), 1) != st.end() &&
                        std::find(st.begin(), st.end(), -1) != st.end())
                        states.push_back(std::move(st));
                }
                std::sort(states.begin(), states.end());
                states.erase(std::unique(states.begin(), states.end()), states.end());
                column_states_.push_back(std::move(states));
            }
        }

        std::size_t run()
        {
            std::size_t best = 0;
            const std::size_t columns = column_states_.size();
            for (std::size_t k = 1; k <= columns && k < 63 && (std::size_t{1} << k) <= rows_; ++k)
            {
                bool found = !for_each_combination(columns, k, [&](const std::vector<Index>& cols) {
                    std::vector<std::uint64_t> pattern(rows_, 0);
                    std::vector<char> alive(rows_, 1);
                    return !extend(cols, 0, pattern, alive);
                });
                if (!found)
                    break;
                best = k;
            }
            return best;
        }

    private:
        bool extend(const std::vector<Index>& cols, std::size_t depth, const std::vector<std::uint64_t>& pattern,
                    const std::vector<char>& alive)
        {
            if (depth == cols.size())
                return true;
            const std::size_t need = std::size_t{1} << (depth + 1);
            for (const auto& st : column_states_[cols[depth]])
            {
                std::vector<std::uint64_t> next_pattern(pattern);
                std::vector<char> next_alive(alive);
                for (std::size_t i = 0; i < rows_; ++i)
                {
                    if (!next_alive[i] || st[i] == 0)
                        next_alive[i] = 0;
                    else if (st[i] == 1)
                        next_pattern[i] |= std::uint64_t{1} << depth;
                }
                std::vector<std::uint64_t> seen;
                for (std::size_t i = 0; i < rows_; ++i)
                    if (next_alive[i])
                        seen.push_back(next_pattern[i]);
                std::sort(seen.begin(), seen.end());
                if (static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin()) < need)
                    continue;
                if (extend(cols, depth + 1, next_pattern, next_alive))
                    return true;
            }
            return false;
        }

        std::size_t rows_;
        std::vector<std::vector<std::vector<signed char>>> column_states_;
};

}   // namespace detail

/**
 * fs_eps(Q): the largest |A| for which some witness f : A -> [0,1] makes
 * (Q - f)_{-eps,eps} shatter A. Exact.
 */
inline std::size_t fat_shattering(const FunctionClass& q, const Rational& eps)
{
    detail::check_gap(eps, "fat_shattering");
    return detail::FatShatterSearch(q, eps).run();
}

// ---------------------------------------------------------------------------
// Strong disambiguation

enum class DisambiguationMode { Trivial, Greedy, Minimal };

inline constexpr std::size_t kMinimalDisambiguationLimit = 12;

/** True when the crisp set `c` strongly disambiguates `s`: s.plus ⊆ c and c ∩ s.minus = ∅. */
inline bool refines(const IndexSet& c, const FuzzySet& s)
{
    return std::includes(c.begin(), c.end(), s.plus.begin(), s.plus.end()) && detail::disjoint(c, s.minus);
}

/** True when every fuzzy set of `f` is refined by some member of `crisp`. */
inline bool is_strong_disambiguation(const SetSystem& crisp, const FuzzySetSystem& f)
{
    return std::all_of(f.sets().begin(), f.sets().end(), [&](const FuzzySet& s) {
        return std::any_of(crisp.sets().begin(), crisp.sets().end(),
                           [&](const IndexSet& c) { return refines(c, s); });
    });
}

namespace detail {

inline SetSystem greedy_disambiguation(const FuzzySetSystem& f)
{
    const std::size_t n = f.size();
    std::vector<char> done(n, 0);
    std::vector<IndexSet> out;
    auto merge = [](const IndexSet& a, const IndexSet& b) {
        IndexSet u;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
        return u;
    };
    while (std::find(done.begin(), done.end(), 0) != done.end())
    {
        IndexSet best_set;
        std::size_t best_gain = 0;
        for (std::size_t seed = 0; seed < n; ++seed)
        {
            if (done[seed])
                continue;
            // Grow the plus-closure of the seed by absorbing compatible pending sets.
            IndexSet c = f[seed].plus;
            IndexSet forbidden = f[seed].minus;
            for (std::size_t t = 0; t < n; ++t)
            {
                if (done[t] || t == seed)
                    continue;
                IndexSet grown = merge(c, f[t].plus);
                IndexSet grown_forbidden = merge(forbidden, f[t].minus);
                if (disjoint(grown, grown_forbidden))
                {
                    c = std::move(grown);
                    forbidden = std::move(grown_forbidden);
                }
            }
            std::size_t gain = 0;
            for (std::size_t t = 0; t < n; ++t)
                if (!done[t] && refines(c, f[t]))
                    ++gain;
            if (gain > best_gain)
            {
                best_gain = gain;
                best_set = c;
            }
        }
        for (std::size_t t = 0; t < n; ++t)
            if (!done[t] && refines(best_set, f[t]))
                done[t] = 1;
        out.push_back(std::move(best_set));
    }
    return SetSystem(f.ground_size(), std::move(out));
}

inline SetSystem minimal_disambiguation(const FuzzySetSystem& f, std::size_t limit)
{
    if (f.ground_size() > limit)
        throw CapacityError("strong_disambiguation(minimal): ground size " + std::to_string(f.ground_size()) +
                            " exceeds limit " + std::to_string(limit));
    if (f.empty())
        return SetSystem(f.ground_size(), {});
    const auto masks = masks_of(f);
    const std::uint64_t total = std::uint64_t{1} << f.ground_size();
    std::vector<std::uint64_t> candidates;
    std::vector<std::vector<Index>> refined_by(f.size());
    for (std::uint64_t c = 0; c < total; ++c)
    {
        bool useful = false;
        for (std::size_t s = 0; s < masks.size(); ++s)
            if ((masks[s].plus & ~c) == 0 && (masks[s].minus & c) == 0)
            {
                refined_by[s].push_back(candidates.size());
                useful = true;
            }
        if (useful)
            candidates.push_back(c);
    }
    const auto chosen = minimum_hitting_set(candidates.size(), refined_by);
    std::vector<IndexSet> out;
    for (Index k : chosen)
    {
        IndexSet s;
        for (Index p = 0; p < f.ground_size(); ++p)
            if (candidates[k] >> p & 1)
                s.push_back(p);
        out.push_back(std::move(s));
    }
    return SetSystem(f.ground_size(), std::move(out));
}

}   // namespace detail

/**
 * A crisp system strongly disambiguating `f`.
 *  - Trivial: S+ for every S, in list order (exactly |F| sets).
 *  - Greedy: repeatedly the grown plus-closure refining the most pending sets.
 *  - Minimal: exact minimum size over all crisp sets; ground size <= `limit`.
 */
inline SetSystem strong_disambiguation(const FuzzySetSystem& f, DisambiguationMode mode,
                                       std::size_t limit = kMinimalDisambiguationLimit)
{
    switch (mode)
    {
        case DisambiguationMode::Trivial:
            return inner_outer(f).first;
        case DisambiguationMode::Greedy:
            return detail::greedy_disambiguation(f);
        case DisambiguationMode::Minimal:
            return detail::minimal_disambiguation(f, limit);
    }
    throw DomainError("strong_disambiguation: unknown mode");
}

// ---------------------------------------------------------------------------
// Growth bounds

/** p_d(n) = sum_{k <= d} n^k. */
inline BigInt sauer_bound(std::size_t d, std::size_t n)
{
    BigInt sum = 0, term = 1;
    for (std::size_t k = 0; k <= d; ++k)
    {
        sum += term;
        term *= n;
    }
    return sum;
}

/** The classical sum_{k <= d} C(n, k); reported alongside, never asserted. */
inline BigInt binomial_sauer_bound(std::size_t d, std::size_t n)
{
    BigInt sum = 0;
    for (std::size_t k = 0; k <= d; ++k)
        sum += binomial(n, k);
    return sum;
}

}   // namespace fuzzyvc
