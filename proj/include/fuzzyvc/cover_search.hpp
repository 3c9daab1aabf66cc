#pragma once

// Exact branch-and-bound searches shared by the transversal, covering-number,
// disambiguation and net code: minimum hitting set and maximum independent set.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fuzzyvc/combinatorics.hpp"
#include "fuzzyvc/errors.hpp"

namespace fuzzyvc {

using Bits = boost::dynamic_bitset<>;

namespace detail {

class HittingSearch
{
    public:
        HittingSearch(std::size_t point_count, const std::vector<std::vector<Index>>& sets)
            : set_count_(sets.size())
        {
            // Points with identical or dominated incidence are dropped; a dominating
            // point can always replace them in an optimal solution.
            std::vector<Bits> incidence(point_count, Bits(set_count_));
            for (std::size_t s = 0; s < sets.size(); ++s)
                for (Index p : sets[s])
                    incidence[p].set(s);
            for (std::size_t p = 0; p < point_count; ++p)
            {
                if (incidence[p].none())
                    continue;
                bool dominated = false;
                for (std::size_t o = 0; o < point_count && !dominated; ++o)
                {
                    if (o == p || incidence[o].none())
                        continue;
                    if (incidence[p].is_subset_of(incidence[o]) &&
                        (incidence[p] != incidence[o] || o < p))
                        dominated = true;
                }
                if (!dominated)
                {
                    points_.push_back(p);
                    incidence_.push_back(incidence[p]);
                }
            }
            members_.assign(set_count_, {});
            member_bits_.assign(set_count_, Bits(points_.size()));
            for (std::size_t k = 0; k < points_.size(); ++k)
                for (std::size_t s = incidence_[k].find_first(); s != Bits::npos; s = incidence_[k].find_next(s))
                {
                    members_[s].push_back(k);
                    member_bits_[s].set(k);
                }
            for (auto& m : members_)
                std::stable_sort(m.begin(), m.end(), [&](std::size_t a, std::size_t b) {
                    return incidence_[a].count() > incidence_[b].count();
                });
        }

        std::vector<Index> run(std::size_t lower_bound)
        {
            for (std::size_t s = 0; s < set_count_; ++s)
                if (members_[s].empty())
                    throw InfeasibleError("hitting set: member set " + std::to_string(s) + " is empty");
            lower_bound_ = lower_bound;
            best_ = greedy();
            if (best_.size() > lower_bound_)
            {
                std::vector<std::size_t> chosen;
                recurse(Bits(set_count_), chosen);
            }
            std::vector<Index> result;
            for (std::size_t k : best_)
                result.push_back(points_[k]);
            std::sort(result.begin(), result.end());
            return result;
        }

    private:
        std::vector<std::size_t> greedy() const
        {
            Bits covered(set_count_);
            std::vector<std::size_t> chosen;
            while (!covered.all())
            {
                std::size_t best_k = 0, best_gain = 0;
                for (std::size_t k = 0; k < points_.size(); ++k)
                {
                    const std::size_t gain = (incidence_[k] - covered).count();
                    if (gain > best_gain)
                    {
                        best_gain = gain;
                        best_k = k;
                    }
                }
                chosen.push_back(best_k);
                covered |= incidence_[best_k];
            }
            return chosen;
        }

        std::size_t disjoint_bound(const Bits& covered) const
        {
            Bits used(points_.size());
            std::size_t count = 0;
            for (std::size_t s = 0; s < set_count_; ++s)
            {
                if (covered.test(s) || member_bits_[s].intersects(used))
                    continue;
                used |= member_bits_[s];
                ++count;
            }
            return count;
        }

        void recurse(const Bits& covered, std::vector<std::size_t>& chosen)
        {
            if (best_.size() <= lower_bound_)
                return;
            if (covered.all())
            {
                if (chosen.size() < best_.size())
                    best_ = chosen;
                return;
            }
            if (chosen.size() + std::max<std::size_t>(1, disjoint_bound(covered)) >= best_.size())
                return;
            std::size_t pick = set_count_;
            for (std::size_t s = 0; s < set_count_; ++s)
                if (!covered.test(s) && (pick == set_count_ || members_[s].size() < members_[pick].size()))
                    pick = s;
            for (std::size_t k : members_[pick])
            {
                chosen.push_back(k);
                recurse(covered | incidence_[k], chosen);
                chosen.pop_back();
            }
        }

        std::size_t set_count_;
        std::vector<Index> points_;
        std::vector<Bits> incidence_;
        std::vector<std::vector<std::size_t>> members_;
        std::vector<Bits> member_bits_;
        std::vector<std::size_t> best_;
        std::size_t lower_bound_ = 0;
};

}   // namespace detail

/**
 * Minimum-cardinality set of points meeting every set in `sets` (points are
 * 0..point_count-1). `lower_bound` is a proven bound on the optimum; the
 * search stops as soon as an incumbent reaches it. Throws InfeasibleError if
 * some set is empty. The returned indices are sorted.
 */
inline std::vector<Index> minimum_hitting_set(std::size_t point_count,
                                              const std::vector<std::vector<Index>>& sets,
                                              std::size_t lower_bound = 0)
{
    if (sets.empty())
        return {};
    detail::HittingSearch search(point_count, sets);
    return search.run(lower_bound);
}

/** Greedy hitting set: repeatedly take the smallest-index point meeting the most unhit sets. */
inline std::vector<Index> greedy_hitting_set(std::size_t point_count,
                                             const std::vector<std::vector<Index>>& sets)
{
    std::vector<Bits> incidence(point_count, Bits(sets.size()));
    for (std::size_t s = 0; s < sets.size(); ++s)
    {
        if (sets[s].empty())
            throw InfeasibleError("hitting set: member set " + std::to_string(s) + " is empty");
        for (Index p : sets[s])
            incidence[p].set(s);
    }
    Bits covered(sets.size());
    std::vector<Index> chosen;
    while (!covered.all())
    {
        std::size_t best = 0, best_gain = 0;
        for (std::size_t p = 0; p < point_count; ++p)
        {
            const std::size_t gain = (incidence[p] - covered).count();
            if (gain > best_gain)
            {
                best_gain = gain;
                best = p;
            }
        }
        chosen.push_back(best);
        covered |= incidence[best];
    }
    return chosen;
}

/**
 * Maximum independent set of an undirected graph given by adjacency bitsets.
 * Returns the sorted vertex list; exact branch-and-bound.
 */
inline std::vector<Index> maximum_independent_set(const std::vector<Bits>& adjacency)
{
    const std::size_t n = adjacency.size();
    std::vector<Index> best, current;
    auto recurse = [&](auto&& self, Bits candidates) -> void {
        if (current.size() + candidates.count() <= best.size())
            return;
        const std::size_t v = candidates.find_first();
        if (v == Bits::npos)
        {
            best = current;
            return;
        }
        current.push_back(v);
        self(self, candidates - adjacency[v] - Bits(n).set(v));
        current.pop_back();
        Bits without = candidates;
        without.reset(v);
        self(self, without);
    };
    Bits all(n);
    all.set();
    recurse(recurse, all);
    return best;
}

}   // namespace fuzzyvc
