#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fuzzyvc/rational.hpp"

namespace fuzzyvc {

using Index = std::size_t;

/**
 * Visit every k-subset of {0, ..., n-1} in lexicographic order. The visitor
 * receives the sorted index vector and returns false to stop early.
 * Returns false iff the visitor stopped the enumeration.
 */
template <class Visitor>
bool for_each_combination(std::size_t n, std::size_t k, Visitor&& visit)
{
    if (k > n)
        return true;
    std::vector<Index> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true)
    {
        if (!visit(static_cast<const std::vector<Index>&>(idx)))
            return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

/**
 * Visit every multiset of size k drawn from {0, ..., n-1}, as a
 * non-decreasing index vector, in lexicographic order.
 */
template <class Visitor>
bool for_each_multiset(std::size_t n, std::size_t k, Visitor&& visit)
{
    if (n == 0)
        return k == 0 ? visit(std::vector<Index>{}) : true;
    std::vector<Index> idx(k, 0);
    while (true)
    {
        if (!visit(static_cast<const std::vector<Index>&>(idx)))
            return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - 1)
            --i;
        if (i == 0)
            return true;
        const Index next = idx[i - 1] + 1;
        for (std::size_t j = i - 1; j < k; ++j)
            idx[j] = next;
    }
}

inline BigInt binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt result = 1;
    for (std::size_t i = 0; i < k; ++i)
    {
        result *= (n - i);
        result /= (i + 1);
    }
    return result;
}

/** Number of distinct orderings of a sorted multiset: k! / prod(mult_i!). */
inline BigInt orderings_of(const std::vector<Index>& sorted_multiset)
{
    BigInt result = 1;
    std::size_t run = 0;
    for (std::size_t i = 0; i < sorted_multiset.size(); ++i)
    {
        run = (i > 0 && sorted_multiset[i] == sorted_multiset[i - 1]) ? run + 1 : 1;
        result *= (i + 1);
        result /= run;
    }
    return result;
}

}   // namespace fuzzyvc
