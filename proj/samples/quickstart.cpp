// Builds a small fuzzy set system by hand, then prints its VC dimension, a
// strong disambiguation and a transversal of the outer system.

#include <iostream>

#include "fuzzyvc/fuzzyvc.hpp"

int main()
{
    using namespace fuzzyvc;

    // Three fuzzy intervals on the points 0..5.
    const FuzzySetSystem f(6, {
                                  {{1, 2}, {4, 5}},
                                  {{2, 3, 4}, {0}},
                                  {{3}, {0, 1, 5}},
                              });

    std::cout << "vc = " << vc_dimension(f).value_or(0) << "\n";
    for (std::size_t n = 0; n <= 3; ++n)
        std::cout << "pi(" << n << ") = " << shatter_function(f, n) << "  bound " << sauer_bound(1, n) << "\n";

    const auto crisp = strong_disambiguation(f, DisambiguationMode::Greedy);
    std::cout << "greedy disambiguation:";
    for (const auto& s : crisp.sets())
    {
        std::cout << " {";
        for (Index x : s)
            std::cout << " " << x;
        std::cout << " }";
    }
    std::cout << "\n";

    const auto cert = transversal_via_net(f);
    std::cout << "tau* of the inner system = " << to_string(cert.tau_star) << ", transversal:";
    for (Index x : cert.transversal)
        std::cout << " " << x;
    std::cout << "\n";
}
