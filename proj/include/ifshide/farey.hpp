#pragma once

#include <vector>

#include "ifshide/rat.hpp"

namespace ifshide {

/// Adjacent pair r > r_prime of the Farey series of order n.
struct FareyPair {
    Rat r, r_prime;
    long n;

    FareyPair(Rat a, Rat b, long order);
};

/// All reduced fractions in [0, 1] with denominator <= n, ascending.
std::vector<Rat> farey_series(long n);

struct AdjacencyFacts {
    Rat diff;  // r - r' = 1/(k k')
    long tau;  // 1/(min{k,k'} (r - r')) = max{k, k'}
};
/// Exact adjacency invariants; throws "not adjacent" if h k' - h' k != 1.
AdjacencyFacts adjacency_invariants(const FareyPair& pair);

/// Smallest N with N > 2/lambda - 1; for n >= N every adjacent pair of the
/// order-n series satisfies r - r' < lambda / min{k, k'}.
long n_for_lambda(const Rat& lambda);

/// Descending concatenation of the translated series F_{n0}+m, m = d-1..1,
/// junction duplicates removed; runs from d down to 1.
std::vector<Rat> descending_chain(long n0, long d);

}  // namespace ifshide
