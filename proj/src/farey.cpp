#include "ifshide/farey.hpp"

#include <stdexcept>

namespace ifshide {

FareyPair::FareyPair(Rat a, Rat b, long order) : r(std::move(a)), r_prime(std::move(b)), n(order) {
    if (!(r > r_prime)) throw std::invalid_argument("FareyPair: requires r > r'");
    if (n < 1) throw std::invalid_argument("FareyPair: order must be >= 1");
    if (r.den() > n || r_prime.den() > n)
        throw std::invalid_argument("FareyPair: denominators must not exceed the order");
}

std::vector<Rat> farey_series(long n) {
    if (n < 1) throw std::invalid_argument("farey_series: order must be >= 1");
    // next-term recurrence: given consecutive h1/k1 < h2/k2, the successor is
    // ((a h2 - h1)/(a k2 - k1)) with a = floor((k1 + n)/k2).
    std::vector<Rat> out;
    mpz_class h1 = 0, k1 = 1, h2 = 1, k2 = n;
    out.emplace_back(Rat(0));
    if (n == 1) {
        out.emplace_back(Rat(1));
        return out;
    }
    out.emplace_back(Rat(mpq_class(h2, k2)));
    while (!(h2 == 1 && k2 == 1)) {
        mpz_class a = (k1 + n) / k2;
        mpz_class h3 = a * h2 - h1, k3 = a * k2 - k1;
        h1 = h2;
        k1 = k2;
        h2 = h3;
        k2 = k3;
        out.emplace_back(Rat(mpq_class(h2, k2)));
    }
    return out;
}

AdjacencyFacts adjacency_invariants(const FareyPair& pair) {
    mpz_class h = pair.r.num(), k = pair.r.den();
    mpz_class hp = pair.r_prime.num(), kp = pair.r_prime.den();
    if (h * kp - hp * k != 1) throw std::invalid_argument("not adjacent");
    AdjacencyFacts facts{pair.r - pair.r_prime, 0};
    Rat mn(k < kp ? k : kp);
    Rat tau = Rat(1) / (mn * facts.diff);
    if (!tau.is_integer()) throw std::logic_error("adjacency_invariants: tau not integral");
    facts.tau = tau.floor_long();
    return facts;
}

long n_for_lambda(const Rat& lambda) {
    if (lambda.sign() <= 0) throw std::invalid_argument("n_for_lambda: lambda must be positive");
    Rat bound = Rat(2) / lambda - Rat(1);
    mpz_class f = bound.floor();
    mpz_class N = (Rat(f) == bound) ? f + 1 : f + 1;  // strict inequality N > bound
    if (!N.fits_slong_p()) throw std::overflow_error("n_for_lambda: N out of range");
    long res = N.get_si();
    return res < 1 ? 1 : res;
}

std::vector<Rat> descending_chain(long n0, long d) {
    if (n0 < 1) throw std::invalid_argument("descending_chain: n0 >= 1 required");
    if (d < 2) throw std::invalid_argument("descending_chain: d >= 2 required");
    std::vector<Rat> series = farey_series(n0);
    std::vector<Rat> out;
    for (long m = d - 1; m >= 1; --m) {
        for (auto it = series.rbegin(); it != series.rend(); ++it) {
            Rat v = *it + Rat(m);
            if (!out.empty() && out.back() == v) continue;  // junction duplicate
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace ifshide
