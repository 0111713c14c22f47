#pragma once

#include <vector>

#include "ifshide/plmap.hpp"
#include "ifshide/template.hpp"

namespace ifshide {

/// Witness pair for the equivalence of two regions inside a common ambient
/// interval: phi(K) ⊆ L and psi(L) ⊆ K with mu(phi), mu(psi) < eps; both are
/// PL homeomorphisms of the ambient onto itself.
struct EquivWitness {
    PLMap phi, psi;
    Rat eps;
};

bool check_equivalence(const Region& K, const Region& L, const EquivWitness& w, const Ivl& ambient);

/// One deformation step together with the covering maps used as map fills
/// downstream: to ⊆ cover_fwd(from), from ⊆ cover_bwd(to).
struct EquivStep {
    Region from, to;
    EquivWitness witness;
    PLMap cover_fwd, cover_bwd;
};

struct EquivSequence {
    std::vector<Region> regions;  // M_0 = K, ..., M_{i0} = L
    std::vector<EquivStep> steps;
    Rat eps;
    std::size_t length() const { return steps.size(); }
};

/// Chain of regions from K to L whose consecutive members are eps-equivalent;
/// component-count changes happen one tiny-interval insertion at a time.
/// Monotone mode (single components, K ⊆ L) produces a nested chain.
EquivSequence build_equiv_sequence(const Region& K, const Region& L, const Rat& eps, bool monotone,
                                   const Ivl& ambient);

/// Ω = 1/(3ω): any two maps with mu < Ω compose to mu < 1/ω (exact).
Rat omega_budget(long omega);

/// Circle homeomorphism of small mu whose xi-th iterate collapses every
/// template slice onto (a witness-equivalent copy of) the top interval.
struct GeometryEater {
    long omega = 0;
    Rat budget;  // Ω
    PLMap h;     // endpoint-fixing homeo of [0, 1]
    long xi = 0;
    Rat p, q1, q2;  // repelling / attracting fixed points
    std::vector<PLMap> alphas, betas;  // per slice i = 0..omega-2
};

GeometryEater build_geometry_eater(const Template& t, long omega, const Rat& budget);
bool verify_geometry_eater(const GeometryEater& e, const Template& t);

}  // namespace ifshide
