#pragma once

#include "ifshide/circle.hpp"
#include "ifshide/deform.hpp"
#include "ifshide/hiding.hpp"
#include "ifshide/local_models.hpp"

namespace ifshide {

/// Parameter pair rejected by the admissibility gate (tau not integral or too
/// small for the geometry-eater length).
class InadmissibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LeapPlan {
    long omega = 0, xi = 0;
    Rat budget, lambda, R;
    Rat r1, r2;
    long p1 = 0, q1 = 0, p2 = 0, q2 = 0;
    long tau = 0;
    bool mirrored = false;  // q1 > q2

    long q_min() const { return mirrored ? q2 : q1; }
    Rat circle() const { return Rat(1, q_min()); }
};

LeapPlan leap_constants(long omega, const Rat& r1, const Rat& r2, long xi);

/// Orbit-circle pair: u(0) = -alpha and M ⊆ u(M). The pasting property adds
/// u(alpha) = 0 and 0, alpha ∉ M.
struct HidingPair {
    CircleMap u;
    Region M;
    Rat alpha;  // offset in [0, L)
};

bool check_hiding_pair(const HidingPair& p, bool pasting);

/// u on [0, alpha], U elsewhere; both must map [0, alpha] onto [-alpha, 0].
CircleMap paste_star(const CircleMap& u, const CircleMap& U, const Rat& alpha);

struct InitialPair {
    HidingPair pair;
    PLMap nu;  // contraction-then-rotation gadget on [0, 1/q]
    Region Mt, Mprime, Ms;
};

InitialPair build_initial_pair(const LeapPlan& plan, const Template& t, const GeometryEater& e);

/// The deformation chain from the initial pair to the R-translation pair,
/// with all four connecting-map families (each exactly verified):
///   U_k: rotation-type, M_{k+1} ⊆ U_k(M_k)   (with pasting)
///   V_k: identity-type, M_k ⊆ V_k(M_{k+1})
///   D_k: rotation-type, M_k ⊆ D_k(M_{k+1})   (with pasting)
///   E_k: identity-type, M_{k+1} ⊆ E_k(M_k)
struct KillingSequence {
    std::vector<HidingPair> pairs;  // 0..xi+1; last is the translation pair
    std::vector<CircleMap> U, V, D, E;
};

KillingSequence build_killing_sequence(const InitialPair& ip, const LeapPlan& plan,
                                       const Template& t, const GeometryEater& e);

IFSPiece realize_leap(long omega, const Rat& r1, const Rat& r2);
IFSPiece realize_leap_mirrored(long omega, const Rat& r1, const Rat& r2);

/// Shared machinery handle so the expensive template/eater pair can be reused
/// across many leaps (the assembly pipeline does this).
struct LeapToolkit {
    long omega = 0;
    Template t;
    Rat budget;
    GeometryEater e;
};
LeapToolkit make_leap_toolkit(long omega);
IFSPiece realize_leap_with(const LeapToolkit& kit, const Rat& r1, const Rat& r2);

/// Shapes of the two tails of a leap piece, on their circles.
struct LeapShapes {
    Region left;   // circumference 1/q1
    Region right;  // circumference 1/q2
};
LeapShapes leap_tail_shapes(const IFSPiece& leap);

}  // namespace ifshide
