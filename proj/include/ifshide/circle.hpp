#pragma once

#include "ifshide/plmap.hpp"

namespace ifshide {

/// Degree-1 lift of an orientation-preserving PL circle homeomorphism on
/// R/(L·Z), stored on the fundamental domain [0, L] with u(L) = u(0) + L.
class CircleMap {
public:
    CircleMap(Rat circumference, PLMap lift);

    static CircleMap rotation(const Rat& L, const Rat& t);
    static CircleMap identity(const Rat& L) { return rotation(L, Rat(0)); }

    const Rat& circumference() const { return L_; }
    const PLMap& lift() const { return lift_; }

    /// Value in [0, L) of the circle map at x (x reduced mod L).
    Rat eval_mod(const Rat& x) const;
    /// Lift value at x in [0, L].
    Rat eval_lift(const Rat& x) const { return lift_.eval(x); }

    Rat mu() const { return lift_.mu(); }

    /// Image of a region contained in [0, L], reduced back into [0, L].
    Region image(const Region& r) const;
    Region preimage(const Region& r) const;

    /// this ∘ other.
    CircleMap compose(const CircleMap& other) const;
    CircleMap inverse() const;
    /// Conjugation by the reflection x -> -x (mod L).
    CircleMap reflected() const;
    /// Renormalization to the circle of circumference L2 (affine conjugation
    /// by x -> (L2/L)·x; preserves mu).
    CircleMap renormalized(const Rat& L2) const;

    /// Replace the lift over J ⊆ [0, L] by the shape class of `shape`
    /// (a compact PLMap of matching domain/image lengths), keeping the
    /// interval image. Returns a valid circle map.
    CircleMap with_fill(const Ivl& J, const PLMap& shape) const;

    friend bool operator==(const CircleMap& a, const CircleMap& b) {
        return a.L_ == b.L_ && a.lift_ == b.lift_;
    }

private:
    Rat L_;
    PLMap lift_;
};

/// Reduce a region of the line into [0, L] by slice translation (components
/// split at the slice grid). Inverse-direction utility for circle images.
Region wrap_region(const Region& r, const Rat& L);

/// Reflect a region within the circle [0, L]: x -> -x mod L. Components must
/// avoid 0 (shapes always do here).
Region reflect_region(const Region& r, const Rat& L);

}  // namespace ifshide
