#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifshide/rat.hpp"

namespace ifshide {

/// Closed interval with non-empty interior.
struct Ivl {
    Rat lo, hi;

    Ivl(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (!(lo < hi)) throw std::invalid_argument("Ivl: requires lo < hi");
    }
    Rat length() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool strictly_contains(const Rat& x) const { return lo < x && x < hi; }
    bool contains(const Ivl& o) const { return lo <= o.lo && o.hi <= hi; }
    Ivl translated(const Rat& t) const { return Ivl(lo + t, hi + t); }
    friend bool operator==(const Ivl& a, const Ivl& b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator!=(const Ivl& a, const Ivl& b) { return !(a == b); }
};

/// Finite disjoint union of closed intervals, kept in canonical form:
/// sorted, pairwise separated by strictly positive gaps, non-empty.
class Region {
public:
    /// Canonicalizes an arbitrary interval list: sorts, merges overlaps and
    /// touching endpoints. Empty input is an error (regions are non-empty).
    static Region normalize(std::vector<Ivl> raw);

    const std::vector<Ivl>& components() const { return comps_; }
    std::size_t size() const { return comps_.size(); }
    const Ivl& comp(std::size_t i) const { return comps_.at(i); }
    Rat lo() const { return comps_.front().lo; }
    Rat hi() const { return comps_.back().hi; }
    Ivl hull() const { return Ivl(lo(), hi()); }
    Rat total_length() const;

    bool contains_point(const Rat& x) const;
    bool interior_contains_point(const Rat& x) const;

    /// Set containment: every point of `b` lies in *this.
    bool contains(const Region& b) const;
    /// int(*this) ⊇ b.
    bool interior_contains(const Region& b) const;

    Region unite(const Region& b) const;
    /// Exact intersection; empty result is signalled by nullopt, not a Region.
    std::optional<Region> intersect(const Region& b) const;
    std::optional<Region> intersect(const Ivl& window) const;
    /// Components of `b` material not covered by *this (first gap per
    /// component of b; used for violation reporting). Empty if contains(b).
    std::vector<Ivl> uncovered(const Region& b) const;

    Region translated(const Rat& t) const;
    /// x -> a*x + b with a > 0.
    Region affine(const Rat& a, const Rat& b) const;
    /// x -> -x (components reflect and reverse).
    Region mirrored() const;

    friend bool operator==(const Region& a, const Region& b) { return a.comps_ == b.comps_; }
    friend bool operator!=(const Region& a, const Region& b) { return !(a == b); }

private:
    Region() = default;
    std::vector<Ivl> comps_;
};

/// Projection of a region onto the circle [0, period): the union over period
/// slices of the slice-translated intersections. The window must span whole
/// slices.
Region project_region(const Region& r, const Rat& period, const Ivl& window);

/// Periodic tail of a PeriodicRegion: shape lives strictly inside (0, period).
struct Tail {
    Region shape;
    Rat period;

    Tail(Region s, Rat p) : shape(std::move(s)), period(std::move(p)) {
        if (period.sign() <= 0) throw std::invalid_argument("Tail: period must be positive");
        if (!(Rat(0) < shape.lo()) || !(shape.hi() < period))
            throw std::invalid_argument("Tail: shape must avoid the slice endpoints");
    }
    friend bool operator==(const Tail& a, const Tail& b) {
        return a.shape == b.shape && a.period == b.period;
    }
};

/// Region on an unbounded domain: exact on a core window, periodic beyond.
/// Window endpoints sit on the corresponding tail grids (multiples of the
/// tail period), so tail slices are [m*period, (m+1)*period).
class PeriodicRegion {
public:
    PeriodicRegion(Region core, Ivl window, std::optional<Tail> left, std::optional<Tail> right);

    /// Compact region (no tails) covering exactly `core`.
    static PeriodicRegion compact(Region core);

    const Region& core() const { return core_; }
    const Ivl& window() const { return window_; }
    const std::optional<Tail>& left_tail() const { return left_; }
    const std::optional<Tail>& right_tail() const { return right_; }

    /// Exact materialization over [lo, hi] (must be sane; tails required to
    /// extend beyond the window).
    Region materialize(const Rat& lo, const Rat& hi) const;

    PeriodicRegion translated(const Rat& t) const;
    PeriodicRegion mirrored() const;

    friend bool operator==(const PeriodicRegion& a, const PeriodicRegion& b) {
        return a.core_ == b.core_ && a.window_ == b.window_ && a.left_ == b.left_ &&
               a.right_ == b.right_;
    }

private:
    Region core_;
    Ivl window_;
    std::optional<Tail> left_, right_;
};

}  // namespace ifshide
