#pragma once

#include <string>
#include <vector>

#include "ifshide/plmap.hpp"

namespace ifshide {

enum class PieceDomain { UnitInterval, HalfLine, FullLine };

/// A two-generator system bundled with its hiding-region candidate.
struct IFSPiece {
    PLMap f, g;
    std::optional<PeriodicRegion> K;
    PieceDomain domain = PieceDomain::UnitInterval;
    std::vector<std::string> tags;  // subset of {"C-class", "D-class-analogue", "P-class"}

    bool has_tag(const std::string& t) const;
    void validate() const;  // domain kinds of f, g consistent with the piece domain
};

struct Violation {
    std::string map_tag;  // "f" or "g"
    Ivl component;        // the K-component whose coverage fails
    Ivl uncovered;        // first uncovered sub-interval
};

struct HidingReport {
    bool passed = false;
    bool strong = false;
    std::vector<Violation> violations;
    std::optional<Ivl> window_used;
    std::string reason;  // non-empty on structural failures, e.g. "K equals X"

    /// Deterministic text rendering (stable field order) for golden files.
    std::string render() const;
};

/// Exact hiding check on a compact interval X: passes iff K != X,
/// K ∩ f(X) ⊆ f(K) and K ∩ g(X) ⊆ g(K) (interiors in strong mode).
HidingReport check_hiding(const PLMap& f, const PLMap& g, const Region& K, const Ivl& X,
                          bool strong);

/// Hiding check for a piece with periodic tails, reduced to a finite window
/// plus a translation-periodicity certificate.
HidingReport check_hiding_piece(const IFSPiece& p, bool strong);

struct BoundaryExclusionResult {
    bool ok = false;
    std::string failed_clause;
};
/// 0,1 ∉ K; f(1), g(0) ∉ K; every K-component lies inside f(I) or outside it
/// (same for g). For P-class pieces on [0,1].
BoundaryExclusionResult boundary_exclusions(const IFSPiece& p);

struct OrbitReport {
    std::size_t visited_count = 0;
    std::optional<Rat> min_distance_to_K_interior;
    bool all_outside = true;
};
/// Breadth-first enumeration of all words up to the given length applied to
/// the seed, with exact deduplication; points beyond the verification window
/// are checked against the tail pattern and then pruned.
OrbitReport orbit_audit(const IFSPiece& p, const Rat& seed, long depth);

/// Cell-resolution coarsening of the depth-bounded orbit of 0.
Region approx_minimal_set(const IFSPiece& p, long depth, const Rat& resolution);

/// Thrown by builders whose output fails its own exact verification.
class VerificationError : public std::runtime_error {
public:
    VerificationError(const std::string& what, HidingReport rep)
        : std::runtime_error(what + "\n" + rep.render()), report(std::move(rep)) {}
    HidingReport report;
};

/// Membership of a point in (the interior of) a periodic region.
bool periodic_contains_point(const PeriodicRegion& K, const Rat& x, bool interior);
/// Exact distance from x to the region (0 if inside).
Rat periodic_distance(const PeriodicRegion& K, const Rat& x);

}  // namespace ifshide
