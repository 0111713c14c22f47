#pragma once

#include <optional>
#include <vector>

#include "ifshide/region.hpp"

namespace ifshide {

enum class DomainKind {
    Compact,        // [x_first, x_last]
    HalfLineRight,  // [x_first, +inf), slope-1 tail on the right
    HalfLineLeft,   // (-inf, x_last], slope-1 tail on the left
    FullLine,       // slope-1 tails on both sides
};

struct PLNode {
    Rat x, y;
    friend bool operator==(const PLNode& a, const PLNode& b) { return a.x == b.x && a.y == b.y; }
};

/// Orientation-preserving piecewise-linear homeomorphism onto its image.
/// Beyond the extreme nodes (where the domain is unbounded) the map is the
/// translation of slope 1 through that node.
class PLMap {
public:
    PLMap(DomainKind kind, std::vector<PLNode> nodes);

    static PLMap translation(const Rat& t, DomainKind kind = DomainKind::FullLine);
    static PLMap identity_on(const Ivl& dom);
    /// Compact map through the given nodes.
    static PLMap through(std::vector<PLNode> nodes) { return PLMap(DomainKind::Compact, std::move(nodes)); }

    DomainKind kind() const { return kind_; }
    const std::vector<PLNode>& nodes() const { return nodes_; }
    bool unbounded_left() const {
        return kind_ == DomainKind::FullLine || kind_ == DomainKind::HalfLineLeft;
    }
    bool unbounded_right() const {
        return kind_ == DomainKind::FullLine || kind_ == DomainKind::HalfLineRight;
    }
    std::optional<Rat> domain_lo() const;
    std::optional<Rat> domain_hi() const;
    std::optional<Rat> image_lo() const;
    std::optional<Rat> image_hi() const;
    bool domain_contains(const Rat& x) const;
    bool image_contains(const Rat& y) const;

    Rat eval(const Rat& x) const;
    Rat eval_inverse(const Rat& y) const;

    /// max |slope - 1| over all linear pieces; slope-1 tails contribute 0.
    Rat mu() const;
    /// Interior nodes where the adjacent slopes differ (the corner set).
    std::vector<Rat> corners() const;
    /// Slope of the segment containing x (tail slope 1 outside the node span;
    /// at a node, the right-hand slope, except the left-hand one at the top).
    Rat slope_at(const Rat& x) const;

    PLMap inverse() const;
    /// x -> -f(-x).
    PLMap mirrored() const;
    /// Conjugation by the unique orientation-preserving affine bijection
    /// src -> dst (applied to both coordinates; preserves mu).
    PLMap rescaled(const Ivl& src, const Ivl& dst) const;
    PLMap affine_conjugated(const Rat& a, const Rat& b) const;
    PLMap translated_graph(const Rat& dx, const Rat& dy) const;

    friend bool operator==(const PLMap& a, const PLMap& b) {
        return a.kind_ == b.kind_ && a.nodes_ == b.nodes_;
    }

private:
    DomainKind kind_;
    std::vector<PLNode> nodes_;
};

Rat pl_eval(const PLMap& f, const Rat& x);

enum class ImageDir { Forward, Preimage };
Region pl_image(const PLMap& f, const Region& r, ImageDir dir = ImageDir::Forward);
/// Tail-translation compatible image of a periodic region (the map must be an
/// exact translation by a multiple of the tail period on each tail zone).
PeriodicRegion pl_image(const PLMap& f, const PeriodicRegion& r, ImageDir dir = ImageDir::Forward);

/// f after g (requires image(g) to lie inside domain(f)).
PLMap pl_compose(const PLMap& f, const PLMap& g);
PLMap pl_invert(const PLMap& f);
Rat mu_of(const PLMap& f);

enum class ModifyMode { Fill, Anchor };
/// Paste the shape class of `h` over J: the result agrees with g outside J and
/// has h's slope sequence on J. Fill mode pins G(J) = g(J) and requires
/// length(h image) == length(g(J)) exactly. Anchor mode pins G(x0) = g(x0) and
/// requires the result to stay continuous and monotone.
PLMap modify_over(const PLMap& g, const Ivl& J, const PLMap& h, ModifyMode mode,
                  const std::optional<Rat>& anchor = std::nullopt);

}  // namespace ifshide
