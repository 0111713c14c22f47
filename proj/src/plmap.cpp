#include "ifshide/plmap.hpp"

#include <algorithm>
#include <sstream>

namespace ifshide {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

PLMap::PLMap(DomainKind kind, std::vector<PLNode> nodes) : kind_(kind), nodes_(std::move(nodes)) {
    if (nodes_.empty()) fail("PLMap: needs at least one node");
    if (kind_ == DomainKind::Compact && nodes_.size() < 2)
        fail("PLMap: a compact map needs at least two nodes");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i - 1].x < nodes_[i].x)) fail("PLMap: node x-coordinates must strictly increase");
        if (!(nodes_[i - 1].y < nodes_[i].y)) fail("PLMap: node y-coordinates must strictly increase");
    }
}

PLMap PLMap::translation(const Rat& t, DomainKind kind) {
    return PLMap(kind, {PLNode{Rat(0), t}});
}

PLMap PLMap::identity_on(const Ivl& dom) {
    return PLMap(DomainKind::Compact, {PLNode{dom.lo, dom.lo}, PLNode{dom.hi, dom.hi}});
}

std::optional<Rat> PLMap::domain_lo() const {
    if (unbounded_left()) return std::nullopt;
    return nodes_.front().x;
}
std::optional<Rat> PLMap::domain_hi() const {
    if (unbounded_right()) return std::nullopt;
    return nodes_.back().x;
}
std::optional<Rat> PLMap::image_lo() const {
    if (unbounded_left()) return std::nullopt;
    return nodes_.front().y;
}
std::optional<Rat> PLMap::image_hi() const {
    if (unbounded_right()) return std::nullopt;
    return nodes_.back().y;
}

bool PLMap::domain_contains(const Rat& x) const {
    if (!unbounded_left() && x < nodes_.front().x) return false;
    if (!unbounded_right() && x > nodes_.back().x) return false;
    return true;
}
bool PLMap::image_contains(const Rat& y) const {
    if (!unbounded_left() && y < nodes_.front().y) return false;
    if (!unbounded_right() && y > nodes_.back().y) return false;
    return true;
}

Rat PLMap::eval(const Rat& x) const {
    if (!domain_contains(x)) fail("pl_eval: point outside domain: " + x.str());
    if (x <= nodes_.front().x) {
        // left tail (slope 1) or the first node itself
        return nodes_.front().y + (x - nodes_.front().x);
    }
    if (x >= nodes_.back().x) {
        return nodes_.back().y + (x - nodes_.back().x);
    }
    // binary search: last node with node.x <= x
    std::size_t lo = 0, hi = nodes_.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (nodes_[mid].x <= x)
            lo = mid;
        else
            hi = mid;
    }
    const PLNode& a = nodes_[lo];
    const PLNode& b = nodes_[hi];
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

Rat PLMap::eval_inverse(const Rat& y) const {
    if (!image_contains(y)) fail("pl_eval_inverse: point outside image: " + y.str());
    if (y <= nodes_.front().y) return nodes_.front().x + (y - nodes_.front().y);
    if (y >= nodes_.back().y) return nodes_.back().x + (y - nodes_.back().y);
    std::size_t lo = 0, hi = nodes_.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (nodes_[mid].y <= y)
            lo = mid;
        else
            hi = mid;
    }
    const PLNode& a = nodes_[lo];
    const PLNode& b = nodes_[hi];
    return a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
}

Rat PLMap::mu() const {
    Rat m(0);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        Rat slope = (nodes_[i].y - nodes_[i - 1].y) / (nodes_[i].x - nodes_[i - 1].x);
        m = max(m, (slope - Rat(1)).abs());
    }
    return m;
}

std::vector<Rat> PLMap::corners() const {
    std::vector<Rat> out;
    if (nodes_.size() < 2) return out;
    auto seg_slope = [&](std::size_t i) {
        return (nodes_[i + 1].y - nodes_[i].y) / (nodes_[i + 1].x - nodes_[i].x);
    };
    // Unbounded sides contribute an implicit slope-1 segment, so an extreme
    // node with an adjacent slope != 1 is a corner there.
    if (unbounded_left() && seg_slope(0) != Rat(1)) out.push_back(nodes_.front().x);
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i)
        if (seg_slope(i - 1) != seg_slope(i)) out.push_back(nodes_[i].x);
    if (unbounded_right() && seg_slope(nodes_.size() - 2) != Rat(1)) out.push_back(nodes_.back().x);
    return out;
}

Rat PLMap::slope_at(const Rat& x) const {
    if (!domain_contains(x)) fail("slope_at: point outside domain");
    if (x < nodes_.front().x || x > nodes_.back().x || nodes_.size() == 1) return Rat(1);
    std::size_t i = 0;
    while (i + 1 < nodes_.size() && nodes_[i + 1].x <= x) ++i;
    if (i + 1 == nodes_.size()) --i;  // x at the top node: use the last segment
    return (nodes_[i + 1].y - nodes_[i].y) / (nodes_[i + 1].x - nodes_[i].x);
}

PLMap PLMap::inverse() const {
    std::vector<PLNode> inv;
    inv.reserve(nodes_.size());
    for (const auto& n : nodes_) inv.push_back(PLNode{n.y, n.x});
    return PLMap(kind_, std::move(inv));
}

PLMap PLMap::mirrored() const {
    std::vector<PLNode> m;
    m.reserve(nodes_.size());
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) m.push_back(PLNode{-it->x, -it->y});
    DomainKind k = kind_;
    if (kind_ == DomainKind::HalfLineRight) k = DomainKind::HalfLineLeft;
    if (kind_ == DomainKind::HalfLineLeft) k = DomainKind::HalfLineRight;
    return PLMap(k, std::move(m));
}

PLMap PLMap::affine_conjugated(const Rat& a, const Rat& b) const {
    if (a.sign() <= 0) fail("affine_conjugated: scale must be positive");
    std::vector<PLNode> m;
    m.reserve(nodes_.size());
    for (const auto& n : nodes_) m.push_back(PLNode{a * n.x + b, a * n.y + b});
    return PLMap(kind_, std::move(m));
}

PLMap PLMap::rescaled(const Ivl& src, const Ivl& dst) const {
    Rat a = dst.length() / src.length();
    Rat b = dst.lo - a * src.lo;
    return affine_conjugated(a, b);
}

PLMap PLMap::translated_graph(const Rat& dx, const Rat& dy) const {
    std::vector<PLNode> m;
    m.reserve(nodes_.size());
    for (const auto& n : nodes_) m.push_back(PLNode{n.x + dx, n.y + dy});
    return PLMap(kind_, std::move(m));
}

Rat pl_eval(const PLMap& f, const Rat& x) { return f.eval(x); }

Region pl_image(const PLMap& f, const Region& r, ImageDir dir) {
    std::vector<Ivl> out;
    out.reserve(r.size());
    for (const auto& c : r.components()) {
        if (dir == ImageDir::Forward) {
            if (!f.domain_contains(c.lo) || !f.domain_contains(c.hi))
                fail("pl_image: component [" + c.lo.str() + ", " + c.hi.str() + "] outside domain");
            out.emplace_back(f.eval(c.lo), f.eval(c.hi));
        } else {
            if (!f.image_contains(c.lo) || !f.image_contains(c.hi))
                fail("pl_image: component [" + c.lo.str() + ", " + c.hi.str() + "] outside image");
            out.emplace_back(f.eval_inverse(c.lo), f.eval_inverse(c.hi));
        }
    }
    return Region::normalize(std::move(out));
}

PeriodicRegion pl_image(const PLMap& f, const PeriodicRegion& r, ImageDir dir) {
    const PLMap g = (dir == ImageDir::Forward) ? f : f.inverse();
    std::optional<Tail> nl = r.left_tail(), nr = r.right_tail();
    Rat wlo = r.window().lo, whi = r.window().hi;
    if (nl) {
        if (!g.unbounded_left()) fail("pl_image: map not defined on the left tail");
        // the map must be the translation x + t with t a multiple of the period
        Rat t = g.nodes().front().y - g.nodes().front().x;
        if (!is_multiple_of(t, nl->period) || g.nodes().front().x < wlo)
            fail("pl_image: map is not a commensurate translation on the left tail");
        wlo = wlo + t;
    }
    if (nr) {
        if (!g.unbounded_right()) fail("pl_image: map not defined on the right tail");
        Rat t = g.nodes().back().y - g.nodes().back().x;
        if (!is_multiple_of(t, nr->period) || g.nodes().back().x > whi)
            fail("pl_image: map is not a commensurate translation on the right tail");
        whi = whi + t;
    }
    Region core = pl_image(g, r.core(), ImageDir::Forward);
    // Tailed window endpoints move by their tail translations (monotonicity
    // keeps the mapped core inside); tail-less endpoints follow the core.
    if (!nl) wlo = core.lo();
    if (!nr) whi = core.hi();
    return PeriodicRegion(std::move(core), Ivl(wlo, whi), std::move(nl), std::move(nr));
}

PLMap pl_compose(const PLMap& f, const PLMap& g) {
    // domain check: image of g must lie inside domain of f
    if (!g.unbounded_left()) {
        if (!f.domain_contains(g.nodes().front().y)) {
            std::ostringstream os;
            os << "pl_compose: image of inner map not covered near " << g.nodes().front().y.str();
            fail(os.str());
        }
    } else if (!f.unbounded_left()) {
        fail("pl_compose: inner map image unbounded left, outer domain is not");
    }
    if (!g.unbounded_right()) {
        if (!f.domain_contains(g.nodes().back().y))
            fail("pl_compose: image of inner map not covered near " + g.nodes().back().y.str());
    } else if (!f.unbounded_right()) {
        fail("pl_compose: inner map image unbounded right, outer domain is not");
    }

    std::vector<Rat> xs;
    for (const auto& n : g.nodes()) xs.push_back(n.x);
    for (const auto& n : f.nodes())
        if (g.image_contains(n.x)) xs.push_back(g.eval_inverse(n.x));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<PLNode> nodes;
    nodes.reserve(xs.size());
    for (const auto& x : xs) nodes.push_back(PLNode{x, f.eval(g.eval(x))});
    return PLMap(g.kind(), std::move(nodes));
}

PLMap pl_invert(const PLMap& f) { return f.inverse(); }

Rat mu_of(const PLMap& f) { return f.mu(); }

PLMap modify_over(const PLMap& g, const Ivl& J, const PLMap& h, ModifyMode mode,
                  const std::optional<Rat>& anchor) {
    if (!g.domain_contains(J.lo) || !g.domain_contains(J.hi))
        fail("modify_over: J outside the domain of g");
    if (h.kind() != DomainKind::Compact) fail("modify_over: shape must be a compact map");
    const Rat hd_lo = h.nodes().front().x, hd_hi = h.nodes().back().x;
    const Rat hi_lo = h.nodes().front().y, hi_hi = h.nodes().back().y;
    if (hd_hi - hd_lo != J.length())
        fail("modify_over: shape domain length " + (hd_hi - hd_lo).str() +
             " does not match |J| = " + J.length().str());

    Rat gJlo = g.eval(J.lo), gJhi = g.eval(J.hi);
    // y-offset c: transplanted shape is y = h(x - J.lo + hd_lo) + c
    Rat c;
    if (mode == ModifyMode::Fill) {
        if (hi_hi - hi_lo != gJhi - gJlo)
            fail("modify_over: fill length mismatch: |g(J)| = " + (gJhi - gJlo).str() +
                 ", |h image| = " + (hi_hi - hi_lo).str());
        c = gJlo - hi_lo;
    } else {
        if (!anchor || !J.contains(*anchor)) fail("modify_over: anchor point must lie in J");
        c = g.eval(*anchor) - h.eval(*anchor - J.lo + hd_lo);
    }

    std::vector<PLNode> nodes;
    for (const auto& n : g.nodes())
        if (n.x < J.lo || n.x > J.hi) nodes.push_back(n);
    for (const auto& n : h.nodes()) nodes.push_back(PLNode{n.x - hd_lo + J.lo, n.y + c});
    // Continuity at the boundary of J is mandatory wherever J does not end at
    // a domain endpoint (fill mode satisfies it by construction).
    if (mode == ModifyMode::Anchor) {
        bool left_free = !g.unbounded_left() && g.nodes().front().x == J.lo;
        bool right_free = !g.unbounded_right() && g.nodes().back().x == J.hi;
        if (!left_free && hi_lo + c != gJlo)
            fail("modify_over: anchored shape breaks continuity at the lower end of J");
        if (!right_free && hi_hi + c != gJhi)
            fail("modify_over: anchored shape breaks continuity at the upper end of J");
    }
    std::sort(nodes.begin(), nodes.end(), [](const PLNode& a, const PLNode& b) { return a.x < b.x; });
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](const PLNode& a, const PLNode& b) { return a.x == b.x && a.y == b.y; }),
                nodes.end());
    return PLMap(g.kind(), std::move(nodes));  // constructor re-validates monotonicity
}

}  // namespace ifshide
