#include "ifshide/circle.hpp"

namespace ifshide {

CircleMap::CircleMap(Rat circumference, PLMap lift) : L_(std::move(circumference)), lift_(std::move(lift)) {
    if (L_.sign() <= 0) throw std::invalid_argument("CircleMap: circumference must be positive");
    if (lift_.kind() != DomainKind::Compact)
        throw std::invalid_argument("CircleMap: lift must be a compact map");
    if (lift_.nodes().front().x != Rat(0) || lift_.nodes().back().x != L_)
        throw std::invalid_argument("CircleMap: lift domain must be [0, L]");
    if (lift_.nodes().back().y != lift_.nodes().front().y + L_)
        throw std::invalid_argument("CircleMap: lift must have degree 1 (u(L) = u(0) + L)");
}

CircleMap CircleMap::rotation(const Rat& L, const Rat& t) {
    return CircleMap(L, PLMap::through({PLNode{Rat(0), t}, PLNode{L, t + L}}));
}

Rat CircleMap::eval_mod(const Rat& x) const {
    Rat xr = x - Rat(floor_div(x, L_)) * L_;
    Rat y = lift_.eval(xr);
    return y - Rat(floor_div(y, L_)) * L_;
}

Region wrap_region(const Region& r, const Rat& L) {
    std::vector<Ivl> out;
    for (const auto& c : r.components()) {
        Rat cur = c.lo;
        while (cur < c.hi) {
            mpz_class m = floor_div(cur, L);
            Rat slice_lo = Rat(m) * L;
            Rat hi = min(c.hi, slice_lo + L);
            out.emplace_back(cur - slice_lo, hi - slice_lo);
            cur = hi;
        }
    }
    return Region::normalize(std::move(out));
}

Region reflect_region(const Region& r, const Rat& L) {
    if (!(Rat(0) <= r.lo()) || !(r.hi() <= L))
        throw std::invalid_argument("reflect_region: region must lie in [0, L]");
    std::vector<Ivl> out;
    for (const auto& c : r.components()) {
        // x -> L - x for components avoiding 0; a component touching 0 maps to
        // one touching L, which still lies in [0, L].
        out.emplace_back(L - c.hi, L - c.lo);
    }
    return Region::normalize(std::move(out));
}

Region CircleMap::image(const Region& r) const {
    if (!(Rat(0) <= r.lo()) || !(r.hi() <= L_))
        throw std::invalid_argument("CircleMap::image: region must lie in [0, L]");
    return wrap_region(pl_image(lift_, r), L_);
}

Region CircleMap::preimage(const Region& r) const { return inverse().image(r); }

CircleMap CircleMap::compose(const CircleMap& other) const {
    if (L_ != other.L_) throw std::invalid_argument("CircleMap::compose: circumference mismatch");
    // Extend this lift periodically to cover other's image, compose, and
    // re-anchor on [0, L].
    Rat img_lo = other.lift_.nodes().front().y;
    Rat img_hi = other.lift_.nodes().back().y;
    mpz_class m0 = floor_div(img_lo, L_);
    mpz_class m1 = floor_div(img_hi, L_) + 1;
    std::vector<PLNode> ext;
    for (mpz_class m = m0; m <= m1; ++m) {
        Rat off = Rat(m) * L_;
        for (const auto& n : lift_.nodes()) {
            if (!ext.empty() && ext.back().x == n.x + off) continue;
            ext.push_back(PLNode{n.x + off, n.y + off});
        }
    }
    PLMap big(DomainKind::Compact, std::move(ext));
    PLMap comp = pl_compose(big, other.lift_);
    return CircleMap(L_, comp);
}

CircleMap CircleMap::inverse() const {
    // Tile the inverse lift around 0 and cut the fundamental domain [0, L].
    PLMap inv = lift_.inverse();  // domain [u(0), u(0)+L]
    std::vector<PLNode> big;
    mpz_class k0 = floor_div(Rat(0) - inv.nodes().front().x, L_) - 1;
    mpz_class k1 = floor_div(L_ - inv.nodes().front().x, L_) + 1;
    for (mpz_class k = k0; k <= k1; ++k) {
        Rat o = Rat(k) * L_;
        for (const auto& n : inv.nodes()) {
            if (!big.empty() && big.back().x == n.x + o) continue;
            big.push_back(PLNode{n.x + o, n.y + o});
        }
    }
    PLMap tiled(DomainKind::Compact, std::move(big));
    std::vector<PLNode> fin;
    fin.push_back(PLNode{Rat(0), tiled.eval(Rat(0))});
    for (const auto& n : tiled.nodes())
        if (Rat(0) < n.x && n.x < L_) fin.push_back(n);
    fin.push_back(PLNode{L_, tiled.eval(L_)});
    return CircleMap(L_, PLMap(DomainKind::Compact, std::move(fin)));
}

CircleMap CircleMap::reflected() const {
    // v(x) = -u(-x); nodes of the lift on [0, L] are (L - x, L'... ) from the
    // tiled lift: v-node at L - x with value -y + (shift making v(0) anchored).
    std::vector<PLNode> nodes;
    const auto& ns = lift_.nodes();
    for (auto it = ns.rbegin(); it != ns.rend(); ++it) {
        Rat x = L_ - it->x;
        Rat y = -(it->y) + L_;  // -u(-(x)) with -x ≡ L - x (mod L), lift offset L
        if (!nodes.empty() && nodes.back().x == x) continue;
        nodes.push_back(PLNode{x, y});
    }
    return CircleMap(L_, PLMap(DomainKind::Compact, std::move(nodes)));
}

CircleMap CircleMap::renormalized(const Rat& L2) const {
    if (L2.sign() <= 0) throw std::invalid_argument("renormalized: circumference must be positive");
    Rat a = L2 / L_;
    return CircleMap(L2, lift_.affine_conjugated(a, Rat(0)));
}

CircleMap CircleMap::with_fill(const Ivl& J, const PLMap& shape) const {
    if (!(Rat(0) <= J.lo) || !(J.hi <= L_))
        throw std::invalid_argument("with_fill: J must lie in [0, L]");
    return CircleMap(L_, modify_over(lift_, J, shape, ModifyMode::Fill));
}

}  // namespace ifshide
