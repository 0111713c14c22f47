#include "ifshide/deform.hpp"

#include <algorithm>
#include <sstream>

namespace ifshide {

namespace {

bool is_ambient_homeo(const PLMap& m, const Ivl& ambient) {
    return m.kind() == DomainKind::Compact && m.nodes().front().x == ambient.lo &&
           m.nodes().front().y == ambient.lo && m.nodes().back().x == ambient.hi &&
           m.nodes().back().y == ambient.hi;
}

}  // namespace

bool check_equivalence(const Region& K, const Region& L, const EquivWitness& w, const Ivl& ambient) {
    if (w.eps.sign() <= 0) return false;
    if (!is_ambient_homeo(w.phi, ambient) || !is_ambient_homeo(w.psi, ambient)) return false;
    if (!(w.phi.mu() < w.eps) || !(w.psi.mu() < w.eps)) return false;
    if (!L.contains(pl_image(w.phi, K))) return false;
    if (!K.contains(pl_image(w.psi, L))) return false;
    return true;
}

namespace {

// Boundary coordinates of a region (component endpoints, ascending).
std::vector<Rat> coords_of(const Region& r) {
    std::vector<Rat> out;
    for (const auto& c : r.components()) {
        out.push_back(c.lo);
        out.push_back(c.hi);
    }
    return out;
}

Region region_from_coords(const std::vector<Rat>& xs) {
    std::vector<Ivl> comps;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) comps.emplace_back(xs[i], xs[i + 1]);
    return Region::normalize(std::move(comps));
}

// Ambient homeomorphism carrying the coordinate vector `from` onto `to`
// (identity at the ambient endpoints).
PLMap coord_map(const std::vector<Rat>& from, const std::vector<Rat>& to, const Ivl& ambient) {
    std::vector<PLNode> nodes;
    nodes.push_back(PLNode{ambient.lo, ambient.lo});
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (from[i] == ambient.lo || from[i] == ambient.hi) continue;
        nodes.push_back(PLNode{from[i], to[i]});
    }
    nodes.push_back(PLNode{ambient.hi, ambient.hi});
    return PLMap(DomainKind::Compact, std::move(nodes));
}

EquivStep make_morph_step(const Region& from, const std::vector<Rat>& xs,
                          const std::vector<Rat>& ys, const Ivl& ambient, const Rat& eps) {
    EquivStep st;
    st.from = from;
    st.to = region_from_coords(ys);
    PLMap fwd = coord_map(xs, ys, ambient);
    st.cover_fwd = fwd;
    st.cover_bwd = fwd.inverse();
    st.witness = EquivWitness{fwd, fwd.inverse(), eps};
    return st;
}

EquivSequence reversed(EquivSequence s) {
    EquivSequence out;
    out.eps = s.eps;
    out.regions.assign(s.regions.rbegin(), s.regions.rend());
    for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it) {
        EquivStep st;
        st.from = it->to;
        st.to = it->from;
        st.witness = EquivWitness{it->witness.psi, it->witness.phi, it->witness.eps};
        st.cover_fwd = it->cover_bwd;
        st.cover_bwd = it->cover_fwd;
        out.steps.push_back(std::move(st));
    }
    return out;
}

// Insert a tiny interval to the right of the last component.
EquivStep make_split_step(const Region& from, const Ivl& ambient, const Rat& eps) {
    const Ivl& last = from.comp(from.size() - 1);
    Rat G = ambient.hi - last.hi;
    if (G.sign() <= 0) throw std::logic_error("split: no room right of the last component");
    Rat delta = min(eps / Rat(4) * last.length(), min(eps / Rat(4) * G, G / Rat(4)));
    Rat tiny_lo = last.hi + delta;
    Rat tiny_len = delta / Rat(8);
    EquivStep st;
    st.from = from;
    st.to = from.unite(Region::normalize({Ivl(tiny_lo, tiny_lo + tiny_len)}));

    Rat a = last.lo, b = last.hi;
    Rat mid = b + G / Rat(2);
    // expander: [a, b] onto [a, b + (9/8)delta], identity beyond mid
    std::vector<PLNode> exp_nodes;
    exp_nodes.push_back(PLNode{ambient.lo, ambient.lo});
    if (a != ambient.lo) exp_nodes.push_back(PLNode{a, a});
    exp_nodes.push_back(PLNode{b, b + Rat(9, 8) * delta});
    exp_nodes.push_back(PLNode{mid, mid});
    exp_nodes.push_back(PLNode{ambient.hi, ambient.hi});
    PLMap expander(DomainKind::Compact, std::move(exp_nodes));

    st.cover_fwd = expander;          // from ∪ tiny ⊆ expander(from)
    st.cover_bwd = PLMap::identity_on(ambient);  // from ⊆ id(to)
    st.witness = EquivWitness{PLMap::identity_on(ambient), expander.inverse(), eps};
    return st;
}

}  // namespace

EquivSequence build_equiv_sequence(const Region& K, const Region& L, const Rat& eps, bool monotone,
                                   const Ivl& ambient) {
    if (eps.sign() <= 0) throw std::invalid_argument("build_equiv_sequence: eps must be positive");
    if (!(ambient.lo < K.lo() && K.hi() < ambient.hi) || !(ambient.lo < L.lo() && L.hi() < ambient.hi))
        throw std::invalid_argument("build_equiv_sequence: regions must lie in the ambient interior");
    if (monotone) {
        if (K.size() != 1 || L.size() != 1 || !L.comp(0).contains(K.comp(0)))
            throw std::invalid_argument("build_equiv_sequence: monotone mode requires nested single components");
    }

    EquivSequence seq;
    seq.eps = eps;
    seq.regions.push_back(K);
    if (K == L) return seq;

    if (K.size() > L.size()) return reversed(build_equiv_sequence(L, K, eps, monotone, ambient));

    Region cur = K;
    // phase 1: equalize component counts by tiny-interval insertions
    while (cur.size() < L.size()) {
        EquivStep st = make_split_step(cur, ambient, eps);
        cur = st.to;
        seq.steps.push_back(std::move(st));
        seq.regions.push_back(cur);
    }

    // phase 2: move all component endpoints toward their targets, each step
    // bounded by eps/4 of the adjacent free segments
    std::vector<Rat> target = coords_of(L);
    long guard = 0;
    while (true) {
        std::vector<Rat> xs = coords_of(cur);
        if (xs == target) break;
        std::vector<Rat> bounds = xs;
        bounds.insert(bounds.begin(), ambient.lo);
        bounds.push_back(ambient.hi);
        std::vector<Rat> ys(xs.size(), Rat(0));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Rat seg_l = bounds[i + 1] - bounds[i];
            Rat seg_r = bounds[i + 2] - bounds[i + 1];
            Rat cap = eps / Rat(4) * min(seg_l, seg_r);
            Rat want = target[i] - xs[i];
            Rat step = want;
            if (step > cap) step = cap;
            if (step < -cap) step = -cap;
            ys[i] = xs[i] + step;
        }
        EquivStep st = make_morph_step(cur, xs, ys, ambient, eps);
        cur = st.to;
        seq.steps.push_back(std::move(st));
        seq.regions.push_back(cur);
        if (++guard > 100000) throw std::logic_error("build_equiv_sequence: deformation did not converge");
    }

    // every step must verify exactly
    for (const auto& st : seq.steps) {
        if (!check_equivalence(st.from, st.to, st.witness, ambient))
            throw std::logic_error("build_equiv_sequence: step failed its own equivalence check");
        if (!pl_image(st.cover_fwd, st.from).contains(st.to))
            throw std::logic_error("build_equiv_sequence: forward cover does not cover");
        if (!pl_image(st.cover_bwd, st.to).contains(st.from))
            throw std::logic_error("build_equiv_sequence: backward cover does not cover");
        if (!(st.cover_fwd.mu() < eps) || !(st.cover_bwd.mu() < eps))
            throw std::logic_error("build_equiv_sequence: cover map exceeds the budget");
    }
    if (monotone) {
        for (std::size_t i = 0; i + 1 < seq.regions.size(); ++i)
            if (!seq.regions[i + 1].contains(seq.regions[i]))
                throw std::logic_error("build_equiv_sequence: monotone chain is not nested");
    }
    return seq;
}

Rat omega_budget(long omega) {
    if (omega < 3) throw std::invalid_argument("omega_budget: omega >= 3 required");
    Rat budget(1, 3 * omega);
    Rat lhs = (Rat(1) + budget) * (Rat(1) + budget) - Rat(1);
    if (!(lhs <= Rat(1, omega))) throw std::logic_error("omega_budget: guarantee violated");
    return budget;
}

namespace {

// Four-slope profile on [x0, x1]: slopes (s, 1, 2-s) over quarters
// (1/4, 1/2, 1/4); fixes both endpoints, total displacement zero.
void append_profile(std::vector<PLNode>& nodes, const Rat& x0, const Rat& x1, const Rat& s) {
    Rat len = x1 - x0;
    Rat q = len / Rat(4);
    Rat y0 = x0;  // profiles anchor on the diagonal at both interval ends
    nodes.push_back(PLNode{x0, y0});
    nodes.push_back(PLNode{x0 + q, y0 + s * q});
    nodes.push_back(PLNode{x0 + Rat(3) * q, y0 + s * q + Rat(2) * q});
    // final node (x1, x1) appended by the caller or the next profile
}

}  // namespace

GeometryEater build_geometry_eater(const Template& t, long omega, const Rat& budget) {
    if (t.n != omega) throw std::invalid_argument("build_geometry_eater: template order mismatch");
    GeometryEater e;
    e.omega = omega;
    e.budget = budget;

    Region top = t.top_shape();
    if (top.size() != 1) throw std::logic_error("build_geometry_eater: top slice is not one interval");
    const Rat dlo = top.lo(), dhi = top.hi();
    Region bottom = t.slice_shape(0);
    if (bottom.size() != 1) throw std::logic_error("build_geometry_eater: bottom slice is not one interval");

    e.p = (bottom.lo() + bottom.hi()) / Rat(2);
    // attracting points just inside the top interval
    e.q1 = dlo * (Rat(1) + budget / Rat(2));
    e.q2 = Rat(1) - (Rat(1) - dhi) * (Rat(1) + budget / Rat(2));
    if (!(Rat(0) < e.q1 && e.q1 < e.p && e.p < e.q2 && e.q2 < Rat(1)))
        throw std::logic_error("build_geometry_eater: fixed-point layout failed");

    const Rat c = budget * Rat(15, 16);
    std::vector<PLNode> nodes;
    append_profile(nodes, Rat(0), e.q1, Rat(1) + c);   // attract q1 from the left
    append_profile(nodes, e.q1, e.p, Rat(1) - c);      // attract q1 from the right
    append_profile(nodes, e.p, e.q2, Rat(1) + c);      // repel p, attract q2
    append_profile(nodes, e.q2, Rat(1), Rat(1) - c);   // attract q2 from the right
    nodes.push_back(PLNode{Rat(1), Rat(1)});
    e.h = PLMap(DomainKind::Compact, std::move(nodes));
    if (!(e.h.mu() < budget)) throw std::logic_error("build_geometry_eater: slope budget violated");

    std::vector<Region> cur;
    for (long i = 0; i + 1 < omega; ++i) cur.push_back(t.slice_shape(i));

    const long cap = 10000;
    for (long j = 1; j <= cap; ++j) {
        for (auto& r : cur) r = pl_image(e.h, r);
        bool all_ok = true;
        long stuck = -1;
        std::vector<PLMap> alphas, betas;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            // the component carrying the repelling point
            std::optional<Ivl> pc;
            for (const auto& comp : cur[i].components())
                if (comp.contains(e.p)) pc = comp;
            if (!pc) throw std::logic_error("build_geometry_eater: lost the expanding component");
            PLMap alpha = PLMap::through(
                {PLNode{Rat(0), Rat(0)}, PLNode{pc->lo, dlo}, PLNode{pc->hi, dhi}, PLNode{Rat(1), Rat(1)}});
            PLMap beta = PLMap::identity_on(Ivl(Rat(0), Rat(1)));
            bool ok = alpha.mu() < budget && top.contains(cur[i]) &&
                      pl_image(alpha, cur[i]).contains(top);
            if (!ok) {
                all_ok = false;
                stuck = static_cast<long>(i);
                break;
            }
            alphas.push_back(std::move(alpha));
            betas.push_back(std::move(beta));
        }
        if (all_ok) {
            e.xi = j;
            e.alphas = std::move(alphas);
            e.betas = std::move(betas);
            if (!verify_geometry_eater(e, t))
                throw std::logic_error("build_geometry_eater: self-verification failed");
            return e;
        }
        (void)stuck;
    }
    throw std::runtime_error("build_geometry_eater: iteration cap exceeded before witnesses verified");
}

bool verify_geometry_eater(const GeometryEater& e, const Template& t) {
    if (e.omega != t.n || e.xi < 1) return false;
    if (!(e.h.mu() < e.budget)) return false;
    if (e.h.nodes().front().x != Rat(0) || e.h.nodes().front().y != Rat(0)) return false;
    if (e.h.nodes().back().x != Rat(1) || e.h.nodes().back().y != Rat(1)) return false;
    if (e.alphas.size() != static_cast<std::size_t>(e.omega - 1)) return false;
    if (e.betas.size() != e.alphas.size()) return false;
    Region top = t.top_shape();
    for (long i = 0; i + 1 < e.omega; ++i) {
        Region r = t.slice_shape(i);
        for (long j = 0; j < e.xi; ++j) r = pl_image(e.h, r);
        const PLMap& a = e.alphas[i];
        const PLMap& b = e.betas[i];
        if (!(a.mu() < e.budget) || !(b.mu() < e.budget)) return false;
        if (!pl_image(a, r).contains(top)) return false;
        if (!pl_image(b, top).contains(r)) return false;
    }
    return true;
}

}  // namespace ifshide
