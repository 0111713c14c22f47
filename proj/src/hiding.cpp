#include "ifshide/hiding.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace ifshide {

bool IFSPiece::has_tag(const std::string& t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
}

void IFSPiece::validate() const {
    auto expect = [&](DomainKind k) {
        if (f.kind() != k || g.kind() != k)
            throw std::invalid_argument("IFSPiece: map domain kind does not match the piece domain");
    };
    switch (domain) {
        case PieceDomain::UnitInterval: expect(DomainKind::Compact); break;
        case PieceDomain::HalfLine: expect(DomainKind::HalfLineRight); break;
        case PieceDomain::FullLine: expect(DomainKind::FullLine); break;
    }
}

std::string HidingReport::render() const {
    std::ostringstream os;
    os << "hiding-report\n";
    os << "passed: " << (passed ? "true" : "false") << "\n";
    os << "strong: " << (strong ? "true" : "false") << "\n";
    if (window_used)
        os << "window: [" << window_used->lo.str() << ", " << window_used->hi.str() << "]\n";
    else
        os << "window: none\n";
    os << "reason: " << (reason.empty() ? "-" : reason) << "\n";
    os << "violations: " << violations.size() << "\n";
    for (const auto& v : violations) {
        os << "  map " << v.map_tag << " component [" << v.component.lo.str() << ", "
           << v.component.hi.str() << "] uncovered [" << v.uncovered.lo.str() << ", "
           << v.uncovered.hi.str() << "]\n";
    }
    return os.str();
}

namespace {

// First uncovered sub-interval per component of `targets` not covered by
// `cover` (interior coverage in strong mode).
void collect_violations(const std::string& tag, const Region& targets, const Region& cover,
                        bool strong, std::vector<Violation>& out) {
    bool ok = strong ? cover.interior_contains(targets) : cover.contains(targets);
    if (ok) return;
    for (const auto& comp : targets.components()) {
        Region one = Region::normalize({comp});
        bool comp_ok = strong ? cover.interior_contains(one) : cover.contains(one);
        if (comp_ok) continue;
        auto gaps = cover.uncovered(one);
        if (!gaps.empty()) {
            out.push_back(Violation{tag, comp, gaps.front()});
        } else {
            // covered but not interior-covered: report the touching endpoint side
            out.push_back(Violation{tag, comp, comp});
        }
    }
}

void check_one_map(const std::string& tag, const PLMap& m, const Region& K, const Ivl& X,
                   bool strong, std::vector<Violation>& out) {
    Rat mlo = m.eval(X.lo), mhi = m.eval(X.hi);
    Region mX = Region::normalize({Ivl(mlo, mhi)});
    auto targets = K.intersect(mX);
    if (!targets) return;  // K misses the image entirely: nothing to cover
    Region cover = pl_image(m, K);
    collect_violations(tag, *targets, cover, strong, out);
}

}  // namespace

HidingReport check_hiding(const PLMap& f, const PLMap& g, const Region& K, const Ivl& X,
                          bool strong) {
    HidingReport rep;
    rep.strong = strong;
    rep.window_used = X;
    // preconditions: K inside X, maps send X into X
    if (!(X.lo <= K.lo() && K.hi() <= X.hi))
        throw std::invalid_argument("check_hiding: K must lie inside X");
    for (const PLMap* m : {&f, &g}) {
        if (!m->domain_contains(X.lo) || !m->domain_contains(X.hi))
            throw std::invalid_argument("check_hiding: X not inside the map domain");
        if (m->eval(X.lo) < X.lo || m->eval(X.hi) > X.hi)
            throw std::invalid_argument("check_hiding: map does not send X into X");
    }
    if (K.size() == 1 && K.comp(0) == X) {
        rep.passed = false;
        rep.reason = "K equals X";
        return rep;
    }
    check_one_map("f", f, K, X, strong, rep.violations);
    check_one_map("g", g, K, X, strong, rep.violations);
    rep.passed = rep.violations.empty();
    return rep;
}

namespace {

struct TailInfo {
    Rat t_f, t_g;  // tail translations of f and g on this side
    Rat period;
};

Rat left_translation(const PLMap& m) { return m.nodes().front().y - m.nodes().front().x; }
Rat right_translation(const PLMap& m) { return m.nodes().back().y - m.nodes().back().x; }

}  // namespace

HidingReport check_hiding_piece(const IFSPiece& p, bool strong) {
    p.validate();
    if (!p.K) throw std::invalid_argument("check_hiding_piece: piece has no hiding-region candidate");
    const PeriodicRegion& K = *p.K;

    if (p.domain == PieceDomain::UnitInterval) {
        if (K.left_tail() || K.right_tail())
            throw std::invalid_argument("check_hiding_piece: compact piece with periodic tails");
        return check_hiding(p.f, p.g, K.core(), Ivl(Rat(0), Rat(1)), strong);
    }

    const bool full = (p.domain == PieceDomain::FullLine);
    if (!K.right_tail()) throw std::invalid_argument("check_hiding_piece: missing right tail");
    if (full && !K.left_tail()) throw std::invalid_argument("check_hiding_piece: missing left tail");

    // Commensurability of tail translations with the tail periods makes the
    // infinite check finite: beyond the node spans both maps are exact
    // translations and K is exactly periodic, so one period certifies all
    // slices; the window below also covers every junction case.
    std::optional<TailInfo> left, right;
    right = TailInfo{right_translation(p.f), right_translation(p.g), K.right_tail()->period};
    if (full) left = TailInfo{left_translation(p.f), left_translation(p.g), K.left_tail()->period};
    for (const auto& ti : {left, right}) {
        if (!ti) continue;
        if (!is_multiple_of(ti->t_f, ti->period) || !is_multiple_of(ti->t_g, ti->period))
            throw std::invalid_argument("tails not commensurate");
    }

    Rat span_lo = min(p.f.nodes().front().x, min(p.g.nodes().front().x, K.window().lo));
    Rat span_hi = max(p.f.nodes().back().x, max(p.g.nodes().back().x, K.window().hi));

    Rat Tmax(0);
    for (const auto& ti : {left, right}) {
        if (!ti) continue;
        Tmax = max(Tmax, max(ti->t_f.abs(), ti->t_g.abs()));
    }
    Rat rho_max = right->period;
    if (left) rho_max = max(rho_max, left->period);
    Rat W = Rat(2) * (Tmax + rho_max);
    Rat extra = Tmax + Rat(2) * rho_max;

    Rat lo = full ? span_lo - W : Rat(0);
    Rat hi = span_hi + W;
    Rat mat_lo = full ? lo - extra : Rat(0);
    Rat mat_hi = hi + extra;

    HidingReport rep;
    rep.strong = strong;
    rep.window_used = Ivl(lo, hi);

    Region Kbig = K.materialize(mat_lo, mat_hi);
    // K proper: tail shapes avoid slice endpoints, but check anyway.
    if (Kbig.size() == 1 && Kbig.comp(0) == Ivl(mat_lo, mat_hi)) {
        rep.reason = "K equals X";
        return rep;
    }

    for (const auto& [tag, m] : {std::pair<const char*, const PLMap*>{"f", &p.f}, {"g", &p.g}}) {
        // On the full line a degree-one map is onto; on the half line its
        // image is [m(0), +inf). Targets are restricted to the safe window.
        Rat tgt_lo = lo;
        if (!full) tgt_lo = max(lo, m->eval(Rat(0)));
        if (!(tgt_lo < hi)) continue;
        auto targets = Kbig.intersect(Ivl(tgt_lo, hi));
        if (!targets) continue;
        Region cover = pl_image(*m, Kbig);
        collect_violations(tag, *targets, cover, strong, rep.violations);
    }
    rep.passed = rep.violations.empty();
    return rep;
}

BoundaryExclusionResult boundary_exclusions(const IFSPiece& p) {
    BoundaryExclusionResult res;
    if (p.domain != PieceDomain::UnitInterval || !p.K) {
        res.failed_clause = "piece is not a compact unit-interval system with a region";
        return res;
    }
    const Region& K = p.K->core();
    if (K.contains_point(Rat(0))) { res.failed_clause = "0 not in K"; return res; }
    if (K.contains_point(Rat(1))) { res.failed_clause = "1 not in K"; return res; }
    Rat f1 = p.f.eval(Rat(1)), g0 = p.g.eval(Rat(0));
    if (K.contains_point(f1)) { res.failed_clause = "f(1) not in K"; return res; }
    if (K.contains_point(g0)) { res.failed_clause = "g(0) not in K"; return res; }
    for (const auto& c : K.components()) {
        bool inside_f = c.hi <= f1, outside_f = c.lo >= f1;
        if (!inside_f && !outside_f) {
            res.failed_clause = "component straddles the boundary of f(I)";
            return res;
        }
        bool inside_g = c.lo >= g0, outside_g = c.hi <= g0;
        if (!inside_g && !outside_g) {
            res.failed_clause = "component straddles the boundary of g(I)";
            return res;
        }
    }
    res.ok = true;
    return res;
}

bool periodic_contains_point(const PeriodicRegion& K, const Rat& x, bool interior) {
    if (K.window().lo <= x && x <= K.window().hi) {
        // window boundary points may also belong to the adjacent tail slice
        bool in_core = interior ? K.core().interior_contains_point(x) : K.core().contains_point(x);
        if (in_core) return true;
    }
    auto in_tail = [&](const Tail& t, bool beyond) {
        if (!beyond) return false;
        mpz_class m = floor_div(x, t.period);
        Rat local = x - Rat(m) * t.period;
        return interior ? t.shape.interior_contains_point(local) : t.shape.contains_point(local);
    };
    if (K.left_tail() && x < K.window().lo && in_tail(*K.left_tail(), true)) return true;
    if (K.right_tail() && x > K.window().hi && in_tail(*K.right_tail(), true)) return true;
    return false;
}

Rat periodic_distance(const PeriodicRegion& K, const Rat& x) {
    // exact distance from x to K as a subset of the line
    Rat lo = min(x - Rat(1), K.window().lo - Rat(1));
    Rat hi = max(x + Rat(1), K.window().hi + Rat(1));
    if (K.left_tail()) {
        Rat p = K.left_tail()->period;
        lo = min(lo, x - Rat(2) * p);
    }
    if (K.right_tail()) {
        Rat p = K.right_tail()->period;
        hi = max(hi, x + Rat(2) * p);
    }
    Rat mat_lo = lo, mat_hi = hi;
    if (!K.left_tail()) mat_lo = min(K.window().lo, x - Rat(1));
    if (!K.right_tail()) mat_hi = max(K.window().hi, x + Rat(1));
    Region R = K.materialize(mat_lo, mat_hi);
    Rat best = (x - R.lo()).abs();
    for (const auto& c : R.components()) {
        if (c.contains(x)) return Rat(0);
        best = min(best, min((x - c.lo).abs(), (x - c.hi).abs()));
    }
    return best;
}

namespace {

struct RatLess {
    bool operator()(const Rat& a, const Rat& b) const { return a < b; }
};

}  // namespace

OrbitReport orbit_audit(const IFSPiece& p, const Rat& seed, long depth) {
    p.validate();
    if (depth < 0) throw std::invalid_argument("orbit_audit: depth must be >= 0");
    const bool compact = (p.domain == PieceDomain::UnitInterval);
    // pruning window on unbounded domains
    std::optional<Rat> prune_lo, prune_hi;
    if (!compact && p.K) {
        Rat tf = right_translation(p.f), tg = right_translation(p.g);
        Rat reach = max(Rat(1), max(tf.abs(), tg.abs()));
        prune_hi = p.K->window().hi + Rat(4) * reach;
        if (p.domain == PieceDomain::FullLine) {
            Rat tfl = left_translation(p.f), tgl = left_translation(p.g);
            Rat reachl = max(Rat(1), max(tfl.abs(), tgl.abs()));
            prune_lo = p.K->window().lo - Rat(4) * reachl;
        } else {
            prune_lo = Rat(0);
        }
    }

    OrbitReport rep;
    std::set<Rat, RatLess> visited;
    std::deque<std::pair<Rat, long>> queue;
    auto consider = [&](const Rat& x, long d) {
        if (visited.count(x)) return;
        visited.insert(x);
        if (p.K) {
            bool inside = periodic_contains_point(*p.K, x, /*interior=*/true);
            if (inside) rep.all_outside = false;
            Rat dist = periodic_distance(*p.K, x);
            if (!rep.min_distance_to_K_interior || dist < *rep.min_distance_to_K_interior)
                rep.min_distance_to_K_interior = dist;
        }
        bool in_window = (!prune_lo || x >= *prune_lo) && (!prune_hi || x <= *prune_hi);
        if (d < depth && in_window) queue.emplace_back(x, d);
    };
    consider(seed, 0);
    while (!queue.empty()) {
        auto [x, d] = queue.front();
        queue.pop_front();
        for (const PLMap* m : {&p.f, &p.g}) {
            if (!m->domain_contains(x)) continue;
            consider(m->eval(x), d + 1);
        }
    }
    rep.visited_count = visited.size();
    return rep;
}

Region approx_minimal_set(const IFSPiece& p, long depth, const Rat& resolution) {
    if (p.domain != PieceDomain::UnitInterval)
        throw std::invalid_argument("approx_minimal_set: unit-interval pieces only");
    if (resolution.sign() <= 0) throw std::invalid_argument("approx_minimal_set: resolution must be positive");
    std::set<Rat, RatLess> visited;
    std::deque<std::pair<Rat, long>> queue;
    queue.emplace_back(Rat(0), 0);
    visited.insert(Rat(0));
    while (!queue.empty()) {
        auto [x, d] = queue.front();
        queue.pop_front();
        if (d >= depth) continue;
        for (const PLMap* m : {&p.f, &p.g}) {
            Rat y = m->eval(x);
            if (!visited.count(y)) {
                visited.insert(y);
                queue.emplace_back(y, d + 1);
            }
        }
    }
    std::set<mpz_class> cells;
    mpz_class last_cell = floor_div(Rat(1), resolution) - 1;
    for (const auto& x : visited) {
        mpz_class c = floor_div(x, resolution);
        if (c > last_cell) c = last_cell;  // the point 1 belongs to the top cell
        cells.insert(c);
    }
    std::vector<Ivl> ivls;
    for (const auto& c : cells) ivls.emplace_back(Rat(c) * resolution, Rat(c + 1) * resolution);
    return Region::normalize(std::move(ivls));
}

}  // namespace ifshide
