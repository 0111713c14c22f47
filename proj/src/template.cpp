#include "ifshide/template.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ifshide {

namespace {

struct RatLess {
    bool operator()(const Rat& a, const Rat& b) const { return a < b; }
};

Rat contraction(long n, const Rat& x) { return x * Rat(n - 1, n); }

}  // namespace

Region Template::slice_shape(long i) const {
    std::vector<Ivl> out;
    for (const auto& c : closed_intervals) {
        if (c.hi <= Rat(i) || c.lo >= Rat(i + 1)) continue;
        if (c.lo >= Rat(i) && c.hi <= Rat(i + 1))
            out.push_back(c.translated(Rat(-i)));
        else
            throw std::logic_error("Template: interval straddles the integer grid");
    }
    if (out.empty()) throw std::logic_error("Template: empty slice");
    return Region::normalize(std::move(out));
}

Region Template::region() const { return Region::normalize(closed_intervals); }

Template build_template(long n) {
    if (n < 3) throw std::invalid_argument("build_template: n >= 3 required");
    const Rat one(1), N(n);

    // smallest l with f^l(n) < 1
    Rat fl = N;
    long l = 0;
    while (fl >= one) {
        fl = contraction(n, fl);
        ++l;
    }
    const Rat floor_pt = fl;  // f^l(n)

    auto in_window = [&](const Rat& x) { return floor_pt <= x && x <= N; };

    // E_0 = {n}; E'_k = E_k ∩ [1, n]; E_{k+1} = C(E'_k) ∪ T(E'_k), where C and
    // T collect the forward f- and g-iterates staying inside [f^l(n), n].
    // The accumulated set is E_0 ∪ ... ∪ E_M where E'_{M+1} is the first
    // empty slice (E_{M+1} itself is not included).
    std::set<Rat, RatLess> accum;
    std::set<Rat, RatLess> cur{N};
    long guard = 0;
    while (true) {
        std::set<Rat, RatLess> prime;
        for (const auto& x : cur)
            if (one <= x && x <= N) prime.insert(x);
        if (prime.empty()) break;
        accum.insert(cur.begin(), cur.end());
        std::set<Rat, RatLess> next;
        for (const auto& x : prime) {
            Rat y = contraction(n, x);
            while (in_window(y)) {
                next.insert(y);
                y = contraction(n, y);
            }
            Rat z = x - one;
            while (in_window(z)) {
                next.insert(z);
                z = z - one;
            }
        }
        cur = std::move(next);
        // max E_k decreases by at least 1/n per step, so n^2+n steps suffice
        if (++guard > n * (n + 1)) throw std::logic_error("build_template: iteration did not terminate");
    }

    // P := {p0} ∪ (accum ∩ [1, n]) with p0 the largest accumulated point in (0, 1)
    std::vector<Rat> pts;
    std::optional<Rat> p0;
    for (const auto& x : accum) {
        if (Rat(0) < x && x < one) {
            if (!p0 || x > *p0) p0 = x;
        } else if (one <= x && x <= N) {
            pts.push_back(x);
        }
    }
    if (!p0) throw std::logic_error("build_template: no skeleton point below 1");
    pts.insert(pts.begin(), *p0);
    std::sort(pts.begin(), pts.end());

    Template t;
    t.n = n;
    t.points = pts;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) t.open_intervals.emplace_back(pts[k], pts[k + 1]);

    const std::size_t m = t.open_intervals.size() - 1;  // index of the top interval

    // canonical covering witnesses on the open skeleton: for target k, the
    // largest l with map(p_l) <= p_k (then map(p_{l+1}) >= p_{k+1})
    std::vector<long> f_src(m, -1), g_src(m, -1);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = m + 1; l-- > 0;) {
            if (contraction(n, pts[l]) <= pts[k]) {
                f_src[k] = static_cast<long>(l);
                break;
            }
        }
        for (std::size_t l = m + 1; l-- > 0;) {
            if (pts[l] - one <= pts[k]) {
                g_src[k] = static_cast<long>(l);
                break;
            }
        }
        if (f_src[k] < 0 || g_src[k] < 0)
            throw std::logic_error("build_template: missing covering witness on the skeleton");
        if (f_src[k] <= static_cast<long>(k) || g_src[k] <= static_cast<long>(k))
            throw std::logic_error("build_template: witness source does not follow its target");
        // witness sanity: the image of the source open interval covers the target
        auto check = [&](long src, bool is_f) {
            Rat a = pts[src], b = pts[src + 1];
            Rat ia = is_f ? contraction(n, a) : a - one;
            Rat ib = is_f ? contraction(n, b) : b - one;
            if (!(ia <= pts[k] && pts[k + 1] <= ib))
                throw std::logic_error("build_template: canonical witness fails to cover");
        };
        check(f_src[k], true);
        check(g_src[k], false);
    }

    // Shrink: process in increasing index order; interval i shrinks
    // symmetrically by 1/4 of the minimal slack over the covering relations
    // in which it is the source (targets already shrunk), capped by its length.
    const Rat sigma(n - 1, n);
    std::vector<Rat> shrink(m + 1, Rat(0));
    for (std::size_t i = 0; i <= m; ++i) {
        Rat bound = t.open_intervals[i].length();
        for (std::size_t k = 0; k < m; ++k) {
            Rat a = t.open_intervals[k].lo + shrink[k];
            Rat b = t.open_intervals[k].hi - shrink[k];
            if (f_src[k] == static_cast<long>(i)) {
                // need sigma * (src.lo + s) <= a and sigma * (src.hi - s) >= b
                Rat slack_lo = (a - contraction(n, t.open_intervals[i].lo)) / sigma;
                Rat slack_hi = (contraction(n, t.open_intervals[i].hi) - b) / sigma;
                bound = min(bound, min(slack_lo, slack_hi));
            }
            if (g_src[k] == static_cast<long>(i)) {
                Rat slack_lo = a - (t.open_intervals[i].lo - one);
                Rat slack_hi = (t.open_intervals[i].hi - one) - b;
                bound = min(bound, min(slack_lo, slack_hi));
            }
        }
        shrink[i] = bound / Rat(4);
        if (shrink[i].sign() <= 0) throw std::logic_error("build_template: nonpositive shrink slack");
    }
    for (std::size_t i = 0; i <= m; ++i) {
        t.closed_intervals.emplace_back(t.open_intervals[i].lo + shrink[i],
                                        t.open_intervals[i].hi - shrink[i]);
    }

    TemplateVerdict v = verify_template(t);
    if (!v.ok) throw std::logic_error("build_template: verification failed: " + v.detail);
    return t;
}

TemplateVerdict verify_template(const Template& t) {
    TemplateVerdict v;
    std::ostringstream why;
    const long n = t.n;
    const auto& T = t.closed_intervals;
    if (n < 3 || T.empty()) {
        v.detail = "structurally invalid";
        return v;
    }
    const std::size_t m = T.size() - 1;
    for (std::size_t i = 0; i + 1 < T.size(); ++i)
        if (!(T[i].hi < T[i + 1].lo)) {
            v.detail = "intervals not disjoint/ordered";
            return v;
        }
    if (!(Rat(0) < T.front().lo) || !(T.back().hi < Rat(n))) {
        v.detail = "region not inside (0, n)";
        return v;
    }
    // uniqueness in (0,1) and (n-1, n)
    long in01 = 0, intop = 0;
    for (const auto& c : T) {
        if (Rat(0) < c.lo && c.hi < Rat(1)) ++in01;
        if (Rat(n - 1) < c.lo && c.hi < Rat(n)) ++intop;
    }
    if (in01 != 1 || !(T[0].hi < Rat(1))) {
        v.detail = "the bottom interval is not the unique one in (0, 1)";
        return v;
    }
    if (intop != 1 || !(T[m].lo > Rat(n - 1))) {
        v.detail = "the top interval is not the unique one in (n-1, n)";
        return v;
    }
    // covering conditions by exhaustive search
    v.witness.f_source.assign(m, -1);
    v.witness.g_source.assign(m, -1);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < T.size(); ++l) {
            Rat ia = contraction(n, T[l].lo), ib = contraction(n, T[l].hi);
            if (ia <= T[k].lo && T[k].hi <= ib) {
                v.witness.f_source[k] = static_cast<long>(l);
                break;
            }
        }
        for (std::size_t l = 0; l < T.size(); ++l) {
            if (T[l].lo - Rat(1) <= T[k].lo && T[k].hi <= T[l].hi - Rat(1)) {
                v.witness.g_source[k] = static_cast<long>(l);
                break;
            }
        }
        if (v.witness.f_source[k] < 0) {
            why << "no contraction cover for interval " << k;
            v.detail = why.str();
            return v;
        }
        if (v.witness.g_source[k] < 0) {
            why << "no translation cover for interval " << k;
            v.detail = why.str();
            return v;
        }
    }
    v.ok = true;
    return v;
}

}  // namespace ifshide
