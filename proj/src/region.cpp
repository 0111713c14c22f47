#include "ifshide/region.hpp"

#include <algorithm>

namespace ifshide {

Region Region::normalize(std::vector<Ivl> raw) {
    if (raw.empty()) throw std::invalid_argument("empty region");
    std::sort(raw.begin(), raw.end(),
              [](const Ivl& a, const Ivl& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    Region out;
    out.comps_.push_back(raw.front());
    for (std::size_t i = 1; i < raw.size(); ++i) {
        Ivl& last = out.comps_.back();
        if (raw[i].lo <= last.hi) {
            if (raw[i].hi > last.hi) last = Ivl(last.lo, raw[i].hi);
        } else {
            out.comps_.push_back(raw[i]);
        }
    }
    return out;
}

Rat Region::total_length() const {
    Rat s(0);
    for (const auto& c : comps_) s += c.length();
    return s;
}

bool Region::contains_point(const Rat& x) const {
    for (const auto& c : comps_) {
        if (x < c.lo) return false;
        if (x <= c.hi) return true;
    }
    return false;
}

bool Region::interior_contains_point(const Rat& x) const {
    for (const auto& c : comps_) {
        if (x <= c.lo) return false;
        if (x < c.hi) return true;
    }
    return false;
}

bool Region::contains(const Region& b) const {
    std::size_t i = 0;
    for (const auto& cb : b.comps_) {
        while (i < comps_.size() && comps_[i].hi < cb.lo) ++i;
        if (i == comps_.size() || !comps_[i].contains(cb)) return false;
    }
    return true;
}

bool Region::interior_contains(const Region& b) const {
    std::size_t i = 0;
    for (const auto& cb : b.comps_) {
        while (i < comps_.size() && comps_[i].hi <= cb.lo) ++i;
        if (i == comps_.size()) return false;
        const Ivl& ca = comps_[i];
        if (!(ca.lo < cb.lo && cb.hi < ca.hi)) return false;
    }
    return true;
}

Region Region::unite(const Region& b) const {
    std::vector<Ivl> all = comps_;
    all.insert(all.end(), b.comps_.begin(), b.comps_.end());
    return normalize(std::move(all));
}

std::optional<Region> Region::intersect(const Region& b) const {
    std::vector<Ivl> out;
    std::size_t i = 0, j = 0;
    while (i < comps_.size() && j < b.comps_.size()) {
        const Ivl& a = comps_[i];
        const Ivl& c = b.comps_[j];
        Rat lo = max(a.lo, c.lo), hi = min(a.hi, c.hi);
        if (lo < hi) out.emplace_back(lo, hi);
        if (a.hi < c.hi)
            ++i;
        else
            ++j;
    }
    if (out.empty()) return std::nullopt;
    return normalize(std::move(out));
}

std::optional<Region> Region::intersect(const Ivl& window) const {
    std::vector<Ivl> w{window};
    Region rw = normalize(std::move(w));
    return intersect(rw);
}

std::vector<Ivl> Region::uncovered(const Region& b) const {
    // For each component of b, the first sub-interval not covered by *this.
    std::vector<Ivl> out;
    for (const auto& cb : b.comps_) {
        Rat cur = cb.lo;
        bool gap_found = false;
        for (const auto& ca : comps_) {
            if (ca.hi <= cur) continue;
            if (ca.lo > cur) {
                out.emplace_back(cur, min(ca.lo, cb.hi));
                gap_found = true;
                break;
            }
            cur = ca.hi;
            if (cur >= cb.hi) break;
        }
        if (!gap_found && cur < cb.hi) out.emplace_back(cur, cb.hi);
    }
    return out;
}

Region Region::translated(const Rat& t) const {
    Region out;
    out.comps_.reserve(comps_.size());
    for (const auto& c : comps_) out.comps_.push_back(c.translated(t));
    return out;
}

Region Region::affine(const Rat& a, const Rat& b) const {
    if (a.sign() <= 0) throw std::invalid_argument("Region::affine: scale must be positive");
    Region out;
    out.comps_.reserve(comps_.size());
    for (const auto& c : comps_) out.comps_.emplace_back(a * c.lo + b, a * c.hi + b);
    return out;
}

Region Region::mirrored() const {
    Region out;
    out.comps_.reserve(comps_.size());
    for (auto it = comps_.rbegin(); it != comps_.rend(); ++it)
        out.comps_.emplace_back(-it->hi, -it->lo);
    return out;
}

Region project_region(const Region& r, const Rat& period, const Ivl& window) {
    if (period.sign() <= 0) throw std::invalid_argument("project: period must be positive");
    if (!is_multiple_of(window.length(), period))
        throw std::invalid_argument("project: window length must be an integer multiple of the period");
    if (!(window.lo <= r.lo() && r.hi() <= window.hi))
        throw std::invalid_argument("project: region must lie inside the window");
    std::vector<Ivl> out;
    for (const auto& c : r.components()) {
        // Split the component along the slice grid anchored at window.lo.
        Rat rel_lo = c.lo - window.lo;
        mpz_class m = floor_div(rel_lo, period);
        Rat slice_lo = window.lo + Rat(m) * period;
        Rat cur = c.lo;
        while (cur < c.hi) {
            Rat slice_hi = slice_lo + period;
            Rat hi = min(c.hi, slice_hi);
            if (cur < hi) out.emplace_back(cur - slice_lo, hi - slice_lo);
            cur = hi;
            slice_lo = slice_hi;
        }
    }
    // A component may touch the top of a slice; project maps it to [., period]
    // which folds to period itself only at a measure-zero point, kept as-is
    // inside [0, period] (shapes used in practice avoid slice endpoints).
    return Region::normalize(std::move(out));
}

PeriodicRegion::PeriodicRegion(Region core, Ivl window, std::optional<Tail> left,
                               std::optional<Tail> right)
    : core_(std::move(core)), window_(std::move(window)), left_(std::move(left)), right_(std::move(right)) {
    if (!(window_.lo <= core_.lo() && core_.hi() <= window_.hi))
        throw std::invalid_argument("PeriodicRegion: core must lie inside the window");
    if (left_ && !is_multiple_of(window_.lo, left_->period))
        throw std::invalid_argument("PeriodicRegion: window.lo must sit on the left tail grid");
    if (right_ && !is_multiple_of(window_.hi, right_->period))
        throw std::invalid_argument("PeriodicRegion: window.hi must sit on the right tail grid");
}

PeriodicRegion PeriodicRegion::compact(Region core) {
    Ivl w = core.hull();
    return PeriodicRegion(std::move(core), w, std::nullopt, std::nullopt);
}

Region PeriodicRegion::materialize(const Rat& lo, const Rat& hi) const {
    if (!(lo < hi)) throw std::invalid_argument("materialize: lo < hi required");
    std::vector<Ivl> parts;
    auto push_region = [&parts](const Region& r) {
        for (const auto& c : r.components()) parts.push_back(c);
    };
    push_region(core_);  // clipped to [lo, hi] at the end
    if (lo < window_.lo) {
        if (!left_) throw std::invalid_argument("materialize: range extends left of a tail-less window");
        const Rat& p = left_->period;
        for (mpz_class m = floor_div(lo, p); Rat(m) * p < window_.lo; ++m)
            push_region(left_->shape.translated(Rat(m) * p));
    }
    if (hi > window_.hi) {
        if (!right_) throw std::invalid_argument("materialize: range extends right of a tail-less window");
        const Rat& p = right_->period;
        for (mpz_class m = floor_div(window_.hi, p); Rat(m) * p < hi; ++m)
            push_region(right_->shape.translated(Rat(m) * p));
    }
    Region all = Region::normalize(std::move(parts));
    auto clipped = all.intersect(Ivl(lo, hi));
    if (!clipped) throw std::runtime_error("materialize: region empty on the requested range");
    return *clipped;
}

PeriodicRegion PeriodicRegion::translated(const Rat& t) const {
    return PeriodicRegion(core_.translated(t), window_.translated(t), left_, right_);
}

PeriodicRegion PeriodicRegion::mirrored() const {
    std::optional<Tail> nl, nr;
    // A right tail with shape S in (0, p) becomes a left tail with the
    // reflected shape p - S (slice-local reflection).
    if (right_) nl = Tail(right_->shape.mirrored().translated(right_->period), right_->period);
    if (left_) nr = Tail(left_->shape.mirrored().translated(left_->period), left_->period);
    return PeriodicRegion(core_.mirrored(), Ivl(-window_.hi, -window_.lo), nl, nr);
}

}  // namespace ifshide
