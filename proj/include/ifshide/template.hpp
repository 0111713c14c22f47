#pragma once

#include <vector>

#include "ifshide/region.hpp"

namespace ifshide {

/// Interval skeleton in (0, n) that is simultaneously self-covered under the
/// contraction x -> (1-1/n)x and the translation x -> x-1.
struct Template {
    long n = 0;
    std::vector<Rat> points;          // the p_i, ascending
    std::vector<Ivl> open_intervals;  // (p_k, p_{k+1}) pre-shrink
    std::vector<Ivl> closed_intervals;  // T_i post-shrink, strictly inside the open ones

    /// Slice i content: region of the T_j lying inside [i, i+1], shifted to [0, 1].
    /// Intervals never straddle the integer grid, so this is well defined.
    Region slice_shape(long i) const;
    /// The whole region ∪ T_j.
    Region region() const;
    /// T_m (the unique interval in (n-1, n)) as a shape in [0, 1].
    Region top_shape() const { return slice_shape(n - 1); }
};

Template build_template(long n);

struct TemplateWitness {
    // for each interval index i <= m-1: covering sources under f and g
    std::vector<long> f_source, g_source;
};

struct TemplateVerdict {
    bool ok = false;
    std::string detail;
    TemplateWitness witness;
};
TemplateVerdict verify_template(const Template& t);

}  // namespace ifshide
