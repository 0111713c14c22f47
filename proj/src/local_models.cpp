#include "ifshide/local_models.hpp"

#include <sstream>

namespace ifshide {

RunwayPiece build_runway(long omega) {
    if (omega < 3) throw std::invalid_argument("build_runway: omega >= 3 required");
    Template t = build_template(omega);
    Region T0 = t.slice_shape(0);
    Region Tm = t.top_shape();

    const Rat eps(1, omega);
    EquivSequence seq =
        build_equiv_sequence(T0, Tm, eps, /*monotone=*/true, Ivl(Rat(0), Rat(1)));
    const long i0 = static_cast<long>(seq.length());
    if (i0 < 1) throw std::logic_error("build_runway: degenerate deformation sequence");
    const long d = omega + i0;

    // f1: contraction (1-1/w)x on [0, w], then x-1
    PLMap F(DomainKind::HalfLineRight, {PLNode{Rat(0), Rat(0)}, PLNode{Rat(omega), Rat(omega - 1)}});
    // perturbation: slice w-1+(i0-i) carries the step-i forward cover
    for (long i = 0; i < i0; ++i) {
        long s = omega - 1 + (i0 - i);
        F = modify_over(F, Ivl(Rat(s), Rat(s + 1)), seq.steps[i].cover_fwd, ModifyMode::Fill);
    }
    PLMap G = PLMap::translation(Rat(d), DomainKind::HalfLineRight);

    // region: template slices on [0, w); the deformation chain, descending,
    // on [w, w+i0); the bottom shape periodically beyond
    std::vector<Ivl> core_parts;
    auto add_shape = [&core_parts](const Region& shape, long slice) {
        for (const auto& c : shape.components()) core_parts.push_back(c.translated(Rat(slice)));
    };
    for (long i = 0; i < omega; ++i) add_shape(t.slice_shape(i), i);
    for (long j = 0; j < i0; ++j) add_shape(seq.regions[i0 - 1 - j], omega + j);
    Region core = Region::normalize(std::move(core_parts));

    RunwayPiece rw;
    rw.d = d;
    rw.i0 = i0;
    rw.right_shape = seq.regions[0];  // = T0
    rw.piece.f = F;
    rw.piece.g = G;
    rw.piece.domain = PieceDomain::HalfLine;
    rw.piece.tags = {"C-class"};
    rw.piece.K = PeriodicRegion(core, Ivl(Rat(0), Rat(d)), std::nullopt, Tail(rw.right_shape, Rat(1)));

    HidingReport rep = check_hiding_piece(rw.piece, /*strong=*/false);
    if (!rep.passed) throw VerificationError("build_runway: hiding verification failed", rep);
    if (F.mu() != Rat(1, omega))
        throw std::logic_error("build_runway: mu(F) != 1/omega (got " + F.mu().str() + ")");
    if (G.mu() != Rat(0)) throw std::logic_error("build_runway: mu(G) != 0");
    // zone sanity: beyond d every unit slice carries the bottom shape
    for (long i = d; i < d + 3; ++i) {
        Region slice = rw.piece.K->materialize(Rat(i), Rat(i + 1));
        if (slice.translated(Rat(-i)) != rw.right_shape)
            throw std::logic_error("build_runway: tail slice does not carry the bottom shape");
    }
    return rw;
}

ConnectorPiece build_connector(long omega, const Rat& r, const Region& K1, const Region& K2) {
    if (omega < 3) throw std::invalid_argument("build_connector: omega >= 3 required");
    if (r < Rat(1)) throw std::invalid_argument("build_connector: r >= 1 required");
    for (const Region* s : {&K1, &K2})
        if (!(Rat(0) < s->lo()) || !(s->hi() < Rat(1)))
            throw std::invalid_argument("build_connector: shapes must avoid 0 on the circle");

    const mpz_class pz = r.num(), qz = r.den();
    if (!pz.fits_slong_p() || !qz.fits_slong_p())
        throw std::invalid_argument("build_connector: ratio out of range");
    const long p = pz.get_si(), q = qz.get_si();
    const long P = p + q;
    const Rat L(1, q);

    Region K1q = K1.affine(L, Rat(0));
    Region K2q = K2.affine(L, Rat(0));

    ConnectorPiece cp;
    cp.r = r;
    cp.left_shape = K1q;
    cp.right_shape = K2q;
    cp.piece.domain = PieceDomain::FullLine;
    cp.piece.tags = {"C-class"};

    PLMap F = PLMap::translation(Rat(-1), DomainKind::FullLine);
    PLMap G = PLMap::translation(r, DomainKind::FullLine);

    if (r == Rat(1) && K1 == K2) {
        // identity connector: pure translations, fully periodic region
        cp.piece.f = F;
        cp.piece.g = G;
        cp.piece.K = PeriodicRegion(K1q, Ivl(Rat(0), L), Tail(K1q, L), Tail(K1q, L));
        HidingReport rep = check_hiding_piece(cp.piece, false);
        if (!rep.passed) throw VerificationError("build_connector: verification failed", rep);
        return cp;
    }

    EquivSequence seq = build_equiv_sequence(K1q, K2q, Rat(1, omega), /*monotone=*/false,
                                             Ivl(Rat(0), L));
    const long i0 = static_cast<long>(seq.length());

    auto slice = [&](long i) { return Ivl(Rat(i) * L, Rat(i + 1) * L); };
    // F-fills on the H_r blocks, G-fills on the H_l blocks
    for (long k = 0; k < i0; ++k) {
        for (long i = k * P + p; i < (k + 1) * P; ++i)
            F = modify_over(F, slice(i), seq.steps[k].cover_bwd, ModifyMode::Fill);
        for (long i = k * P; i < k * P + p; ++i)
            G = modify_over(G, slice(i), seq.steps[k].cover_fwd, ModifyMode::Fill);
    }

    // contents: M_0 for i < 0 and on H_l{0}; M_k on H_l{k}; M_{k+1} on H_r{k};
    // M_{i0} beyond
    auto content = [&](long i) -> const Region& {
        if (i < 0) return seq.regions.front();
        long k = i / P;
        if (k >= i0) return seq.regions.back();
        long off = i - k * P;
        return (off < p) ? seq.regions[k] : seq.regions[k + 1];
    };
    const long lo_slice = -P, hi_slice = (i0 + 2) * P;  // window per the construction
    std::vector<Ivl> core_parts;
    for (long i = lo_slice; i < hi_slice; ++i)
        for (const auto& c : content(i).components()) core_parts.push_back(c.translated(Rat(i) * L));
    Region core = Region::normalize(std::move(core_parts));

    cp.piece.f = F;
    cp.piece.g = G;
    cp.piece.K = PeriodicRegion(core, Ivl(Rat(lo_slice) * L, Rat(hi_slice) * L), Tail(K1q, L),
                                Tail(K2q, L));

    HidingReport rep = check_hiding_piece(cp.piece, false);
    if (!rep.passed) throw VerificationError("build_connector: hiding verification failed", rep);
    if (!(F.mu() < Rat(1, omega)) || !(G.mu() < Rat(1, omega)))
        throw std::logic_error("build_connector: slope budget exceeded");
    return cp;
}

}  // namespace ifshide
