#include "ifshide/leap.hpp"

#include <sstream>

namespace ifshide {

LeapPlan leap_constants(long omega, const Rat& r1, const Rat& r2, long xi) {
    if (omega < 3) throw std::invalid_argument("leap_constants: omega >= 3 required");
    if (r1 == r2) throw std::invalid_argument("leap_constants: r1 == r2 is a connector, not a leap");
    if (!(r1 > r2) || !(r2 >= Rat(1)))
        throw std::invalid_argument("leap_constants: requires r1 > r2 >= 1");
    if (xi < 1) throw std::invalid_argument("leap_constants: xi >= 1 required");

    LeapPlan plan;
    plan.omega = omega;
    plan.xi = xi;
    plan.budget = omega_budget(omega);
    plan.lambda = Rat(1, omega + xi + 1);
    plan.r1 = r1;
    plan.r2 = r2;
    plan.R = r1 - r2;
    auto to_long = [](const mpz_class& z, const char* what) {
        if (!z.fits_slong_p()) throw std::invalid_argument(std::string("leap_constants: ") + what);
        return z.get_si();
    };
    plan.p1 = to_long(r1.num(), "numerator out of range");
    plan.q1 = to_long(r1.den(), "denominator out of range");
    plan.p2 = to_long(r2.num(), "numerator out of range");
    plan.q2 = to_long(r2.den(), "denominator out of range");
    plan.mirrored = plan.q1 > plan.q2;

    Rat tau = Rat(1) / (Rat(plan.q_min()) * plan.R);
    std::ostringstream os;
    if (!tau.is_integer()) {
        os << "pair inadmissible for this omega, xi: tau = " << tau.str() << " is not an integer";
        throw InadmissibleError(os.str());
    }
    plan.tau = to_long(tau.num(), "tau out of range");
    if (plan.tau < omega + xi + 2) {
        os << "pair inadmissible for this omega, xi: tau = " << plan.tau << " < "
           << (omega + xi + 2);
        throw InadmissibleError(os.str());
    }
    return plan;
}

bool check_hiding_pair(const HidingPair& p, bool pasting) {
    const Rat& L = p.u.circumference();
    if (!(Rat(0) <= p.alpha) || !(p.alpha < L)) return false;
    if (!(Rat(0) <= p.M.lo()) || !(p.M.hi() <= L)) return false;
    // u(0) = -alpha on the circle
    Rat u0 = p.u.eval_mod(Rat(0));
    Rat minus_alpha = p.alpha.is_zero() ? Rat(0) : L - p.alpha;
    if (u0 != minus_alpha) return false;
    if (!p.u.image(p.M).contains(p.M)) return false;
    if (pasting) {
        if (p.u.eval_mod(p.alpha) != Rat(0)) return false;
        if (p.M.contains_point(Rat(0)) || p.M.contains_point(p.alpha)) return false;
        if (p.M.contains_point(L)) return false;  // 0 on the circle
    }
    return true;
}

CircleMap paste_star(const CircleMap& u, const CircleMap& U, const Rat& alpha) {
    const Rat& L = u.circumference();
    if (U.circumference() != L) throw std::invalid_argument("paste_star: circumference mismatch");
    if (!(Rat(0) < alpha) || !(alpha >= L && false) || !(alpha < L))
        if (!(Rat(0) < alpha && alpha < L)) throw std::invalid_argument("paste_star: alpha must lie in (0, L)");
    // both maps must carry [0, alpha] onto the same interval ending at 0
    auto check_ends = [&](const CircleMap& m, const char* name) {
        Rat at0 = m.eval_lift(Rat(0)), ata = m.eval_lift(alpha);
        if (ata - at0 != alpha)
            throw std::invalid_argument(std::string("paste_star: ") + name +
                                        " does not map [0, alpha] onto a matching interval");
        return std::pair<Rat, Rat>(at0, ata);
    };
    auto [u0, ua] = check_ends(u, "first map");
    auto [U0, Ua] = check_ends(U, "second map");
    if (u0 != U0 || ua != Ua)
        throw std::invalid_argument("paste_star: maps disagree at the seam (missing pasting property)");
    std::vector<PLNode> nodes;
    nodes.push_back(PLNode{Rat(0), u0});
    for (const auto& n : u.lift().nodes())
        if (Rat(0) < n.x && n.x < alpha) nodes.push_back(n);
    nodes.push_back(PLNode{alpha, ua});
    for (const auto& n : U.lift().nodes())
        if (alpha < n.x && n.x < L) nodes.push_back(n);
    nodes.push_back(PLNode{L, u0 + L});
    return CircleMap(L, PLMap(DomainKind::Compact, std::move(nodes)));
}

namespace {

// Circle bookkeeping: tau slices of width R; J(i) counts from the top.
struct CircleCtx {
    Rat L, R;
    long tau = 0, omega = 0, xi = 0;

    Ivl rslice(long i) const { return Ivl(Rat(i) * R, Rat(i + 1) * R); }
    Ivl jslice(long i) const { return rslice(tau - 1 - i); }
};

CircleCtx make_ctx(const LeapPlan& plan) {
    CircleCtx c;
    c.L = plan.circle();
    c.R = plan.R;
    c.tau = plan.tau;
    c.omega = plan.omega;
    c.xi = plan.xi;
    return c;
}

// Gadget maps renormalized to [0, R].
struct Gadgets {
    PLMap h, hinv, h2, a0, a0h, b0;
    std::vector<PLMap> alphas, betas;
    std::vector<std::vector<Region>> hj;  // hj[i][k] = h^k(slice i shape), scaled to [0, 1]
    Region top;                           // top-slice shape in [0, 1]
};

Gadgets make_gadgets(const CircleCtx& ctx, const Template& t, const GeometryEater& e) {
    Ivl unit(Rat(0), Rat(1)), target(Rat(0), ctx.R);
    Gadgets g{e.h.rescaled(unit, target),
              e.h.inverse().rescaled(unit, target),
              pl_compose(e.h, e.h).rescaled(unit, target),
              e.alphas[0].rescaled(unit, target),
              pl_compose(e.alphas[0], e.h).rescaled(unit, target),
              e.betas[0].rescaled(unit, target),
              {},
              {},
              {},
              t.top_shape()};
    for (const auto& a : e.alphas) g.alphas.push_back(a.rescaled(unit, target));
    for (const auto& b : e.betas) g.betas.push_back(b.rescaled(unit, target));
    for (long i = 0; i + 1 < ctx.omega; ++i) {
        std::vector<Region> row;
        row.push_back(t.slice_shape(i));
        for (long k = 1; k <= ctx.xi; ++k) row.push_back(pl_image(e.h, row.back()));
        g.hj.push_back(std::move(row));
    }
    return g;
}

Region scaled_at(const Region& shape01, const Rat& R, long slice) {
    return shape01.affine(R, Rat(slice) * R);
}

// Region of the pair (u_j, M_j): template slices iterated j times, the
// cascade h^{j+i}(T_0) on J(0..xi-j), the top shape elsewhere.
Region build_Mj(const CircleCtx& ctx, const Gadgets& g, long j) {
    std::vector<Ivl> parts;
    auto add = [&](const Region& shape01, long slice) {
        for (const auto& c : scaled_at(shape01, ctx.R, slice).components()) parts.push_back(c);
    };
    const bool final_pair = (j == ctx.xi + 1);
    for (long i = 0; i < ctx.tau; ++i) {
        if (!final_pair && i <= ctx.omega - 2) {
            add(g.hj[i][j], i);
            continue;
        }
        long jj = ctx.tau - 1 - i;  // J-index of this slice
        if (!final_pair && jj >= 0 && jj <= ctx.xi - j) {
            add(g.hj[0][j + jj], i);
            continue;
        }
        add(g.top, i);
    }
    return Region::normalize(std::move(parts));
}

CircleMap build_uj(const CircleCtx& ctx, const Gadgets& g, long j) {
    CircleMap u = CircleMap::rotation(ctx.L, -ctx.R);
    if (j == ctx.xi + 1) return u;  // translation pair
    for (long i = 0; i <= ctx.xi - 1 - j; ++i) u = u.with_fill(ctx.jslice(i), g.h);
    u = u.with_fill(ctx.jslice(ctx.xi - j), g.a0);
    return u;
}

CircleMap build_Uk(const CircleCtx& ctx, const Gadgets& g, long k) {
    CircleMap U = CircleMap::rotation(ctx.L, -ctx.R);
    if (k < ctx.xi) {
        for (long i = 0; i <= ctx.omega - 2; ++i) U = U.with_fill(ctx.rslice(i), g.h);
        for (long i = 0; i <= ctx.xi - k - 2; ++i) U = U.with_fill(ctx.jslice(i), g.h2);
        U = U.with_fill(ctx.jslice(ctx.xi - k - 1), g.a0h);
        U = U.with_fill(ctx.jslice(ctx.xi - k), g.a0);
    } else {
        // final step: expand every iterated slice over the top shape
        U = U.with_fill(ctx.rslice(0), g.a0);
        for (long i = 1; i <= ctx.omega - 2; ++i) U = U.with_fill(ctx.rslice(i), g.alphas[i]);
        U = U.with_fill(ctx.jslice(0), g.a0);
    }
    return U;
}

CircleMap build_Vk(const CircleCtx& ctx, const Gadgets& g, long k) {
    CircleMap V = CircleMap::identity(ctx.L);
    if (k < ctx.xi) {
        for (long i = 0; i <= ctx.omega - 2; ++i) V = V.with_fill(ctx.rslice(i), g.hinv);
        for (long i = 0; i <= ctx.xi - k - 1; ++i) V = V.with_fill(ctx.jslice(i), g.hinv);
        V = V.with_fill(ctx.jslice(ctx.xi - k), g.b0);
    } else {
        for (long i = 0; i <= ctx.omega - 2; ++i) V = V.with_fill(ctx.rslice(i), g.betas[i]);
        V = V.with_fill(ctx.jslice(0), g.b0);
    }
    return V;
}

CircleMap build_Dk(const CircleCtx& ctx, const Gadgets& g, long k) {
    CircleMap D = CircleMap::rotation(ctx.L, -ctx.R);
    if (k < ctx.xi) {
        for (long i = 0; i <= ctx.omega - 1; ++i) D = D.with_fill(ctx.rslice(i), g.hinv);
    } else {
        D = D.with_fill(ctx.rslice(0), g.b0);
        for (long i = 1; i <= ctx.omega - 1; ++i) D = D.with_fill(ctx.rslice(i), g.betas[i - 1]);
    }
    return D;
}

CircleMap build_Ek(const CircleCtx& ctx, const Gadgets& g, long k) {
    CircleMap E = CircleMap::identity(ctx.L);
    if (k < ctx.xi) {
        for (long i = 0; i <= ctx.omega - 2; ++i) E = E.with_fill(ctx.rslice(i), g.h);
        for (long i = 0; i <= ctx.xi - k - 1; ++i) E = E.with_fill(ctx.jslice(i), g.h);
        E = E.with_fill(ctx.jslice(ctx.xi - k), g.a0);
    } else {
        for (long i = 0; i <= ctx.omega - 2; ++i) E = E.with_fill(ctx.rslice(i), g.alphas[i]);
        E = E.with_fill(ctx.jslice(0), g.a0);
    }
    return E;
}

}  // namespace

InitialPair build_initial_pair(const LeapPlan& plan, const Template& t, const GeometryEater& e) {
    if (plan.tau < plan.omega + plan.xi + 2)
        throw InadmissibleError("build_initial_pair: slot shortfall (tau < omega + xi + 2)");
    CircleCtx ctx = make_ctx(plan);
    Gadgets g = make_gadgets(ctx, t, e);

    CircleMap u = build_uj(ctx, g, 0);
    Region M = build_Mj(ctx, g, 0);

    InitialPair ip{HidingPair{u, M, ctx.R}, PLMap::identity_on(Ivl(Rat(0), Rat(1))),
                   t.region().affine(ctx.R, Rat(0)),
                   Region::normalize({Ivl(Rat(0), Rat(1))}),
                   Region::normalize({Ivl(Rat(0), Rat(1))})};

    // component regions (for reporting and tests)
    ip.Mt = t.region().affine(ctx.R, Rat(0));
    {
        std::vector<Ivl> ms, mp;
        for (long i = ctx.omega; i <= ctx.tau - ctx.xi - 2; ++i)
            for (const auto& c : scaled_at(g.top, ctx.R, i).components()) ms.push_back(c);
        for (long jj = 0; jj <= ctx.xi; ++jj)
            for (const auto& c : scaled_at(g.hj[0][jj], ctx.R, ctx.tau - 1 - jj).components())
                mp.push_back(c);
        ip.Ms = Region::normalize(std::move(ms));
        ip.Mprime = Region::normalize(std::move(mp));
    }
    if (ip.Mt.unite(ip.Ms).unite(ip.Mprime) != M)
        throw std::logic_error("build_initial_pair: region decomposition mismatch");

    // nu: the contraction on [0, wR] continued by u on [wR, L]
    {
        const Rat wR = Rat(ctx.omega) * ctx.R;
        std::vector<PLNode> nodes;
        nodes.push_back(PLNode{Rat(0), Rat(0)});
        nodes.push_back(PLNode{wR, wR - ctx.R});
        for (const auto& n : u.lift().nodes())
            if (n.x > wR) nodes.push_back(n);
        ip.nu = PLMap(DomainKind::Compact, std::move(nodes));
        if (ip.nu.nodes().back().x != ctx.L || ip.nu.nodes().back().y != ctx.L - ctx.R)
            throw std::logic_error("build_initial_pair: nu endpoint mismatch");
    }

    // exact verification of every clause
    if (!(u.mu() < Rat(1, plan.omega)))
        throw std::logic_error("build_initial_pair: slope budget exceeded");
    if (!check_hiding_pair(ip.pair, /*pasting=*/true))
        throw std::logic_error("build_initial_pair: hiding-pair check failed");
    // rotation on [0, wR]: the first fill starts at L - (xi+1) R >= (w+1) R
    if (!(ctx.L - Rat(ctx.xi + 1) * ctx.R >= Rat(ctx.omega + 1) * ctx.R))
        throw std::logic_error("build_initial_pair: cascade collides with the template zone");
    for (const auto& n : u.lift().nodes())
        if (Rat(0) < n.x && n.x < Rat(ctx.omega) * ctx.R && n.y != n.x - ctx.R)
            throw std::logic_error("build_initial_pair: map is not the rotation near 0");
    // nu condition
    {
        Region img = pl_image(ip.nu, M);
        auto lhs = M.intersect(Ivl(Rat(0), ctx.L - ctx.R));
        if (lhs) {
            auto rhs = img.intersect(Ivl(Rat(0), ctx.L - ctx.R));
            if (!rhs || !rhs->contains(*lhs))
                throw std::logic_error("build_initial_pair: nu condition failed");
        }
    }
    // trace property: the bottom-slice content iterates through the cascade
    {
        Region cur = scaled_at(g.hj[0][0], ctx.R, 0);
        for (long i = 1; i <= ctx.xi + 1; ++i) {
            cur = u.image(cur);
            Region expect = g.hj[0][i - 1].affine(ctx.R, Rat(0));
            if (project_region(cur, ctx.R, Ivl(Rat(0), ctx.L)) != expect)
                throw std::logic_error("build_initial_pair: trace property failed");
        }
    }
    return ip;
}

KillingSequence build_killing_sequence(const InitialPair& ip, const LeapPlan& plan,
                                       const Template& t, const GeometryEater& e) {
    CircleCtx ctx = make_ctx(plan);
    Gadgets g = make_gadgets(ctx, t, e);
    const Rat eps(1, plan.omega);

    KillingSequence ks;
    for (long j = 0; j <= ctx.xi + 1; ++j)
        ks.pairs.push_back(HidingPair{build_uj(ctx, g, j), build_Mj(ctx, g, j), ctx.R});
    if (!(ks.pairs.front().u == ip.pair.u) || ks.pairs.front().M != ip.pair.M)
        throw std::logic_error("build_killing_sequence: first pair differs from the initial pair");
    // final pair is the plain translation pair
    if (!(ks.pairs.back().u == CircleMap::rotation(ctx.L, -ctx.R)))
        throw std::logic_error("build_killing_sequence: final map is not the rotation");

    for (long k = 0; k <= ctx.xi; ++k) {
        ks.U.push_back(build_Uk(ctx, g, k));
        ks.V.push_back(build_Vk(ctx, g, k));
        ks.D.push_back(build_Dk(ctx, g, k));
        ks.E.push_back(build_Ek(ctx, g, k));
    }

    auto fail = [](long k, const std::string& what) {
        std::ostringstream os;
        os << "build_killing_sequence: step " << k << ": " << what;
        throw std::logic_error(os.str());
    };
    for (long j = 0; j <= ctx.xi + 1; ++j) {
        if (!check_hiding_pair(ks.pairs[j], /*pasting=*/true)) fail(j, "pair fails the hiding check");
        if (!(ks.pairs[j].u.mu() < eps)) fail(j, "pair map exceeds the slope budget");
    }
    for (long k = 0; k <= ctx.xi; ++k) {
        const Region& M0 = ks.pairs[k].M;
        const Region& M1 = ks.pairs[k + 1].M;
        const CircleMap &U = ks.U[k], &V = ks.V[k], &D = ks.D[k], &E = ks.E[k];
        if (U.eval_lift(Rat(0)) != -ctx.R || U.eval_lift(ctx.R) != Rat(0))
            fail(k, "U lacks the rotation offset or the pasting property");
        if (!(U.mu() < eps)) fail(k, "mu(U) out of budget");
        if (!U.image(M0).contains(M1)) fail(k, "U does not carry M_k over M_{k+1}");
        if (V.eval_lift(Rat(0)) != Rat(0)) fail(k, "V does not fix 0");
        if (!(V.mu() < eps)) fail(k, "mu(V) out of budget");
        if (!V.image(M1).contains(M0)) fail(k, "V does not carry M_{k+1} over M_k");
        if (D.eval_lift(Rat(0)) != -ctx.R || D.eval_lift(ctx.R) != Rat(0))
            fail(k, "D lacks the rotation offset or the pasting property");
        if (!(D.mu() < eps)) fail(k, "mu(D) out of budget");
        if (!D.image(M1).contains(M0)) fail(k, "D does not carry M_{k+1} over M_k");
        if (E.eval_lift(Rat(0)) != Rat(0)) fail(k, "E does not fix 0");
        if (!(E.mu() < eps)) fail(k, "mu(E) out of budget");
        if (!E.image(M0).contains(M1)) fail(k, "E does not carry M_k over M_{k+1}");
    }
    // per-step slice identity at the bottom slice
    for (long j = 0; j < ctx.xi; ++j) {
        Region a = build_Mj(ctx, g, j).intersect(ctx.rslice(0)).value();
        Region b = build_Mj(ctx, g, j + 1).intersect(ctx.rslice(0)).value();
        Region ha = pl_image(e.h.rescaled(Ivl(Rat(0), Rat(1)), Ivl(Rat(0), ctx.R)), a);
        if (ha != b) fail(j, "bottom-slice contents do not advance by the eater");
    }
    return ks;
}

namespace {

struct AssemblyParts {
    PLMap F, G;
    PeriodicRegion K;
    AssemblyParts(PLMap f, PLMap g, PeriodicRegion k)
        : F(std::move(f)), G(std::move(g)), K(std::move(k)) {}
};

AssemblyParts assemble_standard(const LeapPlan& plan, const InitialPair& ip,
                                const KillingSequence& ks) {
    const Rat L = plan.circle();  // 1/q1
    const Rat R = plan.R;
    const long P = plan.p1 + plan.q1;
    const long i0 = plan.xi + 1;
    const Rat wR = Rat(plan.omega) * R;

    auto sliceL = [&](long i) { return Ivl(Rat(i) * L, Rat(i + 1) * L); };

    PLMap F = PLMap::translation(Rat(-1), DomainKind::FullLine);
    PLMap G(DomainKind::FullLine, {PLNode{Rat(0), plan.r1}, PLNode{wR, wR + plan.r2}});

    for (long k = 0; k < i0; ++k)
        for (long i = (k + 1) * P + plan.p1; i < (k + 2) * P; ++i)
            F = modify_over(F, sliceL(i), ks.V[k].lift(), ModifyMode::Fill);

    G = modify_over(G, sliceL(0), ip.nu, ModifyMode::Fill);
    for (long i = 1; i < P; ++i) G = modify_over(G, sliceL(i), ks.pairs[0].u.lift(), ModifyMode::Fill);
    for (long k = 0; k < i0; ++k) {
        G = modify_over(G, sliceL((k + 1) * P),
                        paste_star(ks.pairs[k].u, ks.U[k], R).lift(), ModifyMode::Fill);
        for (long i = (k + 1) * P + 1; i < (k + 1) * P + plan.p1; ++i)
            G = modify_over(G, sliceL(i), ks.U[k].lift(), ModifyMode::Fill);
        for (long i = (k + 1) * P + plan.p1; i < (k + 2) * P; ++i)
            G = modify_over(G, sliceL(i), ks.pairs[k + 1].u.lift(), ModifyMode::Fill);
    }

    auto content = [&](long i) -> const Region& {
        if (i < P) return ks.pairs[0].M;
        long k = i / P - 1;
        if (k >= i0) return ks.pairs[i0].M;
        long off = i - (k + 1) * P;
        return (off < plan.p1) ? ks.pairs[k].M : ks.pairs[k + 1].M;
    };
    const long lo_slice = -P;
    long hi_slice = (i0 + 2) * P;
    while (hi_slice % plan.q1 != 0) ++hi_slice;  // right window must sit on the 1/q2 grid
    std::vector<Ivl> parts;
    for (long i = lo_slice; i < hi_slice; ++i)
        for (const auto& c : content(i).components()) parts.push_back(c.translated(Rat(i) * L));
    Region core = Region::normalize(std::move(parts));

    std::vector<Ivl> right_shape_parts;
    Region top01 = ks.pairs[i0].M.intersect(Ivl(Rat(0), R)).value().affine(Rat(1) / R, Rat(0));
    for (long j = 0; j < plan.q1; ++j)
        for (const auto& c : top01.affine(R, Rat(j) * R).components()) right_shape_parts.push_back(c);
    Region right_shape = Region::normalize(std::move(right_shape_parts));

    PeriodicRegion K(core, Ivl(Rat(lo_slice) * L, Rat(hi_slice) * L),
                     Tail(ks.pairs[0].M, L), Tail(right_shape, Rat(1, plan.q2)));
    return AssemblyParts(std::move(F), std::move(G), std::move(K));
}

AssemblyParts assemble_mirrored(const LeapPlan& plan, const InitialPair& ip,
                                const KillingSequence& ks) {
    const Rat L = plan.circle();  // 1/q2
    const Rat R = plan.R;
    const long P = plan.p2 + plan.q2;
    const long i0 = plan.xi + 1;
    const Rat wR = Rat(plan.omega) * R;

    auto sliceL = [&](long i) { return Ivl(Rat(i) * L, Rat(i + 1) * L); };

    // reflected gadgets
    std::vector<CircleMap> u_hat, D_hat, E_hat;
    std::vector<Region> M_hat;
    for (long j = 0; j <= i0; ++j) {
        u_hat.push_back(ks.pairs[j].u.reflected());
        M_hat.push_back(reflect_region(ks.pairs[j].M, L));
    }
    for (long k = 0; k < i0; ++k) {
        D_hat.push_back(ks.D[k].reflected());
        E_hat.push_back(ks.E[k].reflected());
    }
    PLMap nu_hat = ip.nu.mirrored();  // domain [-L, 0], image [R-L, 0]

    // zone of a slice: 0 for i >= 0; descending blocks of width P leftward,
    // with the q2-wide upper strip of each block one zone higher
    auto zone = [&](long i) -> long {
        if (i >= 0) return 0;
        long k = (-i - 1) / P;
        long off = i + (k + 1) * P;  // in [0, P)
        long z = (off < plan.q2) ? k + 1 : k;
        return z > i0 ? i0 : z;
    };

    PLMap F = PLMap::translation(Rat(-1), DomainKind::FullLine);
    PLMap G(DomainKind::FullLine, {PLNode{-wR, -wR + plan.r1}, PLNode{Rat(0), plan.r2}});

    const long fill_lo = -(i0 + 2) * P;
    for (long i = fill_lo; i <= -1; ++i) {
        long zs = zone(i), zt = zone(i - plan.q2);
        if (zt == zs + 1) F = modify_over(F, sliceL(i), E_hat[zs].lift(), ModifyMode::Fill);
        else if (zt != zs) throw std::logic_error("assemble_mirrored: bad F-zone transport");
    }
    G = modify_over(G, sliceL(-1), nu_hat, ModifyMode::Fill);
    for (long i = fill_lo; i <= -2; ++i) {
        long zs = zone(i), z1 = zone(i + plan.p2), z2 = zone(i + plan.p2 + 1);
        if (z1 == zs && z2 == zs) {
            if (zs == i0) continue;  // plateau: the base map already acts correctly
            G = modify_over(G, sliceL(i), u_hat[zs].lift(), ModifyMode::Fill);
        } else if (z1 == zs - 1 && z2 == zs - 1) {
            G = modify_over(G, sliceL(i), D_hat[zs - 1].lift(), ModifyMode::Fill);
        } else if (z1 == zs && z2 == zs - 1) {
            G = modify_over(G, sliceL(i), paste_star(u_hat[zs], D_hat[zs - 1], L - R).lift(),
                            ModifyMode::Fill);
        } else {
            throw std::logic_error("assemble_mirrored: bad G-zone transport");
        }
    }

    long lo_slice = fill_lo;
    while (lo_slice % plan.q2 != 0) --lo_slice;  // left window on the 1/q1 grid
    const long hi_slice = P;
    std::vector<Ivl> parts;
    for (long i = lo_slice; i < hi_slice; ++i)
        for (const auto& c : M_hat[zone(i)].components()) parts.push_back(c.translated(Rat(i) * L));
    Region core = Region::normalize(std::move(parts));

    std::vector<Ivl> left_shape_parts;
    Region topref01 = M_hat[i0].intersect(Ivl(Rat(0), R)).value().affine(Rat(1) / R, Rat(0));
    for (long j = 0; j < plan.q2; ++j)
        for (const auto& c : topref01.affine(R, Rat(j) * R).components())
            left_shape_parts.push_back(c);
    Region left_shape = Region::normalize(std::move(left_shape_parts));

    PeriodicRegion K(core, Ivl(Rat(lo_slice) * L, Rat(hi_slice) * L),
                     Tail(left_shape, Rat(1, plan.q1)), Tail(M_hat[0], L));
    return AssemblyParts(std::move(F), std::move(G), std::move(K));
}

IFSPiece finish_leap(const LeapPlan& plan, AssemblyParts parts) {
    IFSPiece piece;
    piece.f = std::move(parts.F);
    piece.g = std::move(parts.G);
    piece.K = std::move(parts.K);
    piece.domain = PieceDomain::FullLine;
    piece.tags = {"C-class"};

    HidingReport rep = check_hiding_piece(piece, /*strong=*/false);
    if (!rep.passed) throw VerificationError("realize_leap: hiding verification failed", rep);
    Rat eps(1, plan.omega);
    if (!(piece.f.mu() <= eps) || !(piece.g.mu() <= eps))
        throw std::logic_error("realize_leap: slope budget exceeded");
    // tail translations as constructed
    auto left_t = [&](const PLMap& m) { return m.nodes().front().y - m.nodes().front().x; };
    auto right_t = [&](const PLMap& m) { return m.nodes().back().y - m.nodes().back().x; };
    if (left_t(piece.f) != Rat(-1) || right_t(piece.f) != Rat(-1))
        throw std::logic_error("realize_leap: f is not the unit left-translation outside the window");
    if (left_t(piece.g) != plan.r1 || right_t(piece.g) != plan.r2)
        throw std::logic_error("realize_leap: g tail translations are wrong");
    return piece;
}

}  // namespace

LeapToolkit make_leap_toolkit(long omega) {
    LeapToolkit kit;
    kit.omega = omega;
    kit.t = build_template(omega);
    kit.budget = omega_budget(omega);
    kit.e = build_geometry_eater(kit.t, omega, kit.budget);
    return kit;
}

IFSPiece realize_leap_with(const LeapToolkit& kit, const Rat& r1, const Rat& r2) {
    LeapPlan plan = leap_constants(kit.omega, r1, r2, kit.e.xi);
    InitialPair ip = build_initial_pair(plan, kit.t, kit.e);
    KillingSequence ks = build_killing_sequence(ip, plan, kit.t, kit.e);
    AssemblyParts parts = plan.mirrored ? assemble_mirrored(plan, ip, ks)
                                        : assemble_standard(plan, ip, ks);
    return finish_leap(plan, std::move(parts));
}

IFSPiece realize_leap(long omega, const Rat& r1, const Rat& r2) {
    LeapToolkit kit = make_leap_toolkit(omega);
    LeapPlan plan = leap_constants(omega, r1, r2, kit.e.xi);
    if (plan.mirrored)
        throw std::invalid_argument("realize_leap: standard orientation requires q1 <= q2");
    return realize_leap_with(kit, r1, r2);
}

IFSPiece realize_leap_mirrored(long omega, const Rat& r1, const Rat& r2) {
    LeapToolkit kit = make_leap_toolkit(omega);
    LeapPlan plan = leap_constants(omega, r1, r2, kit.e.xi);
    if (!plan.mirrored)
        throw std::invalid_argument("realize_leap_mirrored: requires q1 > q2");
    return realize_leap_with(kit, r1, r2);
}

LeapShapes leap_tail_shapes(const IFSPiece& leap) {
    if (!leap.K || !leap.K->left_tail() || !leap.K->right_tail())
        throw std::invalid_argument("leap_tail_shapes: piece has no two-sided tails");
    return LeapShapes{leap.K->left_tail()->shape, leap.K->right_tail()->shape};
}

}  // namespace ifshide
