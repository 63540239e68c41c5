#include "derivedlab/resolution.hpp"

#include <algorithm>
#include <deque>

namespace dlab {

AModule Resolution::term(size_t n) const {
    if (n < P.size()) return P[n].mod;
    if (complete) return zero_module(M.A);
    throw ValidationError("resolution term beyond computed depth");
}

AHom Resolution::dmap(size_t n) const {
    if (n < d.size()) return d[n];
    if (complete) return a_zero(term(n + 1), term(n));
    throw ValidationError("resolution differential beyond computed depth");
}

ProjModule Resolution::proj_term(size_t n) const {
    if (n < P.size()) return P[n];
    if (complete) return ProjModule{zero_module(M.A), {}, {}, {}, {}};
    throw ValidationError("resolution term beyond computed depth");
}

Complex Resolution::complex() const {
    size_t L = length();
    std::vector<AModule> terms;
    std::vector<AHom> diffs;
    for (size_t i = 0; i <= L; ++i) terms.push_back(P[L - i].mod);
    for (size_t i = 0; i + 1 <= L; ++i) diffs.push_back(d[L - 1 - i]);
    return Complex(M.A, -(int)L, std::move(terms), std::move(diffs));
}

Resolution minimal_projective_resolution(const AModule& M, int depth) {
    if (depth < 0) throw ValidationError("resolution depth must be >= 0");
    Cover c0 = projective_cover(M);
    Resolution R{M, {c0.P}, {}, c0.onto, {}, true, false, std::nullopt};
    AHom last = c0.onto;
    while ((int)R.length() < depth) {
        SubModule K = a_kernel(last);
        if (K.S.rank() == 0) {
            R.complete = true;
            break;
        }
        R.syzygy.push_back(K.S);
        Cover ci = projective_cover(K.S);
        AHom di = a_compose(K.incl, ci.onto);
        R.P.push_back(ci.P);
        R.d.push_back(di);
        last = di;
    }
    if (!R.complete) {
        SubModule K = a_kernel(last);
        if (K.S.rank() == 0) R.complete = true;
        else R.syzygy.push_back(K.S); // one syzygy past the last term, for the recurrence scan
    }
    R.minimal = resolution_is_minimal(R);
    if (!R.complete) {
        for (size_t t = 2; t <= R.syzygy.size() && !R.period; ++t) {
            for (size_t s = 1; s < t; ++s) {
                const AModule& Os = R.syzygy[s - 1];
                if (Os.rank() == 0) continue;
                if (auto iso = find_isomorphism(Os, R.syzygy[t - 1])) {
                    R.period = PeriodicityCert{s, t, *iso};
                    break;
                }
            }
        }
    }
    return R;
}

bool resolution_is_minimal(const Resolution& R) {
    // no split summand: each kernel lands in the radical of the covering term
    ZmMat rad0 = radical_submodule(R.P[0].mod);
    ZmMat k0 = kernel_generators(R.aug.add());
    for (size_t r = 0; r < k0.rows; ++r) {
        if (!submodule_contains(R.P[0].mod.pres, rad0, k0.row(r))) return false;
    }
    for (size_t i = 0; i < R.d.size(); ++i) {
        ZmMat rad = radical_submodule(R.P[i].mod);
        ZmMat im = image_generators(R.d[i].add());
        for (size_t r = 0; r < im.rows; ++r) {
            if (!submodule_contains(R.P[i].mod.pres, rad, im.row(r))) return false;
        }
    }
    return true;
}

bool resolution_is_exact(const Resolution& R) {
    if (!is_surjective(R.aug.add())) return false;
    for (size_t i = 0; i < R.d.size(); ++i) {
        const AHom& out = (i == 0) ? R.aug : R.d[i - 1];
        if (!a_compose(out, R.d[i]).is_zero()) return false;
        if (a_kernel(out).S.card() != a_image(R.d[i]).S.card()) return false;
    }
    if (R.complete) {
        const AHom& last = R.d.empty() ? R.aug : R.d.back();
        if (a_kernel(last).S.card() != 1) return false;
    }
    return true;
}

InjResolution injective_resolution(const AModule& M, int depth) {
    Resolution R = minimal_projective_resolution(dual_module(M), depth);
    AHom Daug = dual_hom(R.aug); // D(D(M)) -> D(P_0), and D(D(M)) coincides with M
    InjResolution out{M, {}, {}, AHom(M, Daug.dst, Daug.a), R.complete};
    for (size_t i = 0; i < R.P.size(); ++i) out.J.push_back(dual_module(R.P[i].mod));
    for (size_t i = 0; i < R.d.size(); ++i) out.d.push_back(dual_hom(R.d[i]));
    return out;
}

Complex InjResolution::complex() const {
    return Complex(M.A, 0, J, d);
}

AHom ExtGroup::rep_of(const Elem& c) const {
    Elem x = section_apply(cls, cocyc.K, c);
    return hs.from_coords(cocyc.incl(x));
}

Elem ExtGroup::class_of(const AHom& f) const {
    auto x = solve_in_presentation(cocyc.incl, hs.to_coords(f));
    if (!x) throw ValidationError("ext: map is not a cocycle");
    return cls.proj(*x);
}

ExtGroup ext_group(const Resolution& R, const AModule& N, size_t n) {
    AModule Pn = R.term(n), Pn1 = R.term(n + 1);
    AHomSpace hs = hom_space(Pn, N);
    AHomSpace hs1 = hom_space(Pn1, N);
    KernelPres kc = kernel_of_addmap(hom_precompose(hs, hs1, R.dmap(n)));
    ZmMat G(hs.coords.mod, 0, kc.K.rank());
    if (n >= 1) {
        AHomSpace hs0 = hom_space(R.term(n - 1), N);
        AHom dn = R.dmap(n - 1);
        G = ZmMat(hs.coords.mod, hs0.coords.rank(), kc.K.rank());
        for (size_t g = 0; g < hs0.coords.rank(); ++g) {
            Elem e = elem_zero(hs0.coords);
            e[g] = 1;
            Elem b = hs.to_coords(a_compose(hs0.from_coords(e), dn));
            auto w = solve_in_presentation(kc.incl, b);
            if (!w) throw ComputeError("ext: coboundary is not a cocycle");
            for (size_t c = 0; c < G.cols; ++c) G.at(g, c) = (*w)[c];
        }
    }
    QuotPres q = quotient_by_submodule(kc.K, G);
    return ExtGroup{q.Q, N, Pn, Pn1, hs, kc, q, n};
}

ModuleSES make_module_ses(const AHom& i, const AHom& p) {
    if (!(i.dst == p.src)) throw ValidationError("ses: middle modules differ");
    if (!a_compose(p, i).is_zero()) throw ValidationError("ses: p∘i is nonzero");
    if (!is_injective(i.add())) throw ValidationError("ses: i is not injective");
    if (!is_surjective(p.add())) throw ValidationError("ses: p is not surjective");
    if (a_kernel(p).S.card() != a_image(i).S.card())
        throw ValidationError("ses: not exact at the middle");
    return ModuleSES{i, p};
}

ModuleSES ext1_to_ses(const Resolution& R, const ExtGroup& e1, const Elem& cls) {
    if (e1.n != 1) throw ValidationError("ext1_to_ses: degree must be 1");
    const AModule& N = e1.N;
    AHom phi = e1.rep_of(cls); // P_1 -> N
    SubModule Om = a_kernel(R.aug);
    AHom d1 = R.dmap(0);
    // factor phi through the corestriction of d1 to the syzygy
    ZmMat pb(N.pres.mod, N.rank(), Om.S.rank());
    for (size_t k = 0; k < Om.S.rank(); ++k) {
        Elem e = elem_zero(Om.S.pres);
        e[k] = 1;
        auto x = solve_in_presentation(d1.add(), Om.incl(e));
        if (!x) throw ComputeError("ext1_to_ses: syzygy escapes the image of d1");
        Elem v = phi(*x);
        for (size_t r = 0; r < pb.rows; ++r) pb.at(r, k) = v[r];
    }
    AHom phibar(Om.S, N, std::move(pb));
    Pushout po = a_pushout(phibar, Om.incl);
    AHom p = a_factor_joint(po.from_x, po.from_y, a_zero(N, R.M), R.aug);
    return make_module_ses(po.from_x, p);
}

Elem ses_to_ext1(const Resolution& R, const ExtGroup& e1, const ModuleSES& s) {
    if (e1.n != 1) throw ValidationError("ses_to_ext1: degree must be 1");
    if (!(s.p.dst == R.M) || !(s.i.src == e1.N))
        throw ValidationError("ses_to_ext1: sequence does not match the ext group");
    AHom lam = lift_through_epi(R.proj_term(0), R.aug, s.p);
    AHom psi = a_compose(lam, R.dmap(0)); // P_1 -> E, lands in i(N)
    ZmMat f(e1.N.pres.mod, e1.N.rank(), psi.src.rank());
    for (size_t k = 0; k < psi.src.rank(); ++k) {
        Elem e = elem_zero(psi.src.pres);
        e[k] = 1;
        auto w = solve_in_presentation(s.i.add(), psi(e));
        if (!w) throw ComputeError("ses_to_ext1: boundary escapes i(N)");
        for (size_t r = 0; r < f.rows; ++r) f.at(r, k) = (*w)[r];
    }
    return e1.class_of(AHom(psi.src, e1.N, std::move(f)));
}

ProjModule proj_module_sum(const ProjModule& a, const ProjModule& b) {
    ModDirectSum ds = mod_direct_sum({a.mod, b.mod});
    ProjModule out{ds.sum, a.idem, a.embed, a.offset, {}};
    for (size_t k = 0; k < b.idem.size(); ++k) {
        out.idem.push_back(b.idem[k]);
        out.embed.push_back(b.embed[k]);
        out.offset.push_back(b.offset[k] + a.mod.rank());
    }
    for (const Elem& g : a.gens) out.gens.push_back(ds.incl[0](g));
    for (const Elem& g : b.gens) out.gens.push_back(ds.incl[1](g));
    return out;
}

Horseshoe horseshoe(const ModuleSES& s, const Resolution& RN, const Resolution& RM) {
    if (!(RN.M == s.i.src) || !(RM.M == s.p.dst))
        throw ValidationError("horseshoe: resolutions do not match the sequence ends");
    size_t L = std::max(RN.length(), RM.length());
    if ((!RN.complete && RN.length() < L) || (!RM.complete && RM.length() < L))
        throw ValidationError("horseshoe: side resolution too shallow");
    const AModule& mid = s.i.dst;

    AHom lam = lift_through_epi(RM.proj_term(0), RM.aug, s.p);
    std::vector<AHom> h; // h[p]: PM_{p+1} -> PN_p, correction blocks
    for (size_t p = 0; p < L; ++p) {
        AHom g = (p == 0) ? a_compose(s.i, RN.aug) : RN.dmap(p - 1);
        AHom rhs = (p == 0) ? a_neg(a_compose(lam, RM.dmap(0)))
                            : a_neg(a_compose(h[p - 1], RM.dmap(p)));
        h.push_back(lift_through_epi(RM.proj_term(p + 1), rhs, g));
    }

    std::vector<ProjModule> EP;
    std::vector<AHom> incl, proj, incl_m, proj_n;
    for (size_t p = 0; p <= L; ++p) {
        ProjModule pn = RN.proj_term(p), pm = RM.proj_term(p);
        EP.push_back(proj_module_sum(pn, pm));
        ModDirectSum ds = mod_direct_sum({pn.mod, pm.mod});
        incl.push_back(ds.incl[0]);
        proj.push_back(ds.proj[1]);
        incl_m.push_back(ds.incl[1]);
        proj_n.push_back(ds.proj[0]);
    }
    AHom c1 = a_compose(s.i, RN.aug);
    AHom augE = a_block_map({mid}, {RN.proj_term(0).mod, RM.proj_term(0).mod}, {{&c1, &lam}});
    augE = AHom(EP[0].mod, mid, augE.a);
    std::vector<AHom> dE;
    for (size_t p = 0; p < L; ++p) {
        AHom dn = RN.dmap(p), dm = RM.dmap(p);
        AHom zb = a_zero(RN.term(p + 1), RM.term(p));
        dE.push_back(a_block_map({RN.proj_term(p).mod, RM.proj_term(p).mod},
                                 {RN.proj_term(p + 1).mod, RM.proj_term(p + 1).mod},
                                 {{&dn, &h[p]}, {&zb, &dm}}));
    }

    Resolution E{mid, std::move(EP), std::move(dE), augE, {}, false, false, std::nullopt};
    for (size_t p = 0; p < E.P.size(); ++p) {
        const AHom& below = (p == 0) ? E.aug : E.d[p - 1];
        SubModule K = a_kernel(below);
        if (p < E.d.size()) E.syzygy.push_back(K.S);
        else if (K.S.rank() == 0) E.complete = true;
        else E.syzygy.push_back(K.S);
    }
    E.minimal = resolution_is_minimal(E);
    return Horseshoe{std::move(E), std::move(incl), std::move(proj), std::move(incl_m),
                     std::move(proj_n)};
}

Shortened shorten_resolution(const Complex& K, int d) {
    if (d < 0) throw ValidationError("shorten: length bound must be >= 0");
    Complex Kt = K.trimmed();
    if (Kt.is_zero_complex()) return {Kt, chain_identity(Kt)};
    if (Kt.hi() > 0) throw ValidationError("shorten: complex must live in degrees <= 0");
    if (Kt.hi() < 0) {
        // cohomology vanishes everywhere it could sit; input must be acyclic
        if (!is_acyclic(Kt)) throw ValidationError("shorten: input not exact away from degree 0");
        Complex Z = Complex::zero(Kt.A);
        return {Z, chain_zero(Z, Kt)};
    }
    if (Kt.lo >= -d) return {Kt, chain_identity(Kt)};
    for (int i = -d; i <= -1; ++i) {
        if (cohomology_at(Kt, i).H.card() != 1)
            throw ValidationError("shorten: input not exact away from degree 0");
    }

    QuotModule H = a_cokernel(Kt.diff(-1));
    Resolution R = minimal_projective_resolution(H.Q, d + 1);

    // comparison lifts phi_i: P_i -> K^{-i} over the identity of H
    std::vector<AHom> phi;
    phi.push_back(lift_through_epi(R.proj_term(0), R.aug, H.proj));
    for (int i = 1; i <= d; ++i) {
        AHom rhs = a_compose(phi[(size_t)i - 1], R.dmap((size_t)i - 1));
        phi.push_back(lift_through_epi(R.proj_term((size_t)i), rhs, Kt.diff(-i)));
    }
    SubModule Z = a_image(Kt.diff(-d - 1)); // = ker d^{-d} by exactness
    AHom top = a_corestrict(a_compose(phi[(size_t)d], R.dmap((size_t)d)), Z); // phi_{d+1}

    // the class of the tail extension must vanish for a length-d replacement
    auto psi = a_solve_right_factor(R.dmap((size_t)d), Z.S, top);
    if (!psi) throw ClassNotTrivial("shorten: tail extension class is nonzero");

    Pushout po = a_pushout(top, R.dmap((size_t)d));
    AHom r = a_factor_joint(po.from_x, po.from_y, a_identity(Z.S), *psi); // retraction of from_x
    SubModule Qd = a_kernel(r);
    AHom ttop = a_factor_joint(po.from_x, po.from_y, Z.incl, phi[(size_t)d]); // Q~ -> K^{-d}

    std::vector<AModule> terms{Qd.S};
    std::vector<AHom> diffs;
    std::vector<AHom> comps{a_compose(ttop, Qd.incl)};
    if (d >= 1) {
        AHom bnd = a_factor_joint(po.from_x, po.from_y, a_zero(Z.S, R.term((size_t)d - 1)),
                                R.dmap((size_t)d - 1)); // Q~ -> P_{d-1}
        diffs.push_back(a_compose(bnd, Qd.incl));
        for (int i = d - 1; i >= 0; --i) {
            terms.push_back(R.term((size_t)i));
            comps.push_back(phi[(size_t)i]);
            if (i >= 1) diffs.push_back(R.dmap((size_t)i - 1));
        }
    }
    Complex Q(Kt.A, -d, std::move(terms), std::move(diffs));
    ChainMap q(Q, Kt, -d, std::move(comps));
    return {std::move(Q), std::move(q)};
}

namespace {

AHom level_incl(const Horseshoe& H, const Resolution& side, size_t p) {
    if (p < H.incl.size()) return H.incl[p];
    return a_zero(side.term(p), H.E.term(p));
}
AHom level_proj(const Horseshoe& H, const Resolution& side, size_t p) {
    if (p < H.proj.size()) return H.proj[p];
    return a_zero(H.E.term(p), side.term(p));
}
AHom level_incl_m(const Horseshoe& H, const Resolution& side, size_t p) {
    if (p < H.incl_m.size()) return H.incl_m[p];
    return a_zero(side.term(p), H.E.term(p));
}
AHom level_proj_n(const Horseshoe& H, const Resolution& side, size_t p) {
    if (p < H.proj_n.size()) return H.proj_n[p];
    return a_zero(H.E.term(p), side.term(p));
}

} // namespace

CEResolution ce_resolution(const Complex& K, int d, bool require_closed) {
    if (d < 0) throw ValidationError("ce: depth must be >= 0");
    Complex Kt = K.trimmed();
    AlgebraPtr A = Kt.A;
    if (Kt.is_zero_complex()) {
        AModule z = zero_module(A);
        Complex zc = Complex::zero(A);
        std::vector<Complex> rows((size_t)d + 1, zc);
        std::vector<Complex> hrows = rows;
        std::vector<std::vector<AHom>> vert((size_t)d, {a_zero(z, z)});
        std::vector<ChainMap> idm((size_t)d + 1, chain_identity(zc));
        ChainMap qz = chain_zero(zc, Kt);
        return CEResolution{Kt.lo, std::move(rows), std::move(vert), std::move(hrows),
                            idm,   idm,             zc,              std::move(qz),   true};
    }
    int lo = Kt.lo, hi = Kt.hi();
    size_t W = (size_t)(hi - lo + 1);

    // column data: boundaries, cycles, cohomology and the two linking sequences
    std::vector<SubModule> B, Z;
    for (size_t j = 0; j <= W; ++j) B.push_back(a_image(Kt.diff(lo + (int)j - 1)));
    for (size_t j = 0; j < W; ++j) Z.push_back(a_kernel(Kt.diff(lo + (int)j)));
    std::vector<ModuleSES> sb, sa;
    for (size_t j = 0; j < W; ++j) {
        AHom ib = a_corestrict(B[j].incl, Z[j]);
        QuotModule Hq = a_cokernel(ib);
        sb.push_back(make_module_ses(ib, Hq.proj));
        AHom pa = a_corestrict(Kt.diff(lo + (int)j), B[j + 1]);
        sa.push_back(make_module_ses(Z[j].incl, pa));
    }

    std::vector<Resolution> RB, RH;
    bool closed = true;
    for (size_t j = 0; j <= W; ++j) {
        RB.push_back(minimal_projective_resolution(B[j].S, d));
        closed = closed && RB.back().complete;
    }
    for (size_t j = 0; j < W; ++j) {
        RH.push_back(minimal_projective_resolution(sb[j].p.dst, d));
        closed = closed && RH.back().complete;
    }
    if (require_closed && !closed)
        throw DepthExceeded("ce: component resolutions do not close within the depth");

    std::vector<Horseshoe> hsb, hsa;
    for (size_t j = 0; j < W; ++j) hsb.push_back(horseshoe(sb[j], RB[j], RH[j]));
    for (size_t j = 0; j < W; ++j) hsa.push_back(horseshoe(sa[j], hsb[j].E, RB[j + 1]));

    auto dh = [&](size_t p, size_t j) { // X_j -> X_{j+1} at level p
        return a_compose(level_incl(hsa[j + 1], hsb[j + 1].E, p),
                         a_compose(level_incl(hsb[j + 1], RB[j + 1], p),
                                   level_proj(hsa[j], RB[j + 1], p)));
    };

    std::vector<Complex> rows;
    for (size_t p = 0; p <= (size_t)d; ++p) {
        std::vector<AModule> terms;
        std::vector<AHom> diffs;
        for (size_t j = 0; j < W; ++j) terms.push_back(hsa[j].E.term(p));
        for (size_t j = 0; j + 1 < W; ++j) diffs.push_back(dh(p, j));
        rows.emplace_back(A, lo, std::move(terms), std::move(diffs));
    }
    std::vector<std::vector<AHom>> vert;
    for (size_t p = 0; p + 1 <= (size_t)d; ++p) {
        std::vector<AHom> col;
        for (size_t j = 0; j < W; ++j) col.push_back(hsa[j].E.dmap(p));
        vert.push_back(std::move(col));
    }

    // each row splits as (cohomology-resolution terms, zero differential) ⊕ staircase
    std::vector<Complex> hrows;
    std::vector<ChainMap> to_h, from_h;
    for (size_t p = 0; p <= (size_t)d; ++p) {
        std::vector<AModule> hterms;
        std::vector<AHom> hdiffs;
        for (size_t j = 0; j < W; ++j) hterms.push_back(RH[j].term(p));
        for (size_t j = 0; j + 1 < W; ++j)
            hdiffs.push_back(a_zero(RH[j].term(p), RH[j + 1].term(p)));
        Complex HR(A, lo, std::move(hterms), std::move(hdiffs));
        std::vector<AHom> ucomps, vcomps;
        for (size_t j = 0; j < W; ++j) {
            ucomps.push_back(a_compose(level_proj(hsb[j], RH[j], p),
                                       level_proj_n(hsa[j], hsb[j].E, p)));
            vcomps.push_back(a_compose(level_incl(hsa[j], hsb[j].E, p),
                                       level_incl_m(hsb[j], RH[j], p)));
        }
        to_h.emplace_back(rows[p], HR, lo, std::move(ucomps));
        from_h.emplace_back(HR, rows[p], lo, std::move(vcomps));
        hrows.push_back(std::move(HR));
    }

    // total complex: part (p, j) sits in degree lo + j - p, ordered by ascending p
    int tlo = lo - d;
    auto prange = [&](int k) {
        int pmin = std::max(0, lo - k), pmax = std::min(d, hi - k);
        return std::pair<int, int>(pmin, pmax);
    };
    std::vector<AModule> tterms;
    std::vector<AHom> tdiffs;
    for (int k = tlo; k <= hi; ++k) {
        auto [pmin, pmax] = prange(k);
        std::vector<AModule> parts;
        for (int p = pmin; p <= pmax; ++p) parts.push_back(rows[(size_t)p].term(k + p));
        tterms.push_back(mod_direct_sum(parts).sum);
        if (k == hi) continue;
        auto [qmin, qmax] = prange(k + 1);
        std::vector<AModule> dparts;
        for (int p = qmin; p <= qmax; ++p) dparts.push_back(rows[(size_t)p].term(k + 1 + p));
        std::deque<AHom> hold;
        std::vector<std::vector<const AHom*>> grid((size_t)(qmax - qmin + 1),
                                                   std::vector<const AHom*>((size_t)(pmax - pmin + 1), nullptr));
        for (int p = pmin; p <= pmax; ++p) {
            int n = k + p;
            if (n + 1 <= hi) { // horizontal, stays at level p
                hold.push_back(rows[(size_t)p].diff(n));
                grid[(size_t)(p - qmin)][(size_t)(p - pmin)] = &hold.back();
            }
            if (p >= 1) { // vertical with column sign, drops to level p-1
                AHom v = vert[(size_t)p - 1][(size_t)(n - lo)];
                hold.push_back((n % 2 != 0) ? a_neg(v) : v);
                grid[(size_t)(p - 1 - qmin)][(size_t)(p - pmin)] = &hold.back();
            }
        }
        tdiffs.push_back(a_block_map(dparts, parts, grid));
    }
    Complex tot(A, tlo, std::move(tterms), std::move(tdiffs));

    std::vector<AHom> qcomps;
    for (int k = tlo; k <= hi; ++k) {
        if (k < lo) {
            qcomps.push_back(a_zero(tot.term(k), Kt.term(k)));
            continue;
        }
        auto [pmin, pmax] = prange(k);
        std::vector<AModule> parts;
        for (int p = pmin; p <= pmax; ++p) parts.push_back(rows[(size_t)p].term(k + p));
        AHom aug = hsa[(size_t)(k - lo)].E.aug;
        std::vector<std::vector<const AHom*>> grid(1, std::vector<const AHom*>(parts.size(), nullptr));
        grid[0][(size_t)(0 - pmin)] = &aug;
        AHom c = a_block_map({Kt.term(k)}, parts, grid);
        qcomps.push_back(AHom(tot.term(k), Kt.term(k), c.a));
    }
    ChainMap qi(tot, Kt, tlo, std::move(qcomps));
    return CEResolution{lo,
                        std::move(rows),
                        std::move(vert),
                        std::move(hrows),
                        std::move(to_h),
                        std::move(from_h),
                        std::move(tot),
                        std::move(qi),
                        closed};
}

GlDimResult gldim_bounded(const FinAlgebra& A, AlgebraPtr ptr, int depth) {
    std::vector<AModule> simples = simple_modules(A, ptr);
    std::vector<AModule> reps;
    for (const AModule& S : simples) {
        bool dup = false;
        for (const AModule& T : reps)
            if (is_isomorphic(S, T)) {
                dup = true;
                break;
            }
        if (!dup) reps.push_back(S);
    }
    GlDimResult out;
    int best = 0;
    bool all_complete = true;
    for (size_t i = 0; i < reps.size(); ++i) {
        Resolution R = minimal_projective_resolution(reps[i], depth);
        if (R.complete) {
            best = std::max(best, (int)R.length());
            continue;
        }
        all_complete = false;
        if (R.period) {
            out.kind = GlDimResult::kInfinite;
            out.simple_index = i;
            out.cert = R.period;
            return out;
        }
    }
    if (all_complete) {
        out.kind = GlDimResult::kFinite;
        out.value = best;
    }
    return out;
}

} // namespace dlab
