#include "derivedlab/derived.hpp"

#include <algorithm>
#include <map>

namespace dlab {

namespace {

ZmMat stack_rows(const ZmMat& a, const ZmMat& b) {
    if (a.rows == 0) return b;
    if (b.rows == 0) return a;
    ZmMat r(a.mod, a.rows + b.rows, a.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) r.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows; ++i)
        for (size_t j = 0; j < b.cols; ++j) r.at(a.rows + i, j) = b.at(i, j);
    return r;
}

} // namespace

ChainMap homotopy_boundary(const Homotopy& h) {
    const Complex& C = h.src;
    const Complex& D = h.dst;
    std::map<int, AHom> comps;
    int lo = std::min(C.lo, D.lo), hi = std::max(C.hi(), D.hi());
    for (int n = lo; n <= hi; ++n)
        comps.emplace(n, a_add(a_compose(D.diff(n - 1), h.comp(n)),
                               a_compose(h.comp(n + 1), C.diff(n))));
    return chain_map_from(C, D, comps);
}

bool is_quasi_iso_above(const ChainMap& f, int cut) {
    int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi(), f.dst.hi());
    for (int n = std::max(lo, cut + 1); n <= hi; ++n) {
        CohomologyAt hc = cohomology_at(f.src, n), hd = cohomology_at(f.dst, n);
        if (!is_isomorphism(induced_map(f, hc, hd).add())) return false;
    }
    return true;
}

RoofMorphism::RoofMorphism(Complex apex_, ChainMap s_, ChainMap f_, int valid_above_)
    : apex(std::move(apex_)), s(std::move(s_)), f(std::move(f_)), valid_above(valid_above_) {
    if (!(s.src == apex) || !(f.src == apex))
        throw ValidationError("roof: both legs must start at the apex");
    if (!is_quasi_iso_above(s, valid_above))
        throw ValidationError("roof: backward leg is not a quasi-isomorphism on its window");
}

HProj hproj_replace(const Complex& C, HProjKind kind, int depth) {
    Complex T = C.trimmed();
    bool all_proj = true;
    for (int n = T.lo; n <= T.hi() && all_proj; ++n)
        if (!is_projective_module(T.term(n))) all_proj = false;
    if (all_proj) return {T, chain_identity(T), true, INT_MIN};
    if (depth < 1) throw ValidationError("projective replacement: depth must be positive");
    CEResolution ce = ce_resolution(T, depth, kind == HProjKind::FiniteGldim);
    int cut = ce.closed ? INT_MIN : T.lo - depth;
    if (ce.closed ? !is_quasi_iso(ce.qi) : !is_quasi_iso_above(ce.qi, cut))
        throw ComputeError("projective replacement failed verification");
    return {ce.tot, ce.qi, ce.closed, cut};
}

HomotopyClasses hom_K(const Complex& C, const Complex& D) {
    ChainMapSpace cms = chain_map_space(C, D);
    std::vector<Elem> img;
    int klo = std::max(C.lo, D.lo + 1), khi = std::min(C.hi(), D.hi() + 1);
    for (int k = klo; k <= khi; ++k) {
        if (C.term(k).pres.rank() == 0 || D.term(k - 1).pres.rank() == 0) continue;
        AHomSpace hs = hom_space(C.term(k), D.term(k - 1));
        for (size_t t = 0; t < hs.coords.rank(); ++t) {
            Elem e = elem_zero(hs.coords);
            e[t] = 1;
            std::vector<AHom> hc;
            for (int n = C.lo; n <= C.hi(); ++n)
                hc.push_back(n == k ? hs.from_coords(e)
                                    : a_zero(C.term(n), D.term(n - 1)));
            ChainMap bd = homotopy_boundary(Homotopy{C, D, C.lo, std::move(hc)});
            img.push_back(cms.to_coords(bd));
        }
    }
    ZmMat G(cms.coords.mod, img.size(), cms.coords.rank());
    for (size_t i = 0; i < img.size(); ++i)
        for (size_t j = 0; j < G.cols; ++j) G.at(i, j) = img[i][j];
    QuotPres q = quotient_by_submodule(cms.coords, G);
    return {std::move(cms), std::move(q)};
}

Elem HomotopyClasses::class_of(const ChainMap& f) const { return cls.proj(cms.to_coords(f)); }

ChainMap HomotopyClasses::rep_of(const Elem& c) const {
    return cms.from_coords(section_apply(cls, cms.coords, c));
}

HomD hom_D(const Complex& X, const Complex& Y, int depth) {
    HProj hp = hproj_replace(X, HProjKind::BoundedAbove, depth);
    HomotopyClasses hk = hom_K(hp.P, Y);
    bool stable = hp.global;
    if (!stable) {
        HProj deeper = hproj_replace(X, HProjKind::BoundedAbove, depth + 1);
        stable = hom_K(deeper.P, Y).card() == hk.card();
    }
    return {X.trimmed(), Y.trimmed(), std::move(hp), std::move(hk), stable};
}

RoofMorphism HomD::roof_of(const Elem& c) const {
    return RoofMorphism(hp.P, hp.qi, hk.rep_of(c), hp.valid_above);
}

ChainMap lift_through_quasi_iso(const Complex& P, const ChainMap& s, const ChainMap& f) {
    if (!(f.src == P)) throw ValidationError("homotopy lift: map does not start at the lifting complex");
    if (!(f.dst == s.dst)) throw ValidationError("homotopy lift: map and quasi-iso have different targets");
    HomotopyClasses hw = hom_K(P, s.src);
    HomotopyClasses hx = hom_K(P, s.dst);
    ZmMat a(hx.cls.Q.mod, hx.cls.Q.rank(), hw.cls.Q.rank());
    for (size_t j = 0; j < hw.cls.Q.rank(); ++j) {
        Elem c = elem_zero(hw.cls.Q);
        c[j] = 1;
        Elem im = hx.class_of(chain_compose(s, hw.rep_of(c)));
        for (size_t i = 0; i < a.rows; ++i) a.at(i, j) = im[i];
    }
    auto t = solve_in_presentation(AddMap{hw.cls.Q, hx.cls.Q, std::move(a)}, hx.class_of(f));
    if (!t) throw ComputeError("homotopy lift: no lift through the quasi-isomorphism");
    return hw.rep_of(*t);
}

Elem HomD::class_of_roof(const RoofMorphism& r) const {
    if (!(r.s.dst == X)) throw ValidationError("roof class: backward leg does not land in X");
    if (!(r.f.dst == Y)) throw ValidationError("roof class: forward leg does not land in Y");
    ChainMap t = lift_through_quasi_iso(hp.P, r.s, hp.qi);
    return hk.class_of(chain_compose(r.f, t));
}

namespace {

// subcomplex-mode replacement: carve a quasi-isomorphic subcomplex with member
// terms out of C itself, descending from `start`
Replaced replace_subcomplex(const Complex& C, const SubcategorySpec& U, int start) {
    std::map<int, ZmMat> gens;
    for (int k = start + 1; k <= C.hi(); ++k)
        gens.emplace(k, ZmMat::identity(C.A->mod, C.term(k).pres.rank()));
    ZmMat frontier = ZmMat::identity(C.A->mod, C.term(start).pres.rank());
    for (int n = start; n >= C.lo; --n) {
        SubModule An = a_submodule(C.term(n), frontier);
        AHom dA = a_compose(C.diff(n), An.incl);
        SubModule B = a_image(dA);
        if (!U.member(B.S)) throw CoverFailure("replacement: boundary object left the subcategory");
        AHom u = U.cover(a_corestrict(dA, B));
        if (!U.member(u.src)) throw CoverFailure("replacement: cover source is not a member");
        if (!is_injective(u.add())) throw CoverFailure("replacement: cover is not injective");
        if (!is_surjective(a_compose(a_corestrict(dA, B), u).add()))
            throw CoverFailure("replacement: cover does not reach the boundary object");
        SubModule Z = a_kernel(dA);
        AHom cz = a_corestrict(a_corestrict(C.diff(n - 1), An), Z);
        QuotModule H = a_cokernel(cz);
        if (!U.member(H.Q)) throw CoverFailure("replacement: cohomology left the subcategory");
        AHom w = U.cover(H.proj);
        if (!U.member(w.src)) throw CoverFailure("replacement: cover source is not a member");
        if (!is_injective(w.add())) throw CoverFailure("replacement: cover is not injective");
        if (!is_surjective(a_compose(H.proj, w).add()))
            throw CoverFailure("replacement: cover does not reach the cohomology object");
        AHom iu = a_compose(An.incl, u);
        AHom iz = a_compose(An.incl, a_compose(Z.incl, w));
        ZmMat g = canonical_submodule(
            C.term(n).pres, stack_rows(image_generators(iu.add()), image_generators(iz.add())));
        gens.emplace(n, g);
        if (n > C.lo)
            frontier = canonical_submodule(C.term(n - 1).pres,
                                           preimage_generators(C.diff(n - 1).add(), g));
    }
    SubComplexData sc = subcomplex_from(C, gens);
    for (int k = sc.S.lo; k <= sc.S.hi(); ++k)
        if (!U.member(sc.S.term(k)))
            throw CoverFailure("replacement: output term left the subcategory");
    if (!is_quasi_iso(sc.incl)) throw ComputeError("replacement failed verification");
    return {sc.S, sc.incl};
}

} // namespace

Replaced replace_in_subcategory(const Complex& C, const SubcategorySpec& U, int N,
                                bool subcomplex_mode) {
    if (!(*C.A == *U.A)) throw ValidationError("replacement: algebra mismatch");
    Complex W = C.trimmed();
    if (W.terms.empty()) return {W, chain_identity(W)};
    for (int n = W.lo; n <= W.hi(); ++n)
        if (!U.member(cohomology_at(W, n).H))
            throw ValidationError("replacement: cohomology leaves the subcategory");
    int start = std::min(N, W.hi());
    for (int n = start + 1; n <= W.hi(); ++n)
        if (!U.member(W.term(n)))
            throw ValidationError("replacement: terms above the start degree must be members");
    if (subcomplex_mode) {
        if (!U.mono_covers)
            throw ValidationError("replacement: subcomplex mode needs injective covers");
        return replace_subcomplex(W, U, start);
    }

    int lo_orig = W.lo;
    ChainMap total = chain_identity(W);
    for (int n = start; n >= lo_orig; --n) {
        AHom d = W.diff(n);
        AHom dprev = W.diff(n - 1);
        SubModule B = a_image(d);
        if (!U.member(B.S)) throw CoverFailure("replacement: boundary object left the subcategory");
        AHom epiB = a_corestrict(d, B);
        AHom u = U.cover(epiB);
        if (!U.member(u.src)) throw CoverFailure("replacement: cover source is not a member");
        if (!is_surjective(a_compose(epiB, u).add()))
            throw CoverFailure("replacement: cover does not reach the boundary object");
        SubModule Z = a_kernel(d);
        AHom cz = a_corestrict(dprev, Z);
        QuotModule H = a_cokernel(cz);
        if (!U.member(H.Q)) throw CoverFailure("replacement: cohomology left the subcategory");
        AHom w = U.cover(H.proj);
        if (!U.member(w.src)) throw CoverFailure("replacement: cover source is not a member");
        if (!is_surjective(a_compose(H.proj, w).add()))
            throw CoverFailure("replacement: cover does not reach the cohomology object");
        AHom vz = a_compose(Z.incl, w);
        ModDirectSum Y = mod_direct_sum({w.src, u.src});
        AHom ymap = a_block_map({W.term(n)}, {w.src, u.src}, {{&vz, &u}});
        AHom du = a_compose(d, u);
        AHom dn = a_block_map({W.term(n + 1)}, {w.src, u.src}, {{nullptr, &du}});
        Pullback PB = a_pullback(dprev, ymap);

        int nlo = std::min(W.lo, n - 1);
        std::vector<AModule> terms;
        std::vector<AHom> diffs;
        for (int k = nlo; k <= W.hi(); ++k) {
            if (k == n) terms.push_back(Y.sum);
            else if (k == n - 1) terms.push_back(PB.P);
            else terms.push_back(W.term(k));
        }
        for (int k = nlo; k < W.hi(); ++k) {
            if (k == n) diffs.push_back(dn);
            else if (k == n - 1) diffs.push_back(PB.to_y);
            else if (k == n - 2) {
                AHom jP = a_block_map({W.term(n - 1), Y.sum}, {PB.P}, {{&PB.to_x}, {&PB.to_y}});
                AHom dpp = W.diff(n - 2);
                AHom tofac =
                    a_block_map({W.term(n - 1), Y.sum}, {W.term(n - 2)}, {{&dpp}, {nullptr}});
                diffs.push_back(a_factor_left(jP, tofac));
            } else diffs.push_back(W.diff(k));
        }
        Complex W2(C.A, nlo, std::move(terms), std::move(diffs));
        std::map<int, AHom> vc;
        for (int k = nlo; k <= W.hi(); ++k) {
            if (k == n) vc.emplace(k, ymap);
            else if (k == n - 1) vc.emplace(k, PB.to_x);
            else vc.emplace(k, a_identity(W.term(k)));
        }
        total = chain_compose(total, chain_map_from(W2, W, vc));
        W = std::move(W2);
    }
    for (int k = W.lo; k <= W.hi(); ++k)
        if (!U.member(W.term(k))) throw CoverFailure("replacement: output term left the subcategory");
    if (!is_quasi_iso(total)) throw ComputeError("replacement failed verification");
    return {std::move(W), std::move(total)};
}

CoReplaced coreplace_in_subcategory(const Complex& C, const SubcategorySpec& U, int N) {
    QfReport qf = quasi_frobenius_check(*C.A);
    if (!qf.qf) throw NotQuasiFrobenius("coreplacement needs a quasi-Frobenius algebra");
    if (!U.cocover) throw ValidationError("coreplacement needs a cocover provider");
    Complex T = C.trimmed();
    if (T.terms.empty()) return {T, chain_identity(T)};

    std::vector<AModule> dterms;
    std::vector<AHom> ddiffs;
    int dlo = -T.hi();
    for (int i = dlo; i <= -T.lo; ++i) dterms.push_back(dual_module(T.term(-i)));
    for (int i = dlo; i < -T.lo; ++i) ddiffs.push_back(dual_hom(T.diff(-i - 1)));
    AlgebraPtr Aop = dterms.front().A;
    Complex DC(Aop, dlo, std::move(dterms), std::move(ddiffs));

    SubcategorySpec Uop;
    Uop.A = DC.A;
    Uop.name = U.name.empty() ? "op" : U.name + "^op";
    Uop.member = [mem = U.member](const AModule& M) { return mem(dual_module(M)); };
    Uop.cover = [cc = U.cocover](const AHom& a) { return dual_hom(cc(dual_hom(a))); };

    Replaced r = replace_in_subcategory(DC, Uop, -N);

    std::vector<AModule> lterms;
    std::vector<AHom> ldiffs;
    int llo = -r.L.hi();
    for (int k = llo; k <= -r.L.lo; ++k) lterms.push_back(dual_module(r.L.term(-k)));
    for (int k = llo; k < -r.L.lo; ++k) ldiffs.push_back(dual_hom(r.L.diff(-k - 1)));
    Complex L(C.A, llo, std::move(lterms), std::move(ldiffs));

    std::map<int, AHom> comps;
    for (int k = T.lo; k <= T.hi(); ++k) comps.emplace(k, dual_hom(r.qi.comp(-k)));
    ChainMap qi = chain_map_from(T, L, comps);
    for (int k = L.lo; k <= L.hi(); ++k)
        if (!U.member(L.term(k))) throw CoverFailure("coreplacement: output term left the subcategory");
    if (!is_quasi_iso(qi)) throw ComputeError("coreplacement failed verification");
    return {std::move(L), std::move(qi)};
}

Realized realize_from_truncations(const Complex& M, const SubcategorySpec& U, int d) {
    if (!U.model) throw ValidationError("realization needs an inner model of the subcategory");
    const UModel& md = *U.model;
    Complex Mt = M.trimmed();
    if (Mt.terms.empty()) {
        Complex z = Complex::zero(M.A);
        return {z, RoofMorphism(z, chain_identity(z), chain_identity(z))};
    }
    int n_max = 0;
    for (int i = Mt.lo; i <= Mt.hi(); ++i) {
        CohomologyAt h = cohomology_at(Mt, i);
        if (!U.member(h.H)) throw ValidationError("realization: cohomology leaves the subcategory");
        if (h.H.pres.card() > 1) {
            if (i < 0) throw ValidationError("realization: cohomology below degree zero");
            n_max = std::max(n_max, i);
        }
    }

    auto to_inner_complex = [&md](const Complex& C) {
        std::vector<AModule> terms;
        std::vector<AHom> diffs;
        for (int k = C.lo; k <= C.hi(); ++k) terms.push_back(md.to_inner(C.term(k)));
        for (int k = C.lo; k < C.hi(); ++k)
            diffs.push_back(AHom(md.to_inner(C.term(k)), md.to_inner(C.term(k + 1)), C.diff(k).a));
        return Complex(md.B, C.lo, std::move(terms), std::move(diffs));
    };
    auto from_inner_complex = [&md](const Complex& C) {
        std::vector<AModule> terms;
        std::vector<AHom> diffs;
        for (int k = C.lo; k <= C.hi(); ++k) terms.push_back(md.from_inner(C.term(k)));
        for (int k = C.lo; k < C.hi(); ++k)
            diffs.push_back(AHom(md.from_inner(C.term(k)), md.from_inner(C.term(k + 1)), C.diff(k).a));
        return Complex(md.A, C.lo, std::move(terms), std::move(diffs));
    };

    TruncAbove t0 = truncate_above(Mt, 0);
    Replaced r0 = replace_in_subcategory(t0.C, U, t0.C.hi());
    Complex L = r0.L;
    Complex T = r0.L;
    ChainMap s = chain_identity(T);
    ChainMap t = r0.qi;

    for (int n = 0; n < n_max; ++n) {
        TruncAbove ta = truncate_above(Mt, n);
        TruncAbove tb = truncate_above(Mt, n + 1);
        std::map<int, AHom> ic;
        for (int k = ta.C.lo; k <= ta.C.hi(); ++k)
            ic.emplace(k, a_factor_left(tb.incl.comp(k), ta.incl.comp(k)));
        ChainMap iota = chain_map_from(ta.C, tb.C, ic);

        ConeData ci = cone(iota);
        Complex C1 = shift_complex(ci.cone, -1);
        ChainMap delta = shift_chain_map(ci.proj_shift, -1); // C1 -> ta.C

        ComplexSum sum = complex_direct_sum({T, C1});
        ChainMap uu = chain_sub(chain_compose(t, sum.proj[0]), chain_compose(delta, sum.proj[1]));
        ConeData cu = cone(uu);
        Complex W = shift_complex(cu.cone, -1);
        ChainMap pi = shift_chain_map(cu.proj_shift, -1); // W -> T ⊕ C1
        ChainMap pi1 = chain_compose(sum.proj[0], pi);
        ChainMap pi2 = chain_compose(sum.proj[1], pi);
        if (!is_quasi_iso(pi2)) throw ComputeError("realization: homotopy pullback failed");

        Replaced rw = replace_in_subcategory(W, U, W.hi());
        Complex K0 = shift_complex(to_inner_complex(rw.L), n + 2);
        Shortened sh = shorten_resolution(K0, d);
        Complex QA = from_inner_complex(sh.Q);
        Complex K0A = from_inner_complex(K0);
        std::vector<AHom> qc;
        for (size_t i = 0; i < sh.q.comps.size(); ++i) {
            int k = sh.q.lo + (int)i;
            qc.push_back(AHom(QA.term(k), K0A.term(k), sh.q.comps[i].a));
        }
        ChainMap qpos = shift_chain_map(ChainMap(QA, K0A, sh.q.lo, std::move(qc)), -(n + 2));
        Complex Qp = qpos.src;

        ChainMap wmap = chain_compose(rw.qi, qpos); // Qp -> W
        ChainMap ghat = chain_compose(pi1, wmap);   // Qp -> T
        ChainMap g = chain_compose(s, ghat);        // Qp -> L
        ConeData cT = cone(ghat);
        ConeData cL = cone(g);

        // s_{n+1}: (x, y) -> (x, s y)
        std::map<int, AHom> sc;
        for (int k = cT.cone.lo; k <= cT.cone.hi(); ++k) {
            AHom idq = a_identity(Qp.term(k + 1));
            AHom sk = s.comp(k);
            sc.emplace(k, a_block_map({Qp.term(k + 1), L.term(k)}, {Qp.term(k + 1), T.term(k)},
                                      {{&idq, nullptr}, {nullptr, &sk}}));
        }
        ChainMap snew = chain_map_from(cT.cone, cL.cone, sc);

        // m: Qp -> tb.C with dm + md = iota ∘ t ∘ ghat, built from the two
        // projection homotopies of the shifted cones
        std::map<int, AHom> mc;
        for (int k = Qp.lo; k <= Qp.hi(); ++k) {
            ModDirectSum wk = mod_direct_sum({sum.sum.term(k), ta.C.term(k - 1)});
            AHom h0k(W.term(k), ta.C.term(k - 1), a_neg(wk.proj[1]).a);
            ModDirectSum ck = mod_direct_sum({ta.C.term(k), tb.C.term(k - 1)});
            AHom Nk(C1.term(k), tb.C.term(k - 1), a_neg(ck.proj[1]).a);
            AHom first = a_compose(Nk, a_compose(pi2.comp(k), wmap.comp(k)));
            AHom second = a_compose(iota.comp(k - 1), a_compose(h0k, wmap.comp(k)));
            mc.emplace(k, a_add(first, second));
        }

        // t_{n+1}: (x, y) -> m(x) + iota(t(y))
        std::map<int, AHom> tc;
        for (int k = cT.cone.lo; k <= cT.cone.hi(); ++k) {
            auto it = mc.find(k + 1);
            AHom mk = it != mc.end() ? it->second : a_zero(Qp.term(k + 1), tb.C.term(k));
            AHom ity = a_compose(iota.comp(k), t.comp(k));
            tc.emplace(k, a_block_map({tb.C.term(k)}, {Qp.term(k + 1), T.term(k)}, {{&mk, &ity}}));
        }
        ChainMap tnew = chain_map_from(cT.cone, tb.C, tc);

        T = cT.cone;
        L = cL.cone;
        s = std::move(snew);
        t = std::move(tnew);
        if (!is_quasi_iso(s) || !is_quasi_iso(t))
            throw ComputeError("realization: step verification failed");
    }

    for (int k = L.lo; k <= L.hi(); ++k)
        if (!U.member(L.term(k))) throw ComputeError("realization: output term left the subcategory");
    TruncAbove tf = truncate_above(Mt, n_max);
    ChainMap f = chain_compose(tf.incl, t);
    if (!is_quasi_iso(f)) throw ComputeError("realization: roof verification failed");
    return {std::move(L), RoofMorphism(std::move(T), std::move(s), std::move(f))};
}

} // namespace dlab
