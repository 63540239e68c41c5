#include "derivedlab/hereditary.hpp"

#include <mutex>

namespace dlab {

namespace {

std::mutex her_mu;

Complex zd_complex(AlgebraPtr A, int lo, const std::vector<AModule>& terms) {
    if (terms.empty()) return Complex::zero(A);
    if (terms.size() == 1) return Complex::single(terms[0], lo);
    std::vector<AHom> maps;
    for (size_t i = 0; i + 1 < terms.size(); ++i)
        maps.push_back(a_zero(terms[i], terms[i + 1]));
    return Complex::from_maps(lo, maps);
}

std::shared_ptr<const Ext1At> ext1_cached(const AModule& S, const AModule& T) {
    static std::vector<std::tuple<AModule, AModule, std::shared_ptr<const Ext1At>>> cache;
    {
        std::lock_guard<std::mutex> lk(her_mu);
        for (const auto& [s, t, at] : cache)
            if (s == S && t == T) return at;
    }
    Resolution R = minimal_projective_resolution(S, 2);
    ExtGroup E = ext_group(R, T, 1);
    auto at = std::make_shared<const Ext1At>(Ext1At{std::move(R), std::move(E)});
    std::lock_guard<std::mutex> lk(her_mu);
    cache.emplace_back(S, T, at);
    return at;
}

uint64_t hom_card_cached(const AModule& M, const AModule& N) {
    static std::vector<std::tuple<AModule, AModule, uint64_t>> cache;
    {
        std::lock_guard<std::mutex> lk(her_mu);
        for (const auto& [m, n, c] : cache)
            if (m == M && n == N) return c;
    }
    uint64_t c = hom_space(M, N).card();
    std::lock_guard<std::mutex> lk(her_mu);
    cache.emplace_back(M, N, c);
    return c;
}

// classes Ext¹(S,N1) -> Ext¹(S,N2) induced by post-composition with w: N1 -> N2
AddMap ext_postcompose_classes(const ExtGroup& from, const ExtGroup& to, const AHom& w) {
    ZmMat a(to.grp.mod, to.grp.rank(), from.grp.rank());
    for (size_t j = 0; j < from.grp.rank(); ++j) {
        Elem c = elem_zero(from.grp);
        c[j] = 1;
        Elem im = to.class_of(a_compose(w, from.rep_of(c)));
        for (size_t i = 0; i < a.rows; ++i) a.at(i, j) = im[i];
    }
    return AddMap(from.grp, to.grp, std::move(a));
}

// u': E -> Z with u'∘j = ib∘d' and proj∘u' = q, solved as one linear system
AHom solve_mid_section(const ModuleSES& es, const CohomologyAt& h, const AHom& ib,
                       const AHom& dprime) {
    const AModule& E = es.i.dst;
    AHomSpace us = hom_space(E, h.cycles.S);
    AHomSpace c1 = hom_space(es.i.src, h.cycles.S);
    AHomSpace c2 = hom_space(E, h.H);
    AddMap m1 = hom_precompose(us, c1, es.i);
    AddMap m2 = hom_postcompose(us, c2, h.hq.proj);
    Elem y1 = c1.to_coords(a_compose(ib, dprime));
    Elem y2 = c2.to_coords(es.p);
    DirectSum ds = direct_sum({c1.coords, c2.coords});
    ZmMat st(us.coords.mod, ds.sum.rank(), us.coords.rank());
    for (size_t c = 0; c < st.cols; ++c) {
        for (size_t r = 0; r < c1.coords.rank(); ++r) st.at(r, c) = m1.a.at(r, c);
        for (size_t r = 0; r < c2.coords.rank(); ++r)
            st.at(c1.coords.rank() + r, c) = m2.a.at(r, c);
    }
    Elem y = elem_add(ds.sum, ds.incl[0](y1), ds.incl[1](y2));
    auto sol = solve_in_presentation(AddMap(us.coords, ds.sum, std::move(st)), y);
    if (!sol) throw ComputeError("hereditary decomposition: no section compatible with the lift");
    return us.from_coords(*sol);
}

} // namespace

bool is_hereditary(const FinAlgebra& A, AlgebraPtr ptr) {
    static std::vector<std::pair<FinAlgebra, bool>> cache;
    {
        std::lock_guard<std::mutex> lk(her_mu);
        for (const auto& [k, v] : cache)
            if (k == A) return v;
    }
    GlDimResult r = gldim_bounded(A, ptr, 2);
    bool h = r.kind == GlDimResult::kFinite && r.value <= 1;
    std::lock_guard<std::mutex> lk(her_mu);
    cache.emplace_back(A, h);
    return h;
}

ZeroDiffComplex zero_diff_from(const Complex& C) {
    if (!is_hereditary(*C.A, C.A))
        throw NotHereditary("zero-differential complex: algebra has global dimension > 1");
    Complex T = C.trimmed();
    for (int n = T.lo; n < T.hi(); ++n)
        if (!T.diff(n).is_zero())
            throw ValidationError("zero-differential complex: nonzero differential");
    return ZeroDiffComplex{std::move(T)};
}

ZeroDiffComplex zero_diff(AlgebraPtr A, int lo, const std::vector<AModule>& terms) {
    return zero_diff_from(zd_complex(A, lo, terms));
}

Ext1At ext1_between(const AModule& S, const AModule& T) { return *ext1_cached(S, T); }

HereditaryDecomp decompose_hereditary(const Complex& M) {
    if (!is_hereditary(*M.A, M.A))
        throw NotHereditary("decompose: algebra has global dimension > 1");
    Complex T = M.trimmed();
    if (T.is_zero_complex()) {
        Complex z = Complex::zero(M.A);
        return {ZeroDiffComplex{z}, z, chain_zero(z, z), chain_zero(z, T), {}, {}, {}};
    }
    int lo = T.lo, hi = T.hi();
    std::map<int, CohomologyAt> H;
    std::map<int, ModuleSES> ext;
    std::map<int, AHom> u;
    for (int n = lo; n <= hi + 1; ++n) {
        CohomologyAt h = cohomology_at(T, n);
        SubModule B = a_image(T.diff(n - 1));
        AHom ib = a_factor_left(h.cycles.incl, B.incl); // B^n -> Z^n
        AHom dprime = a_corestrict(T.diff(n - 1), B);   // M^{n-1} ->> B^n
        Resolution RH = minimal_projective_resolution(h.H, 2);
        ExtGroup EB = ext_group(RH, B.S, 1);
        ExtGroup EM = ext_group(RH, T.term(n - 1), 1);
        Elem cB = ses_to_ext1(RH, EB, make_module_ses(ib, h.hq.proj));
        auto lift = solve_in_presentation(ext_postcompose_classes(EM, EB, dprime), cB);
        if (!lift) throw ComputeError("hereditary decomposition: extension class did not lift");
        ModuleSES es = ext1_to_ses(RH, EM, *lift);
        AHom uprime = solve_mid_section(es, h, ib, dprime);
        u.emplace(n, a_compose(h.cycles.incl, uprime));
        ext.emplace(n, std::move(es));
        H.emplace(n, std::move(h));
    }
    // mid^n = E^n ⊕ M^n on [lo, hi+1], differential (ε, m) ↦ (j(m), 0)
    std::vector<AHom> mdiffs;
    for (int n = lo; n <= hi; ++n) {
        AModule En = ext.at(n).i.dst, En1 = ext.at(n + 1).i.dst;
        AHom jn1 = ext.at(n + 1).i;
        mdiffs.push_back(a_block_map({En1, T.term(n + 1)}, {En, T.term(n)},
                                     {{nullptr, &jn1}, {nullptr, nullptr}}));
    }
    Complex mid = Complex::from_maps(lo, mdiffs);
    std::vector<AModule> zterms;
    std::map<int, AHom> zc, mc;
    for (int n = lo; n <= hi + 1; ++n) {
        AModule En = ext.at(n).i.dst;
        AHom q = ext.at(n).p;
        AHom un = u.at(n);
        AHom idt = a_identity(T.term(n));
        zterms.push_back(H.at(n).H);
        zc.emplace(n, a_block_map({H.at(n).H}, {En, T.term(n)}, {{&q, nullptr}}));
        mc.emplace(n, a_block_map({T.term(n)}, {En, T.term(n)}, {{&un, &idt}}));
    }
    Complex Zc = zd_complex(M.A, lo, zterms).trimmed();
    ChainMap to_Z = chain_map_from(mid, Zc, zc);
    ChainMap to_M = chain_map_from(mid, T, mc);
    if (!is_quasi_iso(to_Z) || !is_quasi_iso(to_M))
        throw ComputeError("hereditary decomposition: a leg failed the quasi-isomorphism check");
    return {ZeroDiffComplex{std::move(Zc)}, std::move(mid), std::move(to_Z), std::move(to_M),
            std::move(ext),                 std::move(u),   std::move(H)};
}

HomFormulaData hom_formula_eval(const RoofMorphism& f, const ZeroDiffComplex& X,
                                const ZeroDiffComplex& Y) {
    if (!is_hereditary(*X.C.A, X.C.A))
        throw NotHereditary("hom formula: algebra has global dimension > 1");
    if (!(f.s.dst == X.C)) throw ValidationError("hom formula: backward leg does not land in X");
    if (!(f.f.dst == Y.C)) throw ValidationError("hom formula: forward leg does not land in Y");
    HereditaryDecomp W = decompose_hereditary(f.apex);
    int jlo = std::min(X.C.lo, Y.C.lo);
    int jhi = std::max(X.C.hi(), Y.C.hi() + 1);
    HomFormulaData out;
    for (int n = jlo; n <= jhi; ++n) {
        AModule Xn = X.C.term(n), Yn = Y.C.term(n), Yp = Y.C.term(n - 1);
        Ext1At at = ext1_between(Xn, Yp);
        if (!W.ext.count(n)) {
            if (Xn.rank() != 0)
                throw ValidationError("hom formula: backward leg misses cohomology of X");
            out.g.emplace(n, a_zero(Xn, Yn));
            out.e.emplace(n, elem_zero(at.E.grp));
            continue;
        }
        const ModuleSES& es = W.ext.at(n);
        AHom au = a_compose(f.s.comp(n), W.u.at(n)); // E^n -> X^n, kills j(apex^{n-1})
        AHom bu = a_compose(f.f.comp(n), W.u.at(n));
        auto abar = a_solve_right_factor(es.p, Xn, au);
        auto bbar = a_solve_right_factor(es.p, Yn, bu);
        if (!abar || !bbar)
            throw ComputeError("hom formula: a leg does not factor through the cohomology");
        out.g.emplace(n, a_compose(*bbar, a_inverse(*abar)));
        // pushout of the extension along the forward leg, then identify the
        // quotient with X^n
        Pushout po = a_pushout(es.i, f.f.comp(n - 1));
        AHom rprime = a_factor_joint(po.from_x, po.from_y, es.p, a_zero(Yp, es.p.dst));
        ModuleSES ses = make_module_ses(po.from_y, a_compose(*abar, rprime));
        out.e.emplace(n, ses_to_ext1(at.R, at.E, ses));
    }
    return out;
}

RoofMorphism hom_formula_build(const ZeroDiffComplex& X, const ZeroDiffComplex& Y,
                               const std::map<int, AHom>& g, const std::map<int, Elem>& e) {
    if (!is_hereditary(*X.C.A, X.C.A))
        throw NotHereditary("hom formula: algebra has global dimension > 1");
    int jlo = std::min(X.C.lo, Y.C.lo);
    int jhi = std::max(X.C.hi(), Y.C.hi() + 1);
    std::map<int, ModuleSES> F;
    std::map<int, AHom> gn;
    for (int n = jlo; n <= jhi; ++n) {
        AModule Xn = X.C.term(n), Yn = Y.C.term(n), Yp = Y.C.term(n - 1);
        Ext1At at = ext1_between(Xn, Yp);
        Elem cls = elem_zero(at.E.grp);
        if (auto it = e.find(n); it != e.end()) {
            if (it->second.size() != at.E.grp.rank())
                throw ValidationError("hom formula: extension class has wrong coordinate size");
            cls = elem_reduce(at.E.grp, it->second);
        }
        F.emplace(n, ext1_to_ses(at.R, at.E, cls)); // 0 -> Y^{n-1} -> F^n -> X^n -> 0
        AHom gmap = a_zero(Xn, Yn);
        if (auto it = g.find(n); it != g.end()) {
            if (!(it->second.src == Xn) || !(it->second.dst == Yn))
                throw ValidationError("hom formula: degreewise map endpoints mismatch");
            gmap = it->second;
        }
        gn.emplace(n, std::move(gmap));
    }
    std::vector<AHom> mdiffs;
    for (int n = jlo; n < jhi; ++n) {
        AModule Fn = F.at(n).i.dst, Fn1 = F.at(n + 1).i.dst;
        AHom kn1 = F.at(n + 1).i;
        mdiffs.push_back(a_block_map({Fn1, Y.C.term(n + 1)}, {Fn, Y.C.term(n)},
                                     {{nullptr, &kn1}, {nullptr, nullptr}}));
    }
    Complex mid = jlo == jhi
                      ? Complex::single(mod_direct_sum({F.at(jlo).i.dst, Y.C.term(jlo)}).sum, jlo)
                      : Complex::from_maps(jlo, mdiffs);
    std::map<int, AHom> ups, downs;
    for (int n = jlo; n <= jhi; ++n) {
        AModule Fn = F.at(n).i.dst;
        AHom r = F.at(n).p;
        AHom gr = a_compose(gn.at(n), r);
        AHom idy = a_identity(Y.C.term(n));
        ups.emplace(n, a_block_map({X.C.term(n)}, {Fn, Y.C.term(n)}, {{&r, nullptr}}));
        downs.emplace(n, a_block_map({Y.C.term(n)}, {Fn, Y.C.term(n)}, {{&gr, &idy}}));
    }
    return RoofMorphism(mid, chain_map_from(mid, X.C, ups), chain_map_from(mid, Y.C, downs));
}

uint64_t hom_formula_count(const ZeroDiffComplex& X, const ZeroDiffComplex& Y) {
    int jlo = std::min(X.C.lo, Y.C.lo);
    int jhi = std::max(X.C.hi(), Y.C.hi() + 1);
    uint64_t total = 1;
    for (int n = jlo; n <= jhi; ++n) {
        total *= hom_card_cached(X.C.term(n), Y.C.term(n));
        total *= ext1_cached(X.C.term(n), Y.C.term(n - 1))->E.card();
    }
    return total;
}

} // namespace dlab
