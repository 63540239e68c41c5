#include "derivedlab/certificate.hpp"

#include <algorithm>

namespace dlab {

namespace {

Homotopy zero_homotopy(const Complex& C) {
    std::vector<AHom> comps;
    for (int n = C.lo; n <= C.hi(); ++n) comps.push_back(a_zero(C.term(n), C.term(n - 1)));
    return Homotopy{C, C, C.lo, std::move(comps)};
}

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

ZmMat rows_of(const std::vector<Elem>& v, uint64_t mod, size_t cols) {
    ZmMat r(mod, v.size(), cols);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < cols; ++j) r.at(i, j) = v[i][j];
    return r;
}

} // namespace

Complex AbsAcyclicCert::subject() const {
    switch (node) {
    case Node::Tot:
        return tot_ses(*ses);
    case Node::Cone:
        return cone(*t).cone;
    case Node::HtpyEquiv:
        return f->dst;
    case Node::Summand:
        return f->src;
    case Node::Shift:
        return shift_complex(children.at(0).subject(), k);
    }
    throw ValidationError("certificate: unknown node");
}

namespace {

CertCheck fail(std::string path, std::string reason) { return {false, std::move(path), std::move(reason)}; }

CertCheck verify_node(const AbsAcyclicCert& c, const std::string& path) {
    switch (c.node) {
    case AbsAcyclicCert::Node::Tot: {
        if (!c.ses || !c.children.empty()) return fail(path + "/tot", "malformed node");
        try {
            make_ses(c.ses->i, c.ses->p);
        } catch (const std::exception& e) {
            return fail(path + "/tot", e.what());
        }
        return {};
    }
    case AbsAcyclicCert::Node::Cone: {
        if (!c.t || c.children.size() != 2) return fail(path + "/cone", "malformed node");
        if (!(c.children[0].subject() == c.t->src))
            return fail(path + "/cone", "first child does not certify the source");
        if (!(c.children[1].subject() == c.t->dst))
            return fail(path + "/cone", "second child does not certify the target");
        CertCheck a = verify_node(c.children[0], path + "/cone[0]");
        if (!a.ok) return a;
        return verify_node(c.children[1], path + "/cone[1]");
    }
    case AbsAcyclicCert::Node::HtpyEquiv: {
        if (!c.f || !c.g || !c.ha || !c.hb || c.children.size() != 1)
            return fail(path + "/equiv", "malformed node");
        Complex A = c.children[0].subject();
        if (!(c.f->src == A) || !(c.g->dst == A))
            return fail(path + "/equiv", "child does not certify the equivalent complex");
        if (!(c.g->src == c.f->dst)) return fail(path + "/equiv", "legs do not match");
        ChainMap da = homotopy_boundary(*c.ha);
        if (!(da == chain_sub(chain_identity(A), chain_compose(*c.g, *c.f))))
            return fail(path + "/equiv", "first homotopy misses id - g∘f");
        ChainMap db = homotopy_boundary(*c.hb);
        if (!(db == chain_sub(chain_identity(c.f->dst), chain_compose(*c.f, *c.g))))
            return fail(path + "/equiv", "second homotopy misses id - f∘g");
        return verify_node(c.children[0], path + "/equiv");
    }
    case AbsAcyclicCert::Node::Summand: {
        if (!c.f || !c.g || c.children.size() != 1) return fail(path + "/summand", "malformed node");
        if (!(c.children[0].subject() == c.f->dst))
            return fail(path + "/summand", "child does not certify the ambient complex");
        if (!(chain_compose(*c.g, *c.f) == chain_identity(c.f->src)))
            return fail(path + "/summand", "retraction does not split the inclusion");
        return verify_node(c.children[0], path + "/summand");
    }
    case AbsAcyclicCert::Node::Shift: {
        if (c.children.size() != 1) return fail(path + "/shift", "malformed node");
        return verify_node(c.children[0], path + "/shift");
    }
    }
    return fail(path, "unknown node");
}

} // namespace

CertCheck verify_certificate(const AbsAcyclicCert& c) {
    try {
        return verify_node(c, "");
    } catch (const std::exception& e) {
        return fail("", e.what());
    }
}

namespace {

AbsAcyclicCert zero_tot_leaf(AlgebraPtr A) {
    Complex z = Complex::zero(A);
    ChainMap zz = chain_zero(z, z);
    AbsAcyclicCert leaf;
    leaf.node = AbsAcyclicCert::Node::Tot;
    leaf.ses = make_ses(zz, zz);
    return leaf;
}

} // namespace

AbsAcyclicCert certify_bounded_acyclic(const Complex& C) {
    Complex T = C.trimmed();
    if (!is_acyclic(T)) throw NotAcyclic("complex has cohomology");
    if (T.terms.empty()) return zero_tot_leaf(C.A);

    // contractible: exhibit the zero complex as a homotopy-equivalent partner
    if (auto s = homotopy_solve(chain_identity(T), chain_zero(T, T))) {
        Complex z = Complex::zero(C.A);
        AbsAcyclicCert eq;
        eq.node = AbsAcyclicCert::Node::HtpyEquiv;
        eq.f = chain_zero(z, T);
        eq.g = chain_zero(T, z);
        eq.ha = zero_homotopy(z);
        eq.hb = *s;
        eq.children.push_back(zero_tot_leaf(C.A));
        return eq;
    }

    // split off the exact two-term subcomplex C^lo ≅ d(C^lo) and recurse on
    // the quotient; the rotation below re-assembles a witness for C itself
    int lo = T.lo;
    AHom dlow = T.diff(lo);
    std::map<int, ZmMat> kg;
    kg.emplace(lo, ZmMat::identity(T.A->mod, T.term(lo).pres.rank()));
    kg.emplace(lo + 1, image_generators(dlow.add()));
    SubComplexData K = subcomplex_from(T, kg);
    AHom sK = a_inverse(K.S.diff(lo)); // H^lo = 0 makes d^lo an iso onto its image
    QuotComplexData Mq = quotient_complex(T, kg);
    Complex M = Mq.Q.trimmed();
    ChainMap i = K.incl;
    ChainMap p = Mq.proj;

    AbsAcyclicCert certM = certify_bounded_acyclic(M);
    AbsAcyclicCert leafT;
    leafT.node = AbsAcyclicCert::Node::Tot;
    leafT.ses = make_ses(i, p);
    Complex tot = tot_ses(*leafT.ses);

    ConeData ci = cone(i);
    std::map<int, AHom> psic;
    for (int n = ci.cone.lo; n <= ci.cone.hi(); ++n) {
        ModDirectSum ds = mod_direct_sum({K.S.term(n + 1), T.term(n)});
        psic.emplace(n, a_compose(p.comp(n), AHom(ci.cone.term(n), T.term(n), ds.proj[1].a)));
    }
    ChainMap psi_t = chain_map_from(ci.cone, M, psic);
    ConeData cpsi = cone(psi_t);

    // Cone(ψ) and Σtot agree up to the sign of the quotient block
    Complex stot = shift_complex(tot, 1);
    std::map<int, AHom> thc, thinvc;
    for (int n = cpsi.cone.lo; n <= cpsi.cone.hi(); ++n) {
        AHom id1 = a_identity(ci.cone.term(n + 1));
        AHom negm = a_neg(a_identity(M.term(n)));
        ZmMat blk =
            a_block_map({ci.cone.term(n + 1), M.term(n)}, {ci.cone.term(n + 1), M.term(n)},
                        {{&id1, nullptr}, {nullptr, &negm}})
                .a;
        thc.emplace(n, AHom(cpsi.cone.term(n), stot.term(n), blk));
        thinvc.emplace(n, AHom(stot.term(n), cpsi.cone.term(n), blk));
    }
    AbsAcyclicCert shT;
    shT.node = AbsAcyclicCert::Node::Shift;
    shT.k = 1;
    shT.children.push_back(std::move(leafT));
    AbsAcyclicCert eqCone;
    eqCone.node = AbsAcyclicCert::Node::HtpyEquiv;
    eqCone.f = chain_map_from(stot, cpsi.cone, thinvc);
    eqCone.g = chain_map_from(cpsi.cone, stot, thc);
    eqCone.ha = zero_homotopy(stot);
    eqCone.hb = zero_homotopy(cpsi.cone);
    eqCone.children.push_back(std::move(shT));

    // rotation: Cone(M -> Cone(ψ)) retracts onto ΣCone(i)
    ConeData crot = cone(cpsi.incl_dst);
    Complex sci = shift_complex(ci.cone, 1);
    std::map<int, AHom> phic, psiXc, Hc;
    for (int n = crot.cone.lo; n <= crot.cone.hi(); ++n) {
        ModDirectSum outer = mod_direct_sum({M.term(n + 1), cpsi.cone.term(n)});
        ModDirectSum inner = mod_direct_sum({ci.cone.term(n + 1), M.term(n)});
        AHom projx = AHom(cpsi.cone.term(n), ci.cone.term(n + 1), inner.proj[0].a);
        phic.emplace(n, a_block_map({ci.cone.term(n + 1)}, {M.term(n + 1), cpsi.cone.term(n)},
                                    {{nullptr, &projx}}));
        AHom negpsi = a_neg(psi_t.comp(n + 1));
        AHom inclx = AHom(ci.cone.term(n + 1), cpsi.cone.term(n), inner.incl[0].a);
        psiXc.emplace(n, a_block_map({M.term(n + 1), cpsi.cone.term(n)}, {ci.cone.term(n + 1)},
                                     {{&negpsi}, {&inclx}}));
        if (n > crot.cone.lo) {
            AHom projm = AHom(cpsi.cone.term(n), M.term(n), inner.proj[1].a);
            Hc.emplace(n, a_block_map({M.term(n), cpsi.cone.term(n - 1)},
                                      {M.term(n + 1), cpsi.cone.term(n)},
                                      {{nullptr, &projm}, {nullptr, nullptr}}));
        }
    }
    std::vector<AHom> rotH;
    for (int n = crot.cone.lo; n <= crot.cone.hi(); ++n) {
        auto it = Hc.find(n);
        rotH.push_back(it != Hc.end() ? it->second
                                      : a_zero(crot.cone.term(n), crot.cone.term(n - 1)));
    }
    AbsAcyclicCert cn;
    cn.node = AbsAcyclicCert::Node::Cone;
    cn.t = cpsi.incl_dst;
    cn.children.push_back(std::move(certM));
    cn.children.push_back(std::move(eqCone));
    AbsAcyclicCert rot;
    rot.node = AbsAcyclicCert::Node::HtpyEquiv;
    rot.f = chain_map_from(crot.cone, sci, phic);
    rot.g = chain_map_from(sci, crot.cone, psiXc);
    rot.ha = Homotopy{crot.cone, crot.cone, crot.cone.lo, std::move(rotH)};
    rot.hb = zero_homotopy(sci);
    rot.children.push_back(std::move(cn));

    AbsAcyclicCert sh2;
    sh2.node = AbsAcyclicCert::Node::Shift;
    sh2.k = -1;
    sh2.children.push_back(std::move(rot));

    // finally Cone(i) deformation-retracts onto T along the contraction of K
    std::map<int, AHom> rhoc, Hsc;
    for (int n = ci.cone.lo; n <= ci.cone.hi(); ++n) {
        AHom idT = a_identity(T.term(n));
        if (n == lo) {
            AHom isk = a_compose(i.comp(lo), sK);
            rhoc.emplace(n, a_block_map({T.term(n)}, {K.S.term(n + 1), T.term(n)}, {{&isk, &idT}}));
            AHom negs = a_neg(sK);
            Hsc.emplace(n, a_block_map({K.S.term(n), T.term(n - 1)}, {K.S.term(n + 1), T.term(n)},
                                       {{&negs, nullptr}, {nullptr, nullptr}}));
        } else {
            AHom zk = a_zero(K.S.term(n + 1), T.term(n));
            rhoc.emplace(n, a_block_map({T.term(n)}, {K.S.term(n + 1), T.term(n)}, {{&zk, &idT}}));
        }
    }
    std::vector<AHom> hs;
    for (int n = ci.cone.lo; n <= ci.cone.hi(); ++n) {
        auto it = Hsc.find(n);
        hs.push_back(it != Hsc.end() ? it->second : a_zero(ci.cone.term(n), ci.cone.term(n - 1)));
    }
    AbsAcyclicCert fin;
    fin.node = AbsAcyclicCert::Node::HtpyEquiv;
    fin.f = chain_map_from(ci.cone, T, rhoc);
    fin.g = ci.incl_dst;
    fin.ha = Homotopy{ci.cone, ci.cone, ci.cone.lo, std::move(hs)};
    fin.hb = zero_homotopy(T);
    fin.children.push_back(std::move(sh2));
    return fin;
}

namespace {

struct SpanMap {
    std::map<int, std::vector<Elem>> rows;

    void add(int n, const Elem& e) {
        if (!elem_is_zero(e)) rows[n].push_back(e);
    }
    ZmMat mat(int n, uint64_t mod, size_t cols) const {
        auto it = rows.find(n);
        if (it == rows.end()) return ZmMat(mod, 0, cols);
        return rows_of(it->second, mod, cols);
    }
};

} // namespace

CompletedSub complete_subcomplex_tot(const ComplexSES& ses, const std::map<int, ZmMat>& D,
                                     const SubcategorySpec& U) {
    const Complex& K = ses.i.src;
    const Complex& L = ses.i.dst;
    const Complex& M = ses.p.dst;
    Complex T = tot_ses(ses);
    uint64_t mod = T.A->mod;

    SpanMap DK, DL, DM;
    for (const auto& [n, mat] : D) {
        ModDirectSum ds =
            mod_direct_sum({K.term(n + 1), L.term(n), M.term(n - 1)});
        for (size_t r = 0; r < mat.rows; ++r) {
            Elem row = mat_row(mat, r);
            DK.add(n + 1, ds.proj[0](row));
            DL.add(n, ds.proj[1](row));
            DM.add(n - 1, ds.proj[2](row));
        }
    }

    // Q = i(D_K) + D_L + covers reaching the projected part
    SpanMap Q;
    for (const auto& [n, rows] : DK.rows)
        for (const Elem& e : rows) Q.add(n, ses.i.comp(n).add()(e));
    for (const auto& [n, rows] : DL.rows)
        for (const Elem& e : rows) Q.add(n, e);
    for (const auto& [m, rows] : DM.rows) {
        ZmMat dm = rows_of(rows, mod, M.term(m).pres.rank());
        SubModule Dm = a_submodule(M.term(m), dm);
        if (!U.member(Dm.S)) throw CoverFailure("completion: projected span is not a member");
        ZmMat pre = preimage_generators(ses.p.comp(m).add(), dm);
        SubModule P = a_submodule(L.term(m), pre);
        AHom pe = a_corestrict(a_compose(ses.p.comp(m), P.incl), Dm);
        AHom v = U.cover(pe);
        if (!is_surjective(a_compose(pe, v).add()))
            throw CoverFailure("completion: cover does not reach the projected span");
        ZmMat g = image_generators(a_compose(P.incl, v).add());
        for (size_t r = 0; r < g.rows; ++r) Q.add(m, mat_row(g, r));
    }

    // close under the differential, then pull the three strands apart
    std::map<int, ZmMat> Vg, Ug, Wg;
    int lo = L.lo, hi = L.hi();
    for (int n = lo; n <= hi; ++n) {
        ZmMat q = Q.mat(n, mod, L.term(n).pres.rank());
        ZmMat prev = n > lo ? Vg[n - 1] : ZmMat(mod, 0, 0);
        std::vector<Elem> carried;
        for (size_t r = 0; r < prev.rows; ++r)
            carried.push_back(L.diff(n - 1).add()(mat_row(prev, r)));
        ZmMat v = stack_rows(q, rows_of(carried, mod, L.term(n).pres.rank()));
        Vg[n] = canonical_submodule(L.term(n).pres, v);
        Ug[n] = canonical_submodule(K.term(n).pres,
                                    preimage_generators(ses.i.comp(n).add(), Vg[n]));
        std::vector<Elem> wrows;
        for (size_t r = 0; r < Vg[n].rows; ++r)
            wrows.push_back(ses.p.comp(n).add()(mat_row(Vg[n], r)));
        Wg[n] = canonical_submodule(M.term(n).pres,
                                    rows_of(wrows, mod, M.term(n).pres.rank()));
    }

    SubComplexData SK = subcomplex_from(K, Ug);
    SubComplexData SL = subcomplex_from(L, Vg);
    SubComplexData SM = subcomplex_from(M, Wg);
    std::map<int, AHom> ic, pc;
    for (int n = lo; n <= hi; ++n) {
        ic.emplace(n, a_factor_left(SL.incl.comp(n),
                                    a_compose(ses.i.comp(n), SK.incl.comp(n))));
        pc.emplace(n, a_factor_left(SM.incl.comp(n),
                                    a_compose(ses.p.comp(n), SL.incl.comp(n))));
    }
    ComplexSES sub = make_ses(chain_map_from(SK.S, SL.S, ic), chain_map_from(SL.S, SM.S, pc));
    Complex E = tot_ses(sub);

    std::map<int, AHom> incl;
    for (int n = E.lo; n <= E.hi(); ++n) {
        AHom ik = SK.incl.comp(n + 1);
        AHom il = SL.incl.comp(n);
        AHom im = SM.incl.comp(n - 1);
        incl.emplace(n, a_block_map({K.term(n + 1), L.term(n), M.term(n - 1)},
                                    {SK.S.term(n + 1), SL.S.term(n), SM.S.term(n - 1)},
                                    {{&ik, nullptr, nullptr},
                                     {nullptr, &il, nullptr},
                                     {nullptr, nullptr, &im}}));
    }
    ChainMap inc = chain_map_from(E, T, incl);

    for (const auto& [n, mat] : D) {
        ZmMat span = image_generators(inc.comp(n).add());
        for (size_t r = 0; r < mat.rows; ++r)
            if (!submodule_contains(T.term(n).pres, span, mat_row(mat, r)))
                throw ComputeError("completion missed a generator");
    }

    AbsAcyclicCert cert;
    cert.node = AbsAcyclicCert::Node::Tot;
    cert.ses = std::move(sub);
    return {SubComplexData{std::move(E), std::move(inc)}, std::move(cert)};
}

CompletedSub complete_subcomplex_cone(const ChainMap& t, const SubCompleter& complete_src,
                                      const SubCompleter& complete_dst,
                                      const std::map<int, ZmMat>& D) {
    const Complex& X = t.src;
    const Complex& Y = t.dst;
    ConeData cd = cone(t);
    uint64_t mod = X.A->mod;

    SpanMap DX, DY;
    for (const auto& [n, mat] : D) {
        ModDirectSum ds = mod_direct_sum({X.term(n + 1), Y.term(n)});
        for (size_t r = 0; r < mat.rows; ++r) {
            Elem row = mat_row(mat, r);
            DX.add(n + 1, ds.proj[0](row));
            DY.add(n, ds.proj[1](row));
        }
    }

    std::map<int, ZmMat> Pg;
    for (const auto& [n, rows] : DX.rows)
        Pg[n] = canonical_submodule(X.term(n).pres, rows_of(rows, mod, X.term(n).pres.rank()));
    CompletedSub E = complete_src(Pg);

    std::map<int, ZmMat> Qg;
    for (int n = Y.lo; n <= Y.hi(); ++n) {
        ZmMat dy = DY.mat(n, mod, Y.term(n).pres.rank());
        ZmMat te = image_generators(a_compose(t.comp(n), E.sub.incl.comp(n)).add());
        Qg[n] = canonical_submodule(Y.term(n).pres, stack_rows(dy, te));
    }
    CompletedSub F = complete_dst(Qg);

    std::map<int, AHom> hc;
    for (int n = E.sub.S.lo; n <= E.sub.S.hi(); ++n)
        hc.emplace(n, a_factor_left(F.sub.incl.comp(n),
                                    a_compose(t.comp(n), E.sub.incl.comp(n))));
    ChainMap h = chain_map_from(E.sub.S, F.sub.S, hc);
    ConeData ch = cone(h);

    std::map<int, AHom> incl;
    for (int n = ch.cone.lo; n <= ch.cone.hi(); ++n) {
        AHom ie = E.sub.incl.comp(n + 1);
        AHom jf = F.sub.incl.comp(n);
        incl.emplace(n, a_block_map({X.term(n + 1), Y.term(n)},
                                    {E.sub.S.term(n + 1), F.sub.S.term(n)},
                                    {{&ie, nullptr}, {nullptr, &jf}}));
    }
    ChainMap inc = chain_map_from(ch.cone, cd.cone, incl);

    for (const auto& [n, mat] : D) {
        ZmMat span = image_generators(inc.comp(n).add());
        for (size_t r = 0; r < mat.rows; ++r)
            if (!submodule_contains(cd.cone.term(n).pres, span, mat_row(mat, r)))
                throw ComputeError("completion missed a generator");
    }

    AbsAcyclicCert cert;
    cert.node = AbsAcyclicCert::Node::Cone;
    cert.t = std::move(h);
    cert.children.push_back(std::move(E.cert));
    cert.children.push_back(std::move(F.cert));
    return {SubComplexData{std::move(ch.cone), std::move(inc)}, std::move(cert)};
}

HomVanishing hom_K_vanishing(const AbsAcyclicCert& cert, const Complex& I) {
    for (int n = I.lo; n <= I.hi(); ++n)
        if (!is_injective_module(I.term(n)))
            throw ValidationError("vanishing test: target terms must be injective modules");
    CertCheck chk = verify_certificate(cert);
    if (!chk.ok) throw ValidationError("vanishing test: certificate failed: " + chk.reason);
    HomotopyClasses hk = hom_K(cert.subject(), I);
    if (hk.card() == 1) return {};
    for (uint64_t c = 1; c < hk.cls.Q.card(); ++c) {
        Elem e = index_elem(hk.cls.Q, c);
        if (!elem_is_zero(e)) return {false, hk.rep_of(e)};
    }
    return {};
}

} // namespace dlab
