#include "derivedlab/complex.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

namespace dlab {

namespace {

bool same_alg(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && *a == *b);
}

// y = cols * x over the presentation dstP (columns indexed by x)
Elem apply_cols(const AdditivePresentation& dstP, const ZmMat& cols, const Elem& x) {
    Elem y(dstP.rank(), 0);
    for (size_t i = 0; i < dstP.rank(); ++i) {
        uint64_t acc = 0;
        for (size_t t = 0; t < x.size(); ++t)
            acc = addmod(acc, mulmod(cols.at(i, t), x[t] % dstP.orders[i], dstP.orders[i]),
                         dstP.orders[i]);
        y[i] = acc;
    }
    return y;
}

} // namespace

Complex::Complex(AlgebraPtr alg, int low, std::vector<AModule> t, std::vector<AHom> d)
    : A(std::move(alg)), lo(low), terms(std::move(t)), diffs(std::move(d)) {
    if (!A) throw ValidationError("complex: null algebra");
    size_t want = terms.empty() ? 0 : terms.size() - 1;
    if (diffs.size() != want)
        throw ValidationError("complex: need one differential per adjacent pair");
    for (const auto& m : terms)
        if (!same_alg(m.A, A)) throw ValidationError("complex: algebra mismatch");
    for (size_t i = 0; i < diffs.size(); ++i)
        if (!(diffs[i].src == terms[i]) || !(diffs[i].dst == terms[i + 1]))
            throw ValidationError("complex: differential endpoints mismatch");
    for (size_t i = 0; i + 1 < diffs.size(); ++i)
        if (!a_compose(diffs[i + 1], diffs[i]).is_zero())
            throw ValidationError("complex: d∘d != 0");
}

Complex Complex::zero(AlgebraPtr alg) { return Complex(std::move(alg), 0, {}, {}); }

Complex Complex::single(const AModule& M, int deg) {
    return Complex(M.A, deg, {M}, {});
}

Complex Complex::from_maps(int low, const std::vector<AHom>& maps) {
    if (maps.empty()) throw ValidationError("complex: from_maps needs a map");
    std::vector<AModule> t;
    t.push_back(maps[0].src);
    for (const auto& f : maps) t.push_back(f.dst);
    return Complex(maps[0].src.A, low, std::move(t), maps);
}

AModule Complex::term(int n) const {
    if (in_window(n)) return terms[(size_t)(n - lo)];
    return zero_module(A);
}

AHom Complex::diff(int n) const {
    if (n >= lo && n < hi()) return diffs[(size_t)(n - lo)];
    return a_zero(term(n), term(n + 1));
}

Complex Complex::trimmed() const {
    size_t a = 0, b = terms.size();
    while (a < b && terms[a].rank() == 0) ++a;
    while (b > a && terms[b - 1].rank() == 0) --b;
    if (a == b) return Complex::zero(A);
    std::vector<AModule> t(terms.begin() + (long)a, terms.begin() + (long)b);
    std::vector<AHom> d(diffs.begin() + (long)a, diffs.begin() + (long)(b - 1));
    return Complex(A, lo + (int)a, std::move(t), std::move(d));
}

bool Complex::is_zero_complex() const {
    for (const auto& m : terms)
        if (m.rank() > 0) return false;
    return true;
}

bool Complex::operator==(const Complex& o) const {
    if (!same_alg(A, o.A)) return false;
    Complex x = trimmed(), y = o.trimmed();
    return x.lo == y.lo && x.terms == y.terms && x.diffs == y.diffs;
}

ChainMap::ChainMap(Complex s, Complex d, int low, std::vector<AHom> cs)
    : src(std::move(s)), dst(std::move(d)), lo(low), comps(std::move(cs)) {
    if (!same_alg(src.A, dst.A)) throw ValidationError("chain map: algebra mismatch");
    for (size_t i = 0; i < comps.size(); ++i) {
        int n = lo + (int)i;
        if (!(comps[i].src == src.term(n)) || !(comps[i].dst == dst.term(n)))
            throw ValidationError("chain map: component endpoints mismatch");
    }
    int a = std::min(src.lo, dst.lo) - 1;
    int b = std::max(src.hi(), dst.hi());
    for (int n = a; n <= b; ++n) {
        if (src.term(n).rank() == 0 || dst.term(n + 1).rank() == 0) continue;
        AHom l = a_compose(comp(n + 1), src.diff(n));
        AHom r = a_compose(dst.diff(n), comp(n));
        if (!(l.a == r.a))
            throw ValidationError("chain map: does not commute with differentials");
    }
}

AHom ChainMap::comp(int n) const {
    if (n >= lo && n < lo + (int)comps.size()) return comps[(size_t)(n - lo)];
    return a_zero(src.term(n), dst.term(n));
}

bool ChainMap::is_zero() const {
    for (const auto& f : comps)
        if (!f.is_zero()) return false;
    return true;
}

bool ChainMap::operator==(const ChainMap& o) const {
    if (!(src == o.src) || !(dst == o.dst)) return false;
    int a = std::min(lo, o.lo);
    int b = std::max(lo + (int)comps.size(), o.lo + (int)o.comps.size()) - 1;
    for (int n = a; n <= b; ++n)
        if (!(comp(n).a == o.comp(n).a)) return false;
    return true;
}

namespace {

// assemble a chain map from a per-degree component function
template <typename F>
ChainMap build_chain_map(const Complex& C, const Complex& D, F&& component) {
    int a = std::min(C.lo, D.lo), b = std::max(C.hi(), D.hi());
    if (C.terms.empty() && D.terms.empty()) return ChainMap(C, D, 0, {});
    std::vector<AHom> comps;
    for (int n = a; n <= b; ++n) comps.push_back(component(n));
    return ChainMap(C, D, a, std::move(comps));
}

} // namespace

ChainMap chain_identity(const Complex& C) {
    return build_chain_map(C, C, [&](int n) { return a_identity(C.term(n)); });
}

ChainMap chain_zero(const Complex& C, const Complex& D) {
    return build_chain_map(C, D, [&](int n) { return a_zero(C.term(n), D.term(n)); });
}

ChainMap chain_compose(const ChainMap& g, const ChainMap& f) {
    return build_chain_map(f.src, g.dst,
                           [&](int n) { return a_compose(g.comp(n), f.comp(n)); });
}

ChainMap chain_add(const ChainMap& f, const ChainMap& g) {
    return build_chain_map(f.src, f.dst,
                           [&](int n) { return a_add(f.comp(n), g.comp(n)); });
}

ChainMap chain_sub(const ChainMap& f, const ChainMap& g) {
    return build_chain_map(f.src, f.dst,
                           [&](int n) { return a_sub(f.comp(n), g.comp(n)); });
}

ChainMap chain_neg(const ChainMap& f) {
    return build_chain_map(f.src, f.dst, [&](int n) { return a_neg(f.comp(n)); });
}

ChainMap chain_map_from(const Complex& C, const Complex& D, const std::map<int, AHom>& comps) {
    return build_chain_map(C, D, [&](int n) {
        auto it = comps.find(n);
        return it != comps.end() ? it->second : a_zero(C.term(n), D.term(n));
    });
}

AHom Homotopy::comp(int n) const {
    if (n >= lo && n < lo + (int)comps.size()) return comps[(size_t)(n - lo)];
    return a_zero(src.term(n), dst.term(n - 1));
}

Complex shift_complex(const Complex& C, int k) {
    if (C.terms.empty()) return Complex::zero(C.A);
    std::vector<AHom> d = C.diffs;
    if (k % 2 != 0)
        for (auto& f : d) f = a_neg(f);
    return Complex(C.A, C.lo - k, C.terms, std::move(d));
}

ChainMap shift_chain_map(const ChainMap& f, int k) {
    return ChainMap(shift_complex(f.src, k), shift_complex(f.dst, k), f.lo - k, f.comps);
}

ComplexSum complex_direct_sum(const std::vector<Complex>& parts) {
    if (parts.empty()) throw ValidationError("complex sum: no parts");
    AlgebraPtr A = parts[0].A;
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& p : parts) {
        if (!same_alg(p.A, A)) throw ValidationError("complex sum: algebra mismatch");
        if (!p.terms.empty()) {
            lo = std::min(lo, p.lo);
            hi = std::max(hi, p.hi());
        }
    }
    if (lo > hi) {
        Complex z = Complex::zero(A);
        ComplexSum r{z, {}, {}};
        for (const auto& p : parts) {
            r.incl.push_back(chain_zero(p, z));
            r.proj.push_back(chain_zero(z, p));
        }
        return r;
    }
    std::vector<AModule> terms;
    std::vector<std::vector<AHom>> incls(parts.size()), projs(parts.size());
    for (int n = lo; n <= hi; ++n) {
        std::vector<AModule> mods;
        mods.reserve(parts.size());
        for (const auto& p : parts) mods.push_back(p.term(n));
        ModDirectSum ds = mod_direct_sum(mods);
        terms.push_back(ds.sum);
        for (size_t k = 0; k < parts.size(); ++k) {
            incls[k].push_back(ds.incl[k]);
            projs[k].push_back(ds.proj[k]);
        }
    }
    std::vector<AHom> diffs;
    for (int n = lo; n < hi; ++n) {
        std::vector<AModule> srcs, dsts;
        std::vector<AHom> held;
        held.reserve(parts.size());
        for (const auto& p : parts) {
            srcs.push_back(p.term(n));
            dsts.push_back(p.term(n + 1));
            held.push_back(p.diff(n));
        }
        std::vector<std::vector<const AHom*>> grid(parts.size(),
                                                   std::vector<const AHom*>(parts.size(), nullptr));
        for (size_t k = 0; k < parts.size(); ++k) grid[k][k] = &held[k];
        diffs.push_back(a_block_map(dsts, srcs, grid));
    }
    Complex S(A, lo, std::move(terms), std::move(diffs));
    ComplexSum r{S, {}, {}};
    for (size_t k = 0; k < parts.size(); ++k) {
        r.incl.emplace_back(parts[k], S, lo, incls[k]);
        r.proj.emplace_back(S, parts[k], lo, projs[k]);
    }
    return r;
}

ConeData cone(const ChainMap& f) {
    const Complex& X = f.src;
    const Complex& Y = f.dst;
    AlgebraPtr A = X.A;
    if (X.terms.empty() && Y.terms.empty()) {
        Complex z = Complex::zero(A);
        return {z, chain_zero(Y, z), chain_zero(z, shift_complex(X, 1))};
    }
    int lo = std::min(X.lo - 1, Y.lo);
    int hi = std::max(X.hi() - 1, Y.hi());
    std::vector<AModule> terms;
    std::vector<AHom> inclY, projX;
    for (int n = lo; n <= hi; ++n) {
        ModDirectSum ds = mod_direct_sum({X.term(n + 1), Y.term(n)});
        terms.push_back(ds.sum);
        inclY.push_back(ds.incl[1]);
        projX.push_back(ds.proj[0]);
    }
    std::vector<AHom> diffs;
    for (int n = lo; n < hi; ++n) {
        AHom ndx = a_neg(X.diff(n + 1));
        AHom fc = f.comp(n + 1);
        AHom dy = Y.diff(n);
        std::vector<std::vector<const AHom*>> grid = {{&ndx, nullptr}, {&fc, &dy}};
        diffs.push_back(
            a_block_map({X.term(n + 2), Y.term(n + 1)}, {X.term(n + 1), Y.term(n)}, grid));
    }
    Complex Cn(A, lo, std::move(terms), std::move(diffs));
    ChainMap iY(Y, Cn, lo, std::move(inclY));
    ChainMap pX(Cn, shift_complex(X, 1), lo, std::move(projX));
    return {Cn, iY, pX};
}

ComplexSES make_ses(const ChainMap& i, const ChainMap& p) {
    if (!(i.dst == p.src)) throw ValidationError("ses: middle complex mismatch");
    int lo = std::min({i.src.lo, i.dst.lo, p.dst.lo});
    int hi = std::max({i.src.hi(), i.dst.hi(), p.dst.hi()});
    for (int n = lo; n <= hi; ++n) {
        AddMap ia = i.comp(n).add(), pa = p.comp(n).add();
        if (!compose(pa, ia).is_zero()) throw ValidationError("ses: p∘i != 0");
        if (!is_injective(ia)) throw ValidationError("ses: kernel term not injective");
        if (!is_surjective(pa)) throw ValidationError("ses: quotient term not surjective");
        uint64_t kc = kernel_of_addmap(pa).K.card();
        uint64_t ic = submodule_from_generators(pa.src, image_generators(ia)).S.card();
        if (kc != ic) throw ValidationError("ses: not exact in the middle");
    }
    return {i, p};
}

Complex tot_ses(const ComplexSES& s) {
    const Complex& K = s.i.src;
    const Complex& L = s.i.dst;
    const Complex& M = s.p.dst;
    AlgebraPtr A = L.A;
    int lo = std::min({K.lo - 1, L.lo, M.lo + 1});
    int hi = std::max({K.hi() - 1, L.hi(), M.hi() + 1});
    if (lo > hi) return Complex::zero(A);
    std::vector<AModule> terms;
    for (int n = lo; n <= hi; ++n)
        terms.push_back(mod_direct_sum({K.term(n + 1), L.term(n), M.term(n - 1)}).sum);
    std::vector<AHom> diffs;
    for (int n = lo; n < hi; ++n) {
        AHom ndk = a_neg(K.diff(n + 1));
        AHom ic = s.i.comp(n + 1);
        AHom dl = L.diff(n);
        AHom pc = s.p.comp(n);
        AHom ndm = a_neg(M.diff(n - 1));
        std::vector<std::vector<const AHom*>> grid = {
            {&ndk, nullptr, nullptr}, {&ic, &dl, nullptr}, {nullptr, &pc, &ndm}};
        diffs.push_back(a_block_map({K.term(n + 2), L.term(n + 1), M.term(n)},
                                    {K.term(n + 1), L.term(n), M.term(n - 1)}, grid));
    }
    return Complex(A, lo, std::move(terms), std::move(diffs));
}

CohomologyAt cohomology_at(const Complex& C, int n) {
    SubModule Z = a_kernel(C.diff(n));
    AddMap zin = Z.incl.add();
    ZmMat img = image_generators(C.diff(n - 1).add());
    ZmMat G(C.A->mod, img.rows, Z.S.rank());
    for (size_t r = 0; r < img.rows; ++r) {
        auto sol = solve_in_presentation(zin, mat_row(img, r));
        if (!sol) throw ComputeError("cohomology: boundary escapes cycles");
        for (size_t j = 0; j < G.cols; ++j) G.at(r, j) = (*sol)[j];
    }
    QuotModule H = a_quotient(Z.S, G);
    return {H.Q, Z, H, n};
}

Elem cohomology_class_of(const CohomologyAt& hc, const Elem& cycle_in_term) {
    auto z = solve_in_presentation(hc.cycles.incl.add(), cycle_in_term);
    if (!z) throw ValidationError("cohomology class: element is not a cycle");
    return hc.hq.proj(*z);
}

Elem representative_of(const CohomologyAt& hc, const Elem& hclass) {
    Elem z = apply_cols(hc.cycles.S.pres, hc.hq.section, hclass);
    return hc.cycles.incl(z);
}

std::map<int, uint64_t> cohomology_cards(const Complex& C) {
    std::map<int, uint64_t> out;
    for (int n = C.lo; n <= C.hi(); ++n) out[n] = cohomology_at(C, n).H.card();
    return out;
}

bool is_acyclic(const Complex& C) {
    for (int n = C.lo; n <= C.hi(); ++n)
        if (cohomology_at(C, n).H.card() != 1) return false;
    return true;
}

AHom induced_map(const ChainMap& f, const CohomologyAt& hc, const CohomologyAt& hd) {
    if (hc.deg != hd.deg) throw ValidationError("induced map: degree mismatch");
    int n = hc.deg;
    ZmMat a(f.src.A->mod, hd.H.rank(), hc.H.rank());
    for (size_t t = 0; t < hc.H.rank(); ++t) {
        Elem e = elem_zero(hc.H.pres);
        e[t] = 1;
        Elem y = f.comp(n)(representative_of(hc, e));
        Elem cls = cohomology_class_of(hd, y);
        for (size_t i = 0; i < hd.H.rank(); ++i) a.at(i, t) = cls[i];
    }
    return AHom(hc.H, hd.H, std::move(a));
}

bool is_quasi_iso(const ChainMap& f) {
    int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi(), f.dst.hi());
    for (int n = lo; n <= hi; ++n) {
        CohomologyAt hc = cohomology_at(f.src, n), hd = cohomology_at(f.dst, n);
        if (!is_isomorphism(induced_map(f, hc, hd).add())) return false;
    }
    return true;
}

TruncAbove truncate_above(const Complex& C, int n) {
    if (C.terms.empty() || n >= C.hi()) return {C, chain_identity(C)};
    if (n < C.lo) {
        Complex z = Complex::zero(C.A);
        return {z, chain_zero(z, C)};
    }
    SubModule Z = a_kernel(C.diff(n));
    std::vector<AModule> terms;
    std::vector<AHom> diffs;
    for (int k = C.lo; k < n; ++k) terms.push_back(C.term(k));
    terms.push_back(Z.S);
    for (int k = C.lo; k + 1 < n; ++k) diffs.push_back(C.diff(k));
    if (n > C.lo) {
        AHom dprev = C.diff(n - 1);
        AddMap zin = Z.incl.add();
        ZmMat B(C.A->mod, Z.S.rank(), dprev.src.rank());
        for (size_t j = 0; j < dprev.src.rank(); ++j) {
            Elem e = elem_zero(dprev.src.pres);
            e[j] = 1;
            auto sol = solve_in_presentation(zin, dprev(e));
            if (!sol) throw ComputeError("truncate: boundary escapes cycles");
            for (size_t i = 0; i < B.rows; ++i) B.at(i, j) = (*sol)[i];
        }
        diffs.emplace_back(dprev.src, Z.S, std::move(B));
    }
    Complex T(C.A, C.lo, std::move(terms), std::move(diffs));
    std::vector<AHom> comps;
    for (int k = C.lo; k < n; ++k) comps.push_back(a_identity(C.term(k)));
    comps.push_back(Z.incl);
    return {T, ChainMap(T, C, C.lo, std::move(comps))};
}

TruncBelow truncate_below(const Complex& C, int n) {
    if (C.terms.empty() || n <= C.lo) return {C, chain_identity(C)};
    if (n > C.hi()) {
        Complex z = Complex::zero(C.A);
        return {z, chain_zero(C, z)};
    }
    QuotModule Q = a_cokernel(C.diff(n - 1));
    std::vector<AModule> terms;
    std::vector<AHom> diffs;
    terms.push_back(Q.Q);
    for (int k = n + 1; k <= C.hi(); ++k) terms.push_back(C.term(k));
    if (n < C.hi()) {
        AHom dn = C.diff(n);
        ZmMat B(C.A->mod, dn.dst.rank(), Q.Q.rank());
        for (size_t t = 0; t < Q.Q.rank(); ++t) {
            Elem e = elem_zero(Q.Q.pres);
            e[t] = 1;
            Elem z = apply_cols(dn.src.pres, Q.section, e);
            Elem w = dn(z);
            for (size_t i = 0; i < B.rows; ++i) B.at(i, t) = w[i];
        }
        diffs.emplace_back(Q.Q, dn.dst, std::move(B));
        for (int k = n + 1; k + 1 <= C.hi(); ++k) diffs.push_back(C.diff(k));
    }
    Complex T(C.A, n, std::move(terms), std::move(diffs));
    std::vector<AHom> comps;
    for (int k = C.lo; k < n; ++k) comps.push_back(a_zero(C.term(k), zero_module(C.A)));
    comps.push_back(Q.proj);
    for (int k = n + 1; k <= C.hi(); ++k) comps.push_back(a_identity(C.term(k)));
    return {T, ChainMap(C, T, C.lo, std::move(comps))};
}

ChainMap ChainMapSpace::from_coords(const Elem& t) const {
    Elem big = incl(t);
    std::vector<AHom> comps;
    for (size_t k = 0; k < spaces.size(); ++k)
        comps.push_back(spaces[k].from_coords(comp_sum.proj[k](big)));
    return ChainMap(C, D, lo, std::move(comps));
}

Elem ChainMapSpace::to_coords(const ChainMap& f) const {
    Elem big = elem_zero(comp_sum.sum);
    for (size_t k = 0; k < spaces.size(); ++k) {
        Elem c = spaces[k].to_coords(f.comp(lo + (int)k));
        big = elem_add(comp_sum.sum, big, comp_sum.incl[k](c));
    }
    auto sol = solve_in_presentation(incl, big);
    if (!sol) throw ComputeError("chain map space: map not in space");
    return *sol;
}

ChainMapSpace chain_map_space(const Complex& C, const Complex& D) {
    ChainMapSpace S{C, D, 0, {}, {}, add_identity(AdditivePresentation(C.A->mod, {})), {}};
    int lo = std::min(C.lo, D.lo), hi = std::max(C.hi(), D.hi());
    if (lo > hi) hi = lo;
    S.lo = lo;
    std::vector<AdditivePresentation> parts, tparts;
    std::vector<AHomSpace> tspaces;
    for (int n = lo; n <= hi; ++n) {
        S.spaces.push_back(hom_space(C.term(n), D.term(n)));
        parts.push_back(S.spaces.back().coords);
        tspaces.push_back(hom_space(C.term(n), D.term(n + 1)));
        tparts.push_back(tspaces.back().coords);
    }
    S.comp_sum = direct_sum(parts);
    DirectSum tsum = direct_sum(tparts);
    ZmMat Th(C.A->mod, tsum.sum.rank(), S.comp_sum.sum.rank());
    size_t col = 0;
    for (size_t k = 0; k < S.spaces.size(); ++k) {
        int n = lo + (int)k;
        for (size_t g = 0; g < parts[k].rank(); ++g, ++col) {
            Elem e = elem_zero(parts[k]);
            e[g] = 1;
            AHom fn = S.spaces[k].from_coords(e);
            Elem acc = elem_zero(tsum.sum);
            AHom up = a_compose(D.diff(n), fn);
            acc = elem_add(tsum.sum, acc, tsum.incl[k](tspaces[k].to_coords(up)));
            if (k > 0) {
                AHom dn = a_neg(a_compose(fn, C.diff(n - 1)));
                acc = elem_add(tsum.sum, acc, tsum.incl[k - 1](tspaces[k - 1].to_coords(dn)));
            }
            for (size_t i = 0; i < Th.rows; ++i) Th.at(i, col) = acc[i];
        }
    }
    AddMap Theta(S.comp_sum.sum, tsum.sum, std::move(Th));
    KernelPres K = kernel_of_addmap(Theta);
    S.coords = K.K;
    S.incl = K.incl;
    return S;
}

std::optional<Homotopy> homotopy_solve(const ChainMap& f, const ChainMap& g) {
    const Complex& C = f.src;
    const Complex& D = f.dst;
    int hlo = std::min(C.lo, D.lo + 1), hhi = std::max(C.hi(), D.hi() + 1);
    if (hlo > hhi) hhi = hlo;
    int tlo = std::min(C.lo, D.lo), thi = std::max(C.hi(), D.hi());
    if (tlo > thi) thi = tlo;
    std::vector<AHomSpace> hspaces, tspaces;
    std::vector<AdditivePresentation> hparts, tparts;
    for (int n = hlo; n <= hhi; ++n) {
        hspaces.push_back(hom_space(C.term(n), D.term(n - 1)));
        hparts.push_back(hspaces.back().coords);
    }
    for (int n = tlo; n <= thi; ++n) {
        tspaces.push_back(hom_space(C.term(n), D.term(n)));
        tparts.push_back(tspaces.back().coords);
    }
    DirectSum hsum = direct_sum(hparts);
    DirectSum tsum = direct_sum(tparts);
    ZmMat Ph(C.A->mod, tsum.sum.rank(), hsum.sum.rank());
    size_t col = 0;
    for (size_t k = 0; k < hspaces.size(); ++k) {
        int n = hlo + (int)k;
        for (size_t g2 = 0; g2 < hparts[k].rank(); ++g2, ++col) {
            Elem e = elem_zero(hparts[k]);
            e[g2] = 1;
            AHom hn = hspaces[k].from_coords(e);
            Elem acc = elem_zero(tsum.sum);
            if (n >= tlo && n <= thi) {
                AHom diag = a_compose(D.diff(n - 1), hn);
                acc = elem_add(tsum.sum, acc,
                               tsum.incl[(size_t)(n - tlo)](tspaces[(size_t)(n - tlo)].to_coords(diag)));
            }
            if (n - 1 >= tlo && n - 1 <= thi) {
                AHom low = a_compose(hn, C.diff(n - 1));
                acc = elem_add(tsum.sum, acc,
                               tsum.incl[(size_t)(n - 1 - tlo)](
                                   tspaces[(size_t)(n - 1 - tlo)].to_coords(low)));
            }
            for (size_t i = 0; i < Ph.rows; ++i) Ph.at(i, col) = acc[i];
        }
    }
    AddMap Phi(hsum.sum, tsum.sum, std::move(Ph));
    Elem rhs = elem_zero(tsum.sum);
    for (size_t k = 0; k < tspaces.size(); ++k) {
        int n = tlo + (int)k;
        AHom d = a_sub(f.comp(n), g.comp(n));
        rhs = elem_add(tsum.sum, rhs, tsum.incl[k](tspaces[k].to_coords(d)));
    }
    auto sol = solve_in_presentation(Phi, rhs);
    if (!sol) return std::nullopt;
    std::vector<AHom> comps;
    for (size_t k = 0; k < hspaces.size(); ++k)
        comps.push_back(hspaces[k].from_coords(hsum.proj[k](*sol)));
    return Homotopy{C, D, hlo, std::move(comps)};
}

bool is_contractible(const Complex& C) {
    return homotopy_solve(chain_identity(C), chain_zero(C, C)).has_value();
}

bool chain_homotopic(const ChainMap& f, const ChainMap& g) {
    return homotopy_solve(f, g).has_value();
}

std::optional<ChainMap> split_mono_retraction(const ChainMap& i) {
    const Complex& X = i.src;
    const Complex& C = i.dst;
    ChainMapSpace cms = chain_map_space(C, X);
    int xlo = X.lo, xhi = X.hi();
    if (xlo > xhi) return chain_zero(C, X);
    std::vector<AHomSpace> idspaces;
    std::vector<AdditivePresentation> idparts;
    for (int n = xlo; n <= xhi; ++n) {
        idspaces.push_back(hom_space(X.term(n), X.term(n)));
        idparts.push_back(idspaces.back().coords);
    }
    DirectSum idsum = direct_sum(idparts);
    ZmMat Rm(X.A->mod, idsum.sum.rank(), cms.coords.rank());
    for (size_t t = 0; t < cms.coords.rank(); ++t) {
        Elem e = elem_zero(cms.coords);
        e[t] = 1;
        ChainMap r = cms.from_coords(e);
        Elem acc = elem_zero(idsum.sum);
        for (size_t k = 0; k < idspaces.size(); ++k) {
            int n = xlo + (int)k;
            AHom ri = a_compose(r.comp(n), i.comp(n));
            acc = elem_add(idsum.sum, acc, idsum.incl[k](idspaces[k].to_coords(ri)));
        }
        for (size_t r2 = 0; r2 < Rm.rows; ++r2) Rm.at(r2, t) = acc[r2];
    }
    AddMap cond(cms.coords, idsum.sum, std::move(Rm));
    Elem rhs = elem_zero(idsum.sum);
    for (size_t k = 0; k < idspaces.size(); ++k) {
        int n = xlo + (int)k;
        rhs = elem_add(idsum.sum, rhs, idsum.incl[k](idspaces[k].to_coords(a_identity(X.term(n)))));
    }
    auto sol = solve_in_presentation(cond, rhs);
    if (!sol) return std::nullopt;
    return cms.from_coords(*sol);
}

std::pair<uint64_t, uint64_t> euler_char(const Complex& C) {
    uint64_t num = 1, den = 1;
    for (int n = C.lo; n <= C.hi(); ++n) {
        uint64_t c = C.term(n).card();
        if (((n % 2) + 2) % 2 == 0)
            num *= c;
        else
            den *= c;
    }
    uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

SubComplexData subcomplex_from(const Complex& C, const std::map<int, ZmMat>& gens) {
    std::vector<SubModule> subs;
    for (int n = C.lo; n <= C.hi(); ++n) {
        auto it = gens.find(n);
        ZmMat G = it != gens.end() ? it->second : ZmMat(C.A->mod, 0, C.term(n).rank());
        subs.push_back(a_submodule(C.term(n), G));
    }
    std::vector<AModule> terms;
    std::vector<AHom> diffs, comps;
    for (size_t k = 0; k < subs.size(); ++k) terms.push_back(subs[k].S);
    for (size_t k = 0; k + 1 < subs.size(); ++k) {
        int n = C.lo + (int)k;
        AddMap nin = subs[k + 1].incl.add();
        ZmMat B(C.A->mod, subs[k + 1].S.rank(), subs[k].S.rank());
        for (size_t j = 0; j < subs[k].S.rank(); ++j) {
            Elem e = elem_zero(subs[k].S.pres);
            e[j] = 1;
            Elem y = C.diff(n)(subs[k].incl(e));
            auto sol = solve_in_presentation(nin, y);
            if (!sol) throw ValidationError("subcomplex: spans not stable under d");
            for (size_t i = 0; i < B.rows; ++i) B.at(i, j) = (*sol)[i];
        }
        diffs.emplace_back(subs[k].S, subs[k + 1].S, std::move(B));
    }
    Complex S(C.A, C.lo, std::move(terms), std::move(diffs));
    for (auto& s : subs) comps.push_back(s.incl);
    return {S, ChainMap(S, C, C.lo, std::move(comps))};
}

QuotComplexData quotient_complex(const Complex& C, const std::map<int, ZmMat>& gens) {
    std::vector<QuotModule> quots;
    std::vector<ZmMat> spans;
    for (int n = C.lo; n <= C.hi(); ++n) {
        auto it = gens.find(n);
        ZmMat G = it != gens.end() ? it->second : ZmMat(C.A->mod, 0, C.term(n).rank());
        spans.push_back(a_submodule_closure(C.term(n), G));
        quots.push_back(a_quotient(C.term(n), G));
    }
    for (size_t k = 0; k + 1 < quots.size(); ++k) {
        int n = C.lo + (int)k;
        for (size_t r = 0; r < spans[k].rows; ++r) {
            Elem y = C.diff(n)(mat_row(spans[k], r));
            if (!elem_is_zero(quots[k + 1].proj(y)))
                throw ValidationError("quotient complex: spans not stable under d");
        }
    }
    std::vector<AModule> terms;
    std::vector<AHom> diffs, comps;
    for (auto& q : quots) terms.push_back(q.Q);
    for (size_t k = 0; k + 1 < quots.size(); ++k) {
        int n = C.lo + (int)k;
        ZmMat B(C.A->mod, quots[k + 1].Q.rank(), quots[k].Q.rank());
        for (size_t t = 0; t < quots[k].Q.rank(); ++t) {
            Elem e = elem_zero(quots[k].Q.pres);
            e[t] = 1;
            Elem z = apply_cols(C.term(n).pres, quots[k].section, e);
            Elem w = quots[k + 1].proj(C.diff(n)(z));
            for (size_t i = 0; i < B.rows; ++i) B.at(i, t) = w[i];
        }
        diffs.emplace_back(quots[k].Q, quots[k + 1].Q, std::move(B));
    }
    Complex Q(C.A, C.lo, std::move(terms), std::move(diffs));
    for (auto& q : quots) comps.push_back(q.proj);
    return {Q, ChainMap(C, Q, C.lo, std::move(comps))};
}

} // namespace dlab
