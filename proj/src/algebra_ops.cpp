#include "derivedlab/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dlab {

namespace {

ZmMat rows_from_elems(uint64_t mod, const std::vector<Elem>& v, size_t width) {
    ZmMat G(mod, v.size(), width);
    for (size_t r = 0; r < v.size(); ++r)
        for (size_t c = 0; c < width; ++c) G.at(r, c) = v[r][c];
    return G;
}

std::vector<uint64_t> mat_key(const ZmMat& M) {
    std::vector<uint64_t> k{M.rows, M.cols};
    k.insert(k.end(), M.a.begin(), M.a.end());
    return k;
}

} // namespace

ZmMat a_submodule_closure(const AModule& M, const ZmMat& G) {
    ZmMat cur = canonical_submodule(M.pres, G);
    while (true) {
        std::vector<Elem> extra;
        for (size_t r = 0; r < cur.rows; ++r) {
            Elem x = elem_reduce(M.pres, cur.row(r));
            for (size_t i = 0; i < M.A->rank; ++i) {
                Elem bi(M.A->rank, 0);
                bi[i] = 1;
                Elem y = M.act_elem(bi, x);
                if (!in_row_span(cur, y)) extra.push_back(y);
            }
        }
        if (extra.empty()) return cur;
        ZmMat ext = vstack(cur, rows_from_elems(M.pres.mod, extra, M.pres.rank()));
        cur = canonical_submodule(M.pres, ext);
    }
}

SubModule a_submodule(const AModule& M, const ZmMat& G) {
    ZmMat closed = a_submodule_closure(M, G);
    SubPres sp = submodule_from_generators(M.pres, closed);
    std::vector<ZmMat> act;
    for (size_t i = 0; i < M.A->rank; ++i) {
        Elem bi(M.A->rank, 0);
        bi[i] = 1;
        ZmMat ai(M.pres.mod, sp.S.rank(), sp.S.rank());
        for (size_t t = 0; t < sp.S.rank(); ++t) {
            Elem et(sp.S.rank(), 0);
            et[t] = 1;
            Elem y = M.act_elem(bi, sp.incl(et));
            auto co = solve_in_presentation(sp.incl, y);
            if (!co) throw ComputeError("submodule: action does not restrict");
            for (size_t r = 0; r < sp.S.rank(); ++r) ai.at(r, t) = (*co)[r];
        }
        act.push_back(std::move(ai));
    }
    AModule S(M.A, sp.S, std::move(act));
    return SubModule{S, AHom(S, M, sp.incl.a)};
}

QuotModule a_quotient(const AModule& M, const ZmMat& G) {
    ZmMat closed = a_submodule_closure(M, G);
    QuotPres qp = quotient_by_submodule(M.pres, closed);
    std::vector<ZmMat> act;
    for (size_t i = 0; i < M.A->rank; ++i) {
        Elem bi(M.A->rank, 0);
        bi[i] = 1;
        ZmMat ai(M.pres.mod, qp.Q.rank(), qp.Q.rank());
        for (size_t t = 0; t < qp.Q.rank(); ++t) {
            Elem et(qp.Q.rank(), 0);
            et[t] = 1;
            Elem x = section_apply(qp, M.pres, et);
            Elem y = qp.proj(M.act_elem(bi, x));
            for (size_t r = 0; r < qp.Q.rank(); ++r) ai.at(r, t) = y[r];
        }
        act.push_back(std::move(ai));
    }
    AModule Q(M.A, qp.Q, std::move(act));
    return QuotModule{Q, AHom(M, Q, qp.proj.a), qp.section};
}

SubModule a_kernel(const AHom& f) { return a_submodule(f.src, kernel_generators(f.add())); }

SubModule a_image(const AHom& f) { return a_submodule(f.dst, image_generators(f.add())); }

QuotModule a_cokernel(const AHom& f) { return a_quotient(f.dst, image_generators(f.add())); }

Pullback a_pullback(const AHom& f, const AHom& g) {
    if (!(f.dst == g.dst)) throw ValidationError("pullback: targets differ");
    AHom ng = a_neg(g);
    AHom h = a_block_map({f.dst}, {f.src, g.src}, {{&f, &ng}});
    SubModule k = a_kernel(h);
    ModDirectSum ds = mod_direct_sum({f.src, g.src});
    return Pullback{k.S, a_compose(ds.proj[0], k.incl), a_compose(ds.proj[1], k.incl)};
}

Pushout a_pushout(const AHom& f, const AHom& g) {
    if (!(f.src == g.src)) throw ValidationError("pushout: sources differ");
    AHom ng = a_neg(g);
    AHom h = a_block_map({f.dst, g.dst}, {f.src}, {{&f}, {&ng}});
    QuotModule c = a_cokernel(h);
    ModDirectSum ds = mod_direct_sum({f.dst, g.dst});
    return Pushout{c.Q, a_compose(c.proj, ds.incl[0]), a_compose(c.proj, ds.incl[1])};
}

ZmMat radical_ideal(const FinAlgebra& A) {
    AdditivePresentation P = A.pres();
    uint64_t n = P.card();
    if (n > enum_cap()) throw ComputeError("radical: algebra too large to enumerate");
    std::vector<char> unitv(n);
    for (uint64_t i = 0; i < n; ++i) unitv[i] = A.is_unit_elem(index_elem(P, i)) ? 1 : 0;
    Elem one = elem_reduce(P, A.unit);
    std::vector<Elem> rad;
    for (uint64_t xi = 0; xi < n; ++xi) {
        Elem x = index_elem(P, xi);
        bool ok = true;
        for (uint64_t ri = 0; ri < n && ok; ++ri) {
            Elem y = elem_sub(P, one, A.mul(index_elem(P, ri), x));
            if (!unitv[elem_index(P, y)]) ok = false;
        }
        if (ok) rad.push_back(x);
    }
    return canonical_submodule(P, rows_from_elems(A.mod, rad, P.rank()));
}

ZmMat radical_submodule(const AModule& M) {
    ZmMat rad = radical_ideal(*M.A);
    std::vector<Elem> gens;
    for (size_t r = 0; r < rad.rows; ++r) {
        Elem x = elem_reduce(M.A->pres(), rad.row(r));
        ZmMat ax = M.action_of(x);
        for (size_t j = 0; j < M.rank(); ++j) gens.push_back(elem_reduce(M.pres, ax.col(j)));
    }
    return canonical_submodule(M.pres, rows_from_elems(M.pres.mod, gens, M.pres.rank()));
}

QuotModule radical_quotient(const AModule& M) { return a_quotient(M, radical_submodule(M)); }

namespace {

// algebra element of each additive basis vector of A·e (via its inclusion)
struct IdealComponent {
    SubModule sm;
    ZmMat embed;  // A.rank x comp rank
    Elem gen;     // coords of e inside the component
};

IdealComponent ideal_component(const AModule& reg, const Elem& e) {
    ZmMat row(reg.pres.mod, 1, reg.rank());
    for (size_t c = 0; c < reg.rank(); ++c) row.at(0, c) = e[c];
    SubModule sm = a_submodule(reg, row);
    auto co = solve_in_presentation(sm.incl.add(), elem_reduce(reg.pres, e));
    if (!co) throw ComputeError("cover: idempotent missing from its ideal");
    return IdealComponent{sm, sm.incl.a, *co};
}

} // namespace

Cover projective_cover(const AModule& M) {
    AlgebraPtr A = M.A;
    AModule reg = regular_module(A);
    AdditivePresentation AP = A->pres();
    QuotModule mbar = radical_quotient(M);
    uint64_t nbar = mbar.Q.card();
    if (nbar > enum_cap()) throw ComputeError("cover: radical quotient too large");

    // greedy generators: for each idempotent e, extend the generated submodule
    // by elements of e·(M/rad M) until it contains all of them
    std::vector<std::pair<size_t, Elem>> chosen; // (idempotent index, lift in M)
    std::vector<Elem> picked_bar;
    ZmMat span(M.pres.mod, 0, mbar.Q.rank());
    span = canonical_submodule(mbar.Q.pres, span);
    for (size_t k = 0; k < A->idempotents.size(); ++k) {
        const Elem& e = A->idempotents[k];
        while (true) {
            bool found = false;
            for (uint64_t idx = 1; idx < nbar; ++idx) {
                Elem v = mbar.Q.act_elem(e, index_elem(mbar.Q.pres, idx));
                if (elem_is_zero(v) || in_row_span(span, v)) continue;
                picked_bar.push_back(v);
                span = a_submodule_closure(mbar.Q, rows_from_elems(M.pres.mod, picked_bar, mbar.Q.rank()));
                Elem lift = section_apply({mbar.Q.pres, mbar.proj.add(), mbar.section}, M.pres, v);
                chosen.push_back({k, M.act_elem(e, lift)});
                found = true;
                break;
            }
            if (!found) break;
        }
    }

    if (chosen.empty()) {
        AModule Z = zero_module(A);
        ProjModule P{Z, {}, {}, {}, {}};
        return Cover{P, AHom(Z, M, ZmMat(M.pres.mod, M.rank(), 0))};
    }

    std::vector<AModule> comps;
    std::vector<IdealComponent> ics;
    for (auto& [k, w] : chosen) {
        ics.push_back(ideal_component(reg, A->idempotents[k]));
        comps.push_back(ics.back().sm.S);
    }
    ModDirectSum ds = mod_direct_sum(comps);
    ProjModule P{ds.sum, {}, {}, {}, {}};
    ZmMat onto(M.pres.mod, M.rank(), ds.sum.rank());
    size_t off = 0;
    for (size_t c = 0; c < chosen.size(); ++c) {
        P.idem.push_back(chosen[c].first);
        P.embed.push_back(ics[c].embed);
        P.offset.push_back(off);
        Elem gen(ds.sum.rank(), 0);
        for (size_t t = 0; t < comps[c].rank(); ++t) gen[off + t] = ics[c].gen[t];
        P.gens.push_back(gen);
        // column off+t of the cover map: (basis element of A·e) · w_c
        for (size_t t = 0; t < comps[c].rank(); ++t) {
            Elem at = elem_reduce(AP, ics[c].embed.col(t));
            Elem y = M.act_elem(at, chosen[c].second);
            for (size_t r = 0; r < M.rank(); ++r) onto.at(r, off + t) = y[r];
        }
        off += comps[c].rank();
    }
    AHom phi(ds.sum, M, std::move(onto));
    if (!is_surjective(phi.add())) throw ComputeError("cover: constructed map is not surjective");
    ZmMat ker = kernel_generators(phi.add());
    ZmMat radp = radical_submodule(ds.sum);
    for (size_t r = 0; r < ker.rows; ++r)
        if (!in_row_span(radp, elem_reduce(ds.sum.pres, ker.row(r))))
            throw ComputeError("cover: kernel not inside the radical");
    return Cover{P, phi};
}

AHom lift_through_epi(const ProjModule& P, const AHom& f, const AHom& g) {
    if (!(f.src == P.mod)) throw ValidationError("lift: projective structure mismatch");
    if (!(g.dst == f.dst)) throw ValidationError("lift: targets differ");
    const AModule& Mid = g.src;
    ZmMat h(P.mod.pres.mod, Mid.rank(), P.mod.rank());
    for (size_t c = 0; c < P.idem.size(); ++c) {
        Elem y = f(P.gens[c]);
        auto x = solve_in_presentation(g.add(), y);
        if (!x) throw ComputeError("lift: map is not surjective onto the needed image");
        Elem w = Mid.act_elem(P.mod.A->idempotents[P.idem[c]], *x);
        size_t crank = P.embed[c].cols;
        for (size_t t = 0; t < crank; ++t) {
            Elem at = elem_reduce(P.mod.A->pres(), P.embed[c].col(t));
            Elem z = Mid.act_elem(at, w);
            for (size_t r = 0; r < Mid.rank(); ++r) h.at(r, P.offset[c] + t) = z[r];
        }
    }
    AHom out(P.mod, Mid, std::move(h));
    if (!(a_compose(g, out) == f)) throw ComputeError("lift: composite does not match");
    return out;
}

AModule dual_module(const AModule& M) {
    AlgebraPtr op = std::make_shared<FinAlgebra>(M.A->opposite());
    uint64_t m = M.pres.mod;
    const auto& d = M.pres.orders;
    std::vector<ZmMat> act;
    for (size_t b = 0; b < M.A->rank; ++b) {
        ZmMat s(m, M.rank(), M.rank());
        for (size_t l = 0; l < M.rank(); ++l)
            for (size_t j = 0; j < M.rank(); ++j) {
                uint64_t v = mulmod(m / d[j], M.act[b].at(j, l), m);
                s.at(l, j) = (v / (m / d[l])) % d[l];
            }
        act.push_back(std::move(s));
    }
    return AModule(op, M.pres, std::move(act));
}

AHom dual_hom(const AHom& f) {
    AModule DN = dual_module(f.dst), DM = dual_module(f.src);
    uint64_t m = f.src.pres.mod;
    const auto& dn = f.dst.pres.orders;
    const auto& dm = f.src.pres.orders;
    ZmMat a(m, f.src.rank(), f.dst.rank());
    for (size_t j = 0; j < f.src.rank(); ++j)
        for (size_t i = 0; i < f.dst.rank(); ++i) {
            uint64_t v = mulmod(m / dn[i], f.a.at(i, j), m);
            a.at(j, i) = (v / (m / dm[j])) % dm[j];
        }
    return AHom(DN, DM, std::move(a));
}

std::vector<ZmMat> all_left_ideals(const FinAlgebra& A) {
    AlgebraPtr ptr = std::make_shared<FinAlgebra>(A);
    AModule reg = regular_module(ptr);
    AdditivePresentation P = A.pres();
    uint64_t n = P.card();
    if (n > enum_cap()) throw ComputeError("ideals: algebra too large to enumerate");
    std::map<std::vector<uint64_t>, ZmMat> seen;
    std::vector<ZmMat> work;
    for (uint64_t i = 0; i < n; ++i) {
        ZmMat row(A.mod, 1, P.rank());
        Elem x = index_elem(P, i);
        for (size_t c = 0; c < P.rank(); ++c) row.at(0, c) = x[c];
        ZmMat I = a_submodule_closure(reg, row);
        auto key = mat_key(I);
        if (!seen.count(key)) {
            seen.emplace(key, I);
            work.push_back(I);
        }
    }
    // close under sums
    for (size_t a = 0; a < work.size(); ++a)
        for (size_t b = 0; b < a; ++b) {
            ZmMat J = submodule_sum(P, work[a], work[b]);
            auto key = mat_key(J);
            if (!seen.count(key)) {
                seen.emplace(key, J);
                work.push_back(J);
                if (work.size() > 4096) throw ComputeError("ideals: too many left ideals");
            }
        }
    std::vector<ZmMat> out;
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

namespace {

// surjectivity of restriction Hom(A,T) -> Hom(I,T) for a left ideal I
bool restriction_surjective(const AModule& reg, const AModule& T, const ZmMat& ideal) {
    SubModule sm = a_submodule(reg, ideal);
    AHomSpace from_a = hom_space(reg, T);
    AHomSpace from_i = hom_space(sm.S, T);
    ZmMat res(reg.pres.mod, from_i.coords.rank(), from_a.coords.rank());
    for (size_t s = 0; s < from_a.coords.rank(); ++s) {
        Elem es(from_a.coords.rank(), 0);
        es[s] = 1;
        AHom f = from_a.from_coords(es);
        Elem co = from_i.to_coords(a_compose(f, sm.incl));
        for (size_t r = 0; r < co.size(); ++r) res.at(r, s) = co[r];
    }
    AddMap rmap(from_a.coords, from_i.coords, std::move(res));
    return is_surjective(rmap);
}

} // namespace

QfReport quasi_frobenius_check(const FinAlgebra& A) {
    AlgebraPtr ptr = std::make_shared<FinAlgebra>(A);
    AModule reg = regular_module(ptr);
    for (const ZmMat& I : all_left_ideals(A))
        if (!restriction_surjective(reg, reg, I)) return QfReport{false, I};
    return QfReport{true, ZmMat(A.mod, 0, 0)};
}

bool is_injective_module(const AModule& M) {
    AModule reg = regular_module(M.A);
    for (const ZmMat& I : all_left_ideals(*M.A))
        if (!restriction_surjective(reg, M, I)) return false;
    return true;
}

std::optional<AHom> find_isomorphism(const AModule& M, const AModule& N) {
    if (M.card() != N.card()) return std::nullopt;
    auto so = M.pres.orders, to = N.pres.orders;
    std::sort(so.begin(), so.end());
    std::sort(to.begin(), to.end());
    if (so != to) return std::nullopt;
    AHomSpace hs = hom_space(M, N);
    uint64_t n = hs.coords.card();
    if (n > enum_cap()) throw ComputeError("iso search: hom space too large");
    for (uint64_t i = 0; i < n; ++i) {
        AHom f = hs.from_coords(index_elem(hs.coords, i));
        if (is_isomorphism(f.add())) return f;
    }
    return std::nullopt;
}

bool is_isomorphic(const AModule& M, const AModule& N) { return find_isomorphism(M, N).has_value(); }

std::vector<AModule> simple_modules(const FinAlgebra& A, AlgebraPtr ptr) {
    AModule reg = regular_module(ptr);
    std::vector<AModule> out;
    for (const Elem& e : A.idempotents) {
        ZmMat row(A.mod, 1, A.rank);
        for (size_t c = 0; c < A.rank; ++c) row.at(0, c) = e[c] % A.orders[c];
        SubModule pe = a_submodule(reg, row);
        out.push_back(radical_quotient(pe.S).Q);
    }
    return out;
}

namespace {

// solve cond∘u = rhs where cond(u) = compose u with fixed map on the given side
std::optional<AHom> solve_one_sided(const AModule& usrc, const AModule& udst, const AHom& fixed,
                                    bool fixed_on_right, const AHom& rhs) {
    AHomSpace us = hom_space(usrc, udst);
    AHomSpace cs = hom_space(rhs.src, rhs.dst);
    ZmMat T(us.coords.mod, cs.coords.rank(), us.coords.rank());
    for (size_t t = 0; t < us.coords.rank(); ++t) {
        Elem e = elem_zero(us.coords);
        e[t] = 1;
        AHom u = us.from_coords(e);
        AHom c = fixed_on_right ? a_compose(u, fixed) : a_compose(fixed, u);
        Elem col = cs.to_coords(c);
        for (size_t r = 0; r < T.rows; ++r) T.at(r, t) = col[r];
    }
    AddMap cond(us.coords, cs.coords, std::move(T));
    auto sol = solve_in_presentation(cond, cs.to_coords(rhs));
    if (!sol) return std::nullopt;
    return us.from_coords(*sol);
}

} // namespace

std::optional<AHom> module_retraction(const AHom& i) {
    return solve_one_sided(i.dst, i.src, i, true, a_identity(i.src));
}

std::optional<AHom> module_section(const AHom& p) {
    return solve_one_sided(p.dst, p.src, p, false, a_identity(p.dst));
}

bool is_projective_module(const AModule& M) {
    return is_isomorphism(projective_cover(M).onto.add());
}

AHom a_corestrict(const AHom& f, const SubModule& S) {
    ZmMat m(f.src.pres.mod, S.S.rank(), f.src.rank());
    for (size_t k = 0; k < f.src.rank(); ++k) {
        Elem e = elem_zero(f.src.pres);
        e[k] = 1;
        auto w = solve_in_presentation(S.incl.add(), f(e));
        if (!w) throw ComputeError("corestrict: image escapes the submodule");
        for (size_t r = 0; r < m.rows; ++r) m.at(r, k) = (*w)[r];
    }
    return AHom(f.src, S.S, std::move(m));
}

AHom a_factor_left(const AHom& j, const AHom& f) {
    ZmMat m(f.src.pres.mod, j.src.rank(), f.src.rank());
    for (size_t k = 0; k < f.src.rank(); ++k) {
        Elem e = elem_zero(f.src.pres);
        e[k] = 1;
        auto w = solve_in_presentation(j.add(), f(e));
        if (!w) throw ComputeError("factor: image escapes the target factor");
        for (size_t r = 0; r < m.rows; ++r) m.at(r, k) = (*w)[r];
    }
    return AHom(f.src, j.src, std::move(m));
}

std::optional<AHom> a_solve_right_factor(const AHom& fixed, const AModule& T, const AHom& rhs) {
    return solve_one_sided(fixed.dst, T, fixed, true, rhs);
}

namespace {

// columns of jx and jy side by side, out of the coordinate sum of their sources
AddMap joint_map(const AHom& jx, const AHom& jy) {
    const AModule& E = jx.dst;
    size_t rx = jx.src.rank(), ry = jy.src.rank();
    std::vector<uint64_t> ords = jx.src.pres.orders;
    ords.insert(ords.end(), jy.src.pres.orders.begin(), jy.src.pres.orders.end());
    ZmMat J(E.pres.mod, E.rank(), rx + ry);
    for (size_t r = 0; r < J.rows; ++r) {
        for (size_t c = 0; c < rx; ++c) J.at(r, c) = jx.a.at(r, c);
        for (size_t c = 0; c < ry; ++c) J.at(r, rx + c) = jy.a.at(r, c);
    }
    return AddMap(AdditivePresentation(E.pres.mod, std::move(ords)), E.pres, std::move(J));
}

} // namespace

AHom a_factor_joint(const AHom& jx, const AHom& jy, const AHom& ax, const AHom& ay) {
    const AModule& E = jx.dst;
    const AModule& T = ax.dst;
    AddMap j = joint_map(jx, jy);
    size_t rx = jx.src.rank();
    ZmMat t(T.pres.mod, T.rank(), E.rank());
    for (size_t k = 0; k < E.rank(); ++k) {
        Elem e = elem_zero(E.pres);
        e[k] = 1;
        auto v = solve_in_presentation(j, e);
        if (!v) throw ComputeError("factor: maps are not jointly surjective");
        Elem vx(v->begin(), v->begin() + (ptrdiff_t)rx);
        Elem vy(v->begin() + (ptrdiff_t)rx, v->end());
        Elem out = elem_add(T.pres, ax(vx), ay(vy));
        for (size_t r = 0; r < t.rows; ++r) t.at(r, k) = out[r];
    }
    return AHom(E, T, std::move(t));
}

AddMap hom_precompose(const AHomSpace& us, const AHomSpace& cs, const AHom& fixed) {
    ZmMat D(us.coords.mod, cs.coords.rank(), us.coords.rank());
    for (size_t t = 0; t < us.coords.rank(); ++t) {
        Elem e = elem_zero(us.coords);
        e[t] = 1;
        Elem col = cs.to_coords(a_compose(us.from_coords(e), fixed));
        for (size_t r = 0; r < D.rows; ++r) D.at(r, t) = col[r];
    }
    return AddMap(us.coords, cs.coords, std::move(D));
}

AddMap hom_postcompose(const AHomSpace& us, const AHomSpace& cs, const AHom& fixed) {
    ZmMat D(us.coords.mod, cs.coords.rank(), us.coords.rank());
    for (size_t t = 0; t < us.coords.rank(); ++t) {
        Elem e = elem_zero(us.coords);
        e[t] = 1;
        Elem col = cs.to_coords(a_compose(fixed, us.from_coords(e)));
        for (size_t r = 0; r < D.rows; ++r) D.at(r, t) = col[r];
    }
    return AddMap(us.coords, cs.coords, std::move(D));
}

AHom a_inverse(const AHom& f) {
    if (!is_isomorphism(f.add())) throw ValidationError("inverse: map is not an isomorphism");
    ZmMat m(f.src.pres.mod, f.src.rank(), f.dst.rank());
    for (size_t k = 0; k < f.dst.rank(); ++k) {
        Elem e = elem_zero(f.dst.pres);
        e[k] = 1;
        Elem w = *solve_in_presentation(f.add(), e);
        for (size_t r = 0; r < m.rows; ++r) m.at(r, k) = w[r];
    }
    return AHom(f.dst, f.src, std::move(m));
}

} // namespace dlab
