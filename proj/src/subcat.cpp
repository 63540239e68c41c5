#include "derivedlab/subcat.hpp"

#include "derivedlab/resolution.hpp"

namespace dlab {

AModule UModel::to_inner(const AModule& M) const {
    std::vector<ZmMat> act;
    for (size_t j = 0; j < B->rank; ++j) act.push_back(M.action_of(mat_row(basis, j)));
    return AModule(B, M.pres, std::move(act));
}

AModule UModel::from_inner(const AModule& Mb) const {
    std::vector<ZmMat> act;
    for (size_t i = 0; i < A->rank; ++i) {
        Elem bi(A->rank, 0);
        bi[i] = 1;
        // action through A -> B, a |-> eae
        Elem im = A->mul(A->mul(mat_row(basis, basis.rows - 1), bi), mat_row(basis, basis.rows - 1));
        auto c = solve_in_presentation(basis_incl, im);
        if (!c) throw ComputeError("model: projected element escapes the inner algebra");
        ZmMat m = ZmMat(Mb.pres.mod, Mb.rank(), Mb.rank());
        for (size_t j = 0; j < B->rank; ++j) {
            const ZmMat& aj = Mb.act[j];
            for (size_t r = 0; r < m.rows; ++r)
                for (size_t cc = 0; cc < m.cols; ++cc)
                    m.at(r, cc) =
                        (m.at(r, cc) + mulmod((*c)[j], aj.at(r, cc), Mb.pres.mod)) % Mb.pres.mod;
        }
        act.push_back(std::move(m));
    }
    return AModule(A, Mb.pres, std::move(act));
}

AHom UModel::to_inner_hom(const AHom& f) const {
    return AHom(to_inner(f.src), to_inner(f.dst), f.a);
}

AHom UModel::from_inner_hom(const AHom& f) const {
    return AHom(from_inner(f.src), from_inner(f.dst), f.a);
}

namespace {

// smallest natural cover: the submodule generated by e-multiples of
// preimages of the target's generators (e = unit recovers plain preimages)
AHom preimage_cover(const AHom& a, const Elem& e) {
    const AModule& S = a.src;
    const AModule& T = a.dst;
    std::vector<Elem> rows;
    for (size_t g = 0; g < T.rank(); ++g) {
        if (T.pres.orders[g] == 1) continue;
        Elem t = elem_zero(T.pres);
        t[g] = 1;
        auto x = solve_in_presentation(a.add(), t);
        if (!x) throw CoverFailure("cover: map is not surjective");
        rows.push_back(S.act_elem(e, *x));
    }
    ZmMat G(S.pres.mod, rows.size(), S.rank());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < S.rank(); ++c) G.at(r, c) = rows[r][c];
    return a_submodule(S, G).incl;
}

std::shared_ptr<const UModel> build_model(AlgebraPtr A, const Elem& e) {
    AModule R = regular_module(A);
    ZmMat gen(A->mod, 1, A->rank);
    for (size_t c = 0; c < A->rank; ++c) gen.at(0, c) = e[c];
    SubPres sp = submodule_from_generators(R.pres, a_submodule_closure(R, gen));
    size_t n = sp.S.rank();
    ZmMat basis(A->mod, n + 1, A->rank);
    for (size_t j = 0; j < n; ++j) {
        Elem unit = elem_zero(sp.S);
        unit[j] = 1;
        Elem bj = sp.incl(unit);
        for (size_t c = 0; c < A->rank; ++c) basis.at(j, c) = bj[c];
    }
    // keep e itself as the last row; from_inner uses it for the projection a |-> eae
    for (size_t c = 0; c < A->rank; ++c) basis.at(n, c) = e[c];
    std::vector<ZmMat> mult;
    for (size_t i = 0; i < n; ++i) {
        ZmMat t(A->mod, n, n);
        for (size_t j = 0; j < n; ++j) {
            Elem p = A->mul(mat_row(basis, i), mat_row(basis, j));
            auto c = solve_in_presentation(sp.incl, p);
            if (!c) throw ComputeError("model: basis product escapes the span");
            for (size_t r = 0; r < n; ++r) t.at(r, j) = (*c)[r];
        }
        mult.push_back(std::move(t));
    }
    auto eu = solve_in_presentation(sp.incl, e);
    if (!eu) throw ComputeError("model: idempotent escapes its own span");
    auto B = std::make_shared<const FinAlgebra>(A->mod, sp.S.orders, std::move(mult), *eu,
                                                std::vector<Elem>{}, A->name + "@e");
    return std::make_shared<UModel>(UModel{A, B, std::move(basis), sp.incl});
}

} // namespace

SubcategorySpec subcat_everything(AlgebraPtr A) {
    SubcategorySpec U;
    U.A = A;
    U.name = "everything";
    U.member = [](const AModule&) { return true; };
    Elem one = A->unit;
    U.cover = [one](const AHom& a) { return preimage_cover(a, one); };
    U.mono_covers = true;
    U.cocover = [](const AHom& m) { return a_identity(m.dst); };
    U.sample = [A](Rng& rng) { return rand_module(A, rng); };
    U.model = build_model(A, A->unit);
    return U;
}

SubcategorySpec subcat_idempotent_local(AlgebraPtr A, const Elem& e) {
    AdditivePresentation P = A->pres();
    Elem ee = elem_reduce(P, e);
    if (elem_reduce(P, A->mul(ee, ee)) != ee)
        throw ValidationError("subcategory: element is not idempotent");
    Elem co = elem_sub(P, A->unit, ee);
    for (size_t i = 0; i < A->rank; ++i) {
        Elem bi(A->rank, 0);
        bi[i] = 1;
        if (!elem_is_zero(elem_reduce(P, A->mul(co, A->mul(bi, ee)))))
            throw ValidationError("subcategory: (1-e)Ae is nonzero");
    }
    SubcategorySpec U;
    U.A = A;
    U.name = "idempotent_local";
    U.member = [co](const AModule& M) { return M.action_of(co).is_zero(); };
    U.cover = [ee](const AHom& a) { return preimage_cover(a, ee); };
    U.mono_covers = true;
    U.cocover = [co](const AHom& m) {
        const AModule& S = m.dst;
        ZmMat rows(S.pres.mod, S.rank(), S.rank());
        for (size_t g = 0; g < S.rank(); ++g) {
            Elem unit = elem_zero(S.pres);
            unit[g] = 1;
            Elem v = S.act_elem(co, unit);
            for (size_t c = 0; c < S.rank(); ++c) rows.at(g, c) = v[c];
        }
        return a_quotient(S, rows).proj;
    };
    U.sample = [A, ee](Rng& rng) {
        AModule M = rand_module(A, rng);
        ZmMat rows(M.pres.mod, M.rank(), M.rank());
        for (size_t g = 0; g < M.rank(); ++g) {
            Elem unit = elem_zero(M.pres);
            unit[g] = 1;
            Elem v = M.act_elem(ee, unit);
            for (size_t c = 0; c < M.rank(); ++c) rows.at(g, c) = v[c];
        }
        return a_submodule(M, rows).S;
    };
    U.model = build_model(A, ee);
    return U;
}

SubcategorySpec subcat_zero(AlgebraPtr A) {
    SubcategorySpec U;
    U.A = A;
    U.name = "zero";
    U.member = [](const AModule& M) { return M.card() == 1; };
    U.cover = [](const AHom& a) {
        ZmMat none(a.src.pres.mod, 0, a.src.rank());
        return a_submodule(a.src, none).incl;
    };
    U.mono_covers = true;
    U.sample = [A](Rng&) { return zero_module(A); };
    return U;
}

bool spot_check_closure(const SubcategorySpec& U, Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        AModule M = U.sample(rng);
        AModule N = U.sample(rng);
        if (!U.member(M) || !U.member(N)) return false;
        SubModule S = a_submodule(M, rand_rows(M.pres, 1, rng));
        if (!U.member(S.S)) return false;
        if (!U.member(a_cokernel(S.incl).Q)) return false;
        if (!U.member(mod_direct_sum({M, N}).sum)) return false;
        AHom f = rand_hom(M, N, rng);
        if (!U.member(a_kernel(f).S)) return false;
        if (!U.member(a_image(f).S)) return false;
        if (!U.member(a_cokernel(f).Q)) return false;
        Resolution R = minimal_projective_resolution(N, 2);
        ExtGroup E = ext_group(R, M, 1);
        if (E.card() > 1) {
            Elem cls = rand_elem(E.grp, rng);
            ModuleSES s = ext1_to_ses(R, E, cls);
            if (!U.member(s.i.dst)) return false;
        }
    }
    return true;
}

} // namespace dlab
