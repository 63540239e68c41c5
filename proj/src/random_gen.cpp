#include "derivedlab/random_gen.hpp"

namespace dlab {

Elem rand_elem(const AdditivePresentation& P, Rng& rng) {
    Elem e(P.rank(), 0);
    for (size_t i = 0; i < P.rank(); ++i)
        e[i] = std::uniform_int_distribution<uint64_t>(0, P.orders[i] - 1)(rng);
    return e;
}

ZmMat rand_rows(const AdditivePresentation& P, size_t n, Rng& rng) {
    ZmMat G(P.mod, n, P.rank());
    for (size_t r = 0; r < n; ++r) {
        Elem e = rand_elem(P, rng);
        for (size_t c = 0; c < P.rank(); ++c) G.at(r, c) = e[c];
    }
    return G;
}

AModule rand_module(AlgebraPtr A, Rng& rng, size_t free_rank) {
    AModule F = free_module(A, free_rank);
    SubModule S = a_submodule(F, rand_rows(F.pres, 1 + rng() % 2, rng));
    return a_quotient(S.S, rand_rows(S.S.pres, 1, rng)).Q;
}

AHom rand_hom(const AModule& M, const AModule& N, Rng& rng) {
    AHomSpace hs = hom_space(M, N);
    return hs.from_coords(rand_elem(hs.coords, rng));
}

Complex rand_complex(AlgebraPtr A, Rng& rng, int lo, size_t len, size_t free_rank) {
    std::vector<AModule> terms;
    for (size_t i = 0; i < len; ++i) terms.push_back(rand_module(A, rng, free_rank));
    std::vector<AHom> diffs;
    for (size_t i = 0; i + 1 < len; ++i) {
        AHomSpace hs = hom_space(terms[i], terms[i + 1]);
        if (i == 0) {
            diffs.push_back(hs.from_coords(rand_elem(hs.coords, rng)));
            continue;
        }
        // sample inside { f : f ∘ d_prev = 0 }
        AHomSpace prev = hom_space(terms[i - 1], terms[i + 1]);
        ZmMat K = kernel_generators(hom_precompose(hs, prev, diffs.back()));
        Elem coord = elem_zero(hs.coords);
        for (size_t r = 0; r < K.rows; ++r) {
            uint64_t c = rng() % hs.coords.mod;
            Elem row = mat_row(K, r);
            coord = elem_add(hs.coords, coord, elem_scal(hs.coords, c, row));
        }
        diffs.push_back(hs.from_coords(coord));
    }
    return Complex(A, lo, std::move(terms), std::move(diffs));
}

Complex rand_acyclic_complex(AlgebraPtr A, Rng& rng, size_t pieces) {
    std::vector<Complex> parts;
    for (size_t i = 0; i < pieces; ++i) {
        int deg = (int)(rng() % 4) - 2;
        if (rng() % 2 == 0) {
            AModule W = rand_module(A, rng);
            parts.push_back(Complex(A, deg, {W, W}, {a_identity(W)}));
        } else {
            AModule M = rand_module(A, rng);
            SubModule S = a_submodule(M, rand_rows(M.pres, 1, rng));
            QuotModule Q = a_cokernel(S.incl);
            ChainMap ic = chain_map_from(Complex::single(S.S, deg), Complex::single(M, deg),
                                         {{deg, S.incl}});
            ChainMap pc = chain_map_from(Complex::single(M, deg), Complex::single(Q.Q, deg),
                                         {{deg, Q.proj}});
            parts.push_back(tot_ses(make_ses(ic, pc)));
        }
    }
    return complex_direct_sum(parts).sum;
}

Homotopy rand_homotopy(const Complex& C, const Complex& D, Rng& rng) {
    int lo = C.lo;
    std::vector<AHom> comps;
    for (int n = lo; n <= C.hi(); ++n) comps.push_back(rand_hom(C.term(n), D.term(n - 1), rng));
    return Homotopy{C, D, lo, std::move(comps)};
}

} // namespace dlab
