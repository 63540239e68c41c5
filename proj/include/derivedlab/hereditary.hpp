#pragma once

#include "derivedlab/derived.hpp"

namespace dlab {

struct NotHereditary : ComputeError {
    using ComputeError::ComputeError;
};

// global dimension ≤ 1; checked once per algebra (by value) and cached
bool is_hereditary(const FinAlgebra& A, AlgebraPtr ptr);

// bounded complex with vanishing differentials over a hereditary algebra;
// stored trimmed
struct ZeroDiffComplex {
    Complex C;

    AModule term(int n) const { return C.term(n); }
};
ZeroDiffComplex zero_diff(AlgebraPtr A, int lo, const std::vector<AModule>& terms);
ZeroDiffComplex zero_diff_from(const Complex& C);

// Ext¹(S,T) bundled with the resolution that fixes its coordinates, so that
// classes produced by different callers are comparable
struct Ext1At {
    Resolution R; // minimal resolution of S
    ExtGroup E;   // ext_group(R, T, 1)
};
Ext1At ext1_between(const AModule& S, const AModule& T);

// decomposition of M into its cohomology: Z^n = H^n(M) with zero
// differentials, linked to M through the middle complex mid^n = E^n ⊕ M^n,
// where 0 -> M^{n-1} -> E^n -> H^n(M) -> 0 realizes a lift of the cycle
// extension class through post-composition with d': M^{n-1} ->> B^n(M)
struct HereditaryDecomp {
    ZeroDiffComplex Z;
    Complex mid;
    ChainMap to_Z, to_M;          // quasi-isomorphisms out of mid
    std::map<int, ModuleSES> ext; // degree n: 0 -> M^{n-1} -> E^n -> H^n -> 0
    std::map<int, AHom> u;        // E^n -> M^n, landing in the cycles
    std::map<int, CohomologyAt> H;
};
HereditaryDecomp decompose_hereditary(const Complex& M);

// the two-sided datum of a derived-category morphism X -> Y between
// zero-differential complexes: g[n]: X^n -> Y^n and e[n] a class in
// Ext¹(X^n, Y^{n-1}) in ext1_between coordinates; keys run over the joint
// window [min lo, max hi + 1]
struct HomFormulaData {
    std::map<int, AHom> g;
    std::map<int, Elem> e;
};

HomFormulaData hom_formula_eval(const RoofMorphism& f, const ZeroDiffComplex& X,
                                const ZeroDiffComplex& Y);
RoofMorphism hom_formula_build(const ZeroDiffComplex& X, const ZeroDiffComplex& Y,
                               const std::map<int, AHom>& g, const std::map<int, Elem>& e);

// ∏_n |Hom(X^n,Y^n)| · ∏_n |Ext¹(X^n,Y^{n-1})|, the expected |hom_D(X,Y)|
uint64_t hom_formula_count(const ZeroDiffComplex& X, const ZeroDiffComplex& Y);

} // namespace dlab
