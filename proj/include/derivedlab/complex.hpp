#pragma once

#include "algebra.hpp"

#include <map>

namespace dlab {

// Cochain complex supported on [lo, lo+terms.size()-1]; zero outside.
struct Complex {
    AlgebraPtr A;
    int lo = 0;
    std::vector<AModule> terms;
    std::vector<AHom> diffs; // diffs[i]: terms[i] -> terms[i+1]

    Complex(AlgebraPtr alg, int low, std::vector<AModule> t, std::vector<AHom> d);
    static Complex zero(AlgebraPtr alg);
    static Complex single(const AModule& M, int deg);
    static Complex from_maps(int low, const std::vector<AHom>& maps); // consecutive diffs

    int hi() const { return lo + (int)terms.size() - 1; }
    bool in_window(int n) const { return n >= lo && n <= hi(); }
    AModule term(int n) const;
    AHom diff(int n) const; // term(n) -> term(n+1)
    Complex trimmed() const; // drop zero modules at both ends
    bool is_zero_complex() const;
    bool operator==(const Complex& o) const;
};

struct ChainMap {
    Complex src, dst;
    int lo = 0;
    std::vector<AHom> comps; // component at degree lo+i

    ChainMap(Complex s, Complex d, int low, std::vector<AHom> cs);
    AHom comp(int n) const;
    bool is_zero() const;
    bool operator==(const ChainMap& o) const;
};

ChainMap chain_identity(const Complex& C);
ChainMap chain_zero(const Complex& C, const Complex& D);
ChainMap chain_compose(const ChainMap& g, const ChainMap& f);
ChainMap chain_add(const ChainMap& f, const ChainMap& g);
ChainMap chain_sub(const ChainMap& f, const ChainMap& g);
ChainMap chain_neg(const ChainMap& f);
// assemble from explicit components (degree -> AHom); zero elsewhere
ChainMap chain_map_from(const Complex& C, const Complex& D, const std::map<int, AHom>& comps);

// h^n: src^n -> dst^{n-1}
struct Homotopy {
    Complex src, dst;
    int lo = 0;
    std::vector<AHom> comps;
    AHom comp(int n) const;
};

Complex shift_complex(const Complex& C, int k); // (Σ^k C)^n = C^{n+k}, d scaled by (-1)^k
ChainMap shift_chain_map(const ChainMap& f, int k);

struct ComplexSum {
    Complex sum;
    std::vector<ChainMap> incl, proj;
};
ComplexSum complex_direct_sum(const std::vector<Complex>& parts);

struct ConeData {
    Complex cone;        // Cone(f)^n = X^{n+1} ⊕ Y^n
    ChainMap incl_dst;   // Y -> Cone
    ChainMap proj_shift; // Cone -> ΣX
};
ConeData cone(const ChainMap& f);

// degreewise short exact sequence of complexes
struct ComplexSES {
    ChainMap i, p;
};
ComplexSES make_ses(const ChainMap& i, const ChainMap& p); // validates exactness
Complex tot_ses(const ComplexSES& s); // K^{n+1} ⊕ L^n ⊕ M^{n-1}

struct CohomologyAt {
    AModule H;
    SubModule cycles; // Z^n ⊆ C^n
    QuotModule hq;    // cycles.S ↠ H
    int deg = 0;
};
CohomologyAt cohomology_at(const Complex& C, int n);
Elem cohomology_class_of(const CohomologyAt& hc, const Elem& cycle_in_term); // term coords -> H
Elem representative_of(const CohomologyAt& hc, const Elem& hclass);          // H -> term coords
std::map<int, uint64_t> cohomology_cards(const Complex& C);
bool is_acyclic(const Complex& C);
AHom induced_map(const ChainMap& f, const CohomologyAt& hc, const CohomologyAt& hd);
bool is_quasi_iso(const ChainMap& f);

struct TruncAbove {
    Complex C;
    ChainMap incl; // τ_{≤n}C -> C
};
TruncAbove truncate_above(const Complex& C, int n);
struct TruncBelow {
    Complex C;
    ChainMap proj; // C -> τ_{≥n}C
};
TruncBelow truncate_below(const Complex& C, int n);

// A-linear chain maps C -> D as an additive presentation
struct ChainMapSpace {
    Complex C, D;
    int lo = 0;                    // base degree of component slots
    std::vector<AHomSpace> spaces; // Hom_A(C^n, D^n) per slot
    AdditivePresentation coords;
    AddMap incl;        // coords -> ⊕ slot coords
    DirectSum comp_sum; // of the slot coordinate presentations

    ChainMap from_coords(const Elem& t) const;
    Elem to_coords(const ChainMap& f) const;
};
ChainMapSpace chain_map_space(const Complex& C, const Complex& D);

std::optional<Homotopy> homotopy_solve(const ChainMap& f, const ChainMap& g);
bool is_contractible(const Complex& C);
bool chain_homotopic(const ChainMap& f, const ChainMap& g);
std::optional<ChainMap> split_mono_retraction(const ChainMap& i); // r with r∘i = id

std::pair<uint64_t, uint64_t> euler_char(const Complex& C); // reduced fraction

struct SubComplexData {
    Complex S;
    ChainMap incl;
};
// gens[n] rows span a d-stable graded submodule
SubComplexData subcomplex_from(const Complex& C, const std::map<int, ZmMat>& gens);
struct QuotComplexData {
    Complex Q;
    ChainMap proj;
};
QuotComplexData quotient_complex(const Complex& C, const std::map<int, ZmMat>& gens);

} // namespace dlab
