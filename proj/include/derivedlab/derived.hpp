#pragma once

#include "derivedlab/resolution.hpp"
#include "derivedlab/subcat.hpp"

#include <climits>

namespace dlab {

// chain map dh + hd attached to a homotopy
ChainMap homotopy_boundary(const Homotopy& h);

// cohomology comparison restricted to degrees > cut
bool is_quasi_iso_above(const ChainMap& f, int cut);

// morphism X -> Y in the derived category: s is a quasi-isomorphism, verified
// on construction in degrees above valid_above (everywhere by default)
struct RoofMorphism {
    Complex apex;
    ChainMap s, f;
    int valid_above;

    RoofMorphism(Complex apex_, ChainMap s_, ChainMap f_, int valid_above_ = INT_MIN);
};

// replacement by a complex of projectives
enum class HProjKind { BoundedAbove, FiniteGldim };
struct HProj {
    Complex P;
    ChainMap qi; // P -> C
    bool global;     // quasi-iso verified in every degree
    int valid_above; // else verified in degrees > valid_above only
};
HProj hproj_replace(const Complex& C, HProjKind kind, int depth);

// t: P -> s.src with s∘t homotopic to f, solved on homotopy classes; always
// succeeds when P is a bounded complex of projectives and s a quasi-iso
ChainMap lift_through_quasi_iso(const Complex& P, const ChainMap& s, const ChainMap& f);

// chain maps C -> D modulo the null-homotopic ones
struct HomotopyClasses {
    ChainMapSpace cms;
    QuotPres cls;

    uint64_t card() const { return cls.Q.card(); }
    Elem class_of(const ChainMap& f) const;
    ChainMap rep_of(const Elem& c) const;
};
HomotopyClasses hom_K(const Complex& C, const Complex& D);

// Hom in the derived category out of a bounded complex, computed at the given
// replacement depth; `stable` reports whether depth+1 gives the same count.
struct HomD {
    Complex X, Y;
    HProj hp;
    HomotopyClasses hk; // classes of chain maps hp.P -> Y
    bool stable = true;

    uint64_t card() const { return hk.card(); }
    Elem class_of(const ChainMap& f) const { return hk.class_of(f); }
    RoofMorphism roof_of(const Elem& c) const;
    // class of an arbitrary roof X -> Y: lift hp.qi through the backward leg
    // up to homotopy, then push the forward leg
    Elem class_of_roof(const RoofMorphism& r) const;
};
HomD hom_D(const Complex& X, const Complex& Y, int depth);

struct Replaced {
    Complex L;
    ChainMap qi; // L -> C
};
// quasi-isomorphic replacement with all terms in the subcategory; terms above
// degree N must already be members, as must every cohomology object
Replaced replace_in_subcategory(const Complex& C, const SubcategorySpec& U, int N,
                                bool subcomplex_mode = false);

struct CoReplaced {
    Complex L;
    ChainMap qi; // C -> L
};
CoReplaced coreplace_in_subcategory(const Complex& C, const SubcategorySpec& U, int N);

// build L in the subcategory isomorphic to M in the derived category, from
// replacements of the truncations of M; d bounds the inner resolution length
struct Realized {
    Complex L;
    RoofMorphism roof; // apex T, s: T -> L, f: T -> M, both quasi-isos
};
Realized realize_from_truncations(const Complex& M, const SubcategorySpec& U, int d);

} // namespace dlab
