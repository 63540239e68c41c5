#pragma once

#include "additive.hpp"

#include <memory>
#include <string>

namespace dlab {

// Finite associative unital algebra over Z/mod. Basis element i has additive
// order orders[i]; mult[i] is the left-multiplication matrix of basis i
// (column j = coordinates of b_i * b_j). idempotents is a complete orthogonal
// family used for projective covers; defaults to {1}.
struct FinAlgebra {
    uint64_t mod = 2;
    size_t rank = 0;
    std::vector<uint64_t> orders;
    std::vector<ZmMat> mult;
    Elem unit;
    std::vector<Elem> idempotents;
    std::string name; // preset tag, informational

    FinAlgebra(uint64_t m, std::vector<uint64_t> ords, std::vector<ZmMat> mul_tbl, Elem one,
               std::vector<Elem> idem = {}, std::string nm = "");

    AdditivePresentation pres() const { return AdditivePresentation(mod, orders); }
    Elem mul(const Elem& x, const Elem& y) const;
    ZmMat left_mult(const Elem& x) const;  // rank x rank, column j = x * b_j
    ZmMat right_mult(const Elem& x) const; // column j = b_j * x
    bool is_unit_elem(const Elem& x) const;
    bool is_commutative() const;
    FinAlgebra opposite() const;
    bool operator==(const FinAlgebra& o) const;
};

using AlgebraPtr = std::shared_ptr<const FinAlgebra>;

// Left A-module: presentation plus action matrices, act[i] = action of basis i.
struct AModule {
    AlgebraPtr A;
    AdditivePresentation pres;
    std::vector<ZmMat> act;

    AModule(AlgebraPtr alg, AdditivePresentation p, std::vector<ZmMat> action);
    ZmMat action_of(const Elem& a) const; // matrix of x -> a*x
    Elem act_elem(const Elem& a, const Elem& x) const;
    uint64_t card() const { return pres.card(); }
    size_t rank() const { return pres.rank(); }
    bool operator==(const AModule& o) const;
};

AModule zero_module(AlgebraPtr A);
AModule regular_module(AlgebraPtr A); // A as left module over itself
AModule free_module(AlgebraPtr A, size_t n);

// A-linear map; constructor verifies commutation with the action.
struct AHom {
    AModule src, dst;
    ZmMat a;

    AHom(AModule s, AModule d, ZmMat m);
    AddMap add() const;
    Elem operator()(const Elem& x) const;
    bool is_zero() const;
    bool operator==(const AHom& o) const;
};

AHom a_identity(const AModule& M);
AHom a_zero(const AModule& M, const AModule& N);
AHom a_compose(const AHom& g, const AHom& f);
AHom a_add(const AHom& f, const AHom& g);
AHom a_sub(const AHom& f, const AHom& g);
AHom a_neg(const AHom& f);
AHom a_scal(uint64_t c, const AHom& f);

struct ModDirectSum {
    AModule sum;
    std::vector<AHom> incl, proj;
};
ModDirectSum mod_direct_sum(const std::vector<AModule>& parts);
AHom a_block_map(const std::vector<AModule>& dsts, const std::vector<AModule>& srcs,
                 const std::vector<std::vector<const AHom*>>& grid);

// Hom_A(M,N) as an additive presentation; coordinates index kernel of the
// linearity-defect map on the full additive hom group.
struct AHomSpace {
    AModule M, N;
    HomGroup hg;         // additive maps M -> N
    AdditivePresentation coords;
    AddMap incl;         // coords -> hg.grp

    AHom from_coords(const Elem& t) const;
    Elem to_coords(const AHom& f) const;
    uint64_t card() const { return coords.card(); }
};
AHomSpace hom_space(const AModule& M, const AModule& N);

// --- constructions in mod(A) (algebra_ops.cpp) ---

struct SubModule {
    AModule S;
    AHom incl;
};
struct QuotModule {
    AModule Q;
    AHom proj;
    ZmMat section; // additive set-section, as in QuotPres
};

// closure of the rows of G under the action, as canonical submodule matrix
ZmMat a_submodule_closure(const AModule& M, const ZmMat& G);
SubModule a_submodule(const AModule& M, const ZmMat& G);
QuotModule a_quotient(const AModule& M, const ZmMat& G);

SubModule a_kernel(const AHom& f);
SubModule a_image(const AHom& f);
QuotModule a_cokernel(const AHom& f);

struct Pullback {
    AModule P;
    AHom to_x, to_y; // f∘to_x = g∘to_y
};
Pullback a_pullback(const AHom& f, const AHom& g); // f: X->Z, g: Y->Z

struct Pushout {
    AModule P;
    AHom from_x, from_y; // from_x∘f = from_y∘g
};
Pushout a_pushout(const AHom& f, const AHom& g); // f: Z->X, g: Z->Y

// Jacobson radical of A as canonical submodule matrix of the regular module.
ZmMat radical_ideal(const FinAlgebra& A);
ZmMat radical_submodule(const AModule& M); // rad(A)·M
QuotModule radical_quotient(const AModule& M);

// Projective module carried with its realizing decomposition ⊕ A·e_{idem[k]};
// gen[k] is the generator of summand k inside mod.
struct ProjModule {
    AModule mod;
    std::vector<size_t> idem;  // indices into A->idempotents, one per summand
    std::vector<ZmMat> embed;  // embed[k]: A.rank x summand rank, basis -> algebra element
    std::vector<size_t> offset; // additive offset of summand k inside mod
    std::vector<Elem> gens;    // generator of summand k, in mod coordinates
};

struct Cover {
    ProjModule P;
    AHom onto; // P.mod -> M, surjective with kernel inside rad(P)
};
Cover projective_cover(const AModule& M);

// lift f through the surjection g (requires the ProjModule structure on src(f))
AHom lift_through_epi(const ProjModule& P, const AHom& f, const AHom& g);

// corestriction of f to a submodule of its target containing the image
AHom a_corestrict(const AHom& f, const SubModule& S);

// g with j∘g = f, solved generator by generator; throws when f escapes im(j)
AHom a_factor_left(const AHom& j, const AHom& f);

// u: fixed.dst -> T with u∘fixed = rhs, if any
std::optional<AHom> a_solve_right_factor(const AHom& fixed, const AModule& T, const AHom& rhs);

// t: E -> T with t∘jx = ax and t∘jy = ay, for jointly surjective jx, jy
AHom a_factor_joint(const AHom& jx, const AHom& jy, const AHom& ax, const AHom& ay);

// matrices of (pre/post)composition with `fixed` on hom-space coordinates
AddMap hom_precompose(const AHomSpace& us, const AHomSpace& cs, const AHom& fixed);
AddMap hom_postcompose(const AHomSpace& us, const AHomSpace& cs, const AHom& fixed);

AHom a_inverse(const AHom& f); // inverse of an isomorphism

// duality over the opposite algebra
AModule dual_module(const AModule& M); // module over A^op
AHom dual_hom(const AHom& f);          // D(f): D(dst) -> D(src)

std::vector<ZmMat> all_left_ideals(const FinAlgebra& A); // canonical forms

struct QfReport {
    bool qf = false;
    ZmMat witness; // non-extensible ideal when !qf
};
QfReport quasi_frobenius_check(const FinAlgebra& A);

struct NotQuasiFrobenius : ComputeError {
    using ComputeError::ComputeError;
};

// injectivity of a module via the Baer criterion over all left ideals
bool is_injective_module(const AModule& M);

std::optional<AHom> find_isomorphism(const AModule& M, const AModule& N);
bool is_isomorphic(const AModule& M, const AModule& N);

std::optional<AHom> module_retraction(const AHom& i); // r with r∘i = id
std::optional<AHom> module_section(const AHom& p);    // s with p∘s = id
bool is_projective_module(const AModule& M);

// simple modules attached to the idempotent family: top of each A·e_i
std::vector<AModule> simple_modules(const FinAlgebra& A, AlgebraPtr ptr);

// --- presets (presets.cpp) ---
// dual_numbers:p, zmod:n, trunc_poly:p:n, path_algebra:<spec>:p,
// product:<a>,<b>, upper_triangular:p:n
AlgebraPtr make_preset(const std::string& spec);
std::vector<std::string> preset_names();

} // namespace dlab
