#pragma once

#include "zmat.hpp"

#include <optional>

namespace dlab {

// Finite abelian group presented as ⊕_i Z/orders[i], all orders dividing mod.
struct AdditivePresentation {
    uint64_t mod = 2;
    std::vector<uint64_t> orders; // each divides mod, each > 1

    AdditivePresentation() = default;
    AdditivePresentation(uint64_t m, std::vector<uint64_t> ords);

    size_t rank() const { return orders.size(); }
    uint64_t card() const;
    bool operator==(const AdditivePresentation&) const = default;
};

// Element: coords[i] in [0, orders[i]).
using Elem = std::vector<uint64_t>;

Elem elem_zero(const AdditivePresentation& P);
Elem elem_reduce(const AdditivePresentation& P, Elem x);
Elem elem_add(const AdditivePresentation& P, const Elem& x, const Elem& y);
Elem elem_sub(const AdditivePresentation& P, const Elem& x, const Elem& y);
Elem elem_scal(const AdditivePresentation& P, uint64_t c, const Elem& x);
bool elem_is_zero(const Elem& x);
uint64_t elem_index(const AdditivePresentation& P, const Elem& x);
Elem index_elem(const AdditivePresentation& P, uint64_t idx);
Elem mat_row(const ZmMat& M, size_t r);

// Homomorphism src -> dst; a is dst.rank() x src.rank(), row i reduced mod
// dst.orders[i]. Constructor checks a(i,j) ≡ 0 mod e_i/gcd(e_i, d_j).
struct AddMap {
    AdditivePresentation src, dst;
    ZmMat a;

    AddMap(AdditivePresentation s, AdditivePresentation d, ZmMat m);
    Elem operator()(const Elem& x) const;
    bool is_zero() const;
    bool operator==(const AddMap& o) const;
};

AddMap add_identity(const AdditivePresentation& P);
AddMap add_zero(const AdditivePresentation& P, const AdditivePresentation& Q);
AddMap compose(const AddMap& g, const AddMap& f); // g after f
AddMap map_add(const AddMap& f, const AddMap& g);
AddMap map_sub(const AddMap& f, const AddMap& g);
AddMap map_neg(const AddMap& f);
AddMap map_scal(uint64_t c, const AddMap& f);

struct DirectSum {
    AdditivePresentation sum;
    std::vector<AddMap> incl; // P_k -> sum
    std::vector<AddMap> proj; // sum -> P_k
};
DirectSum direct_sum(const std::vector<AdditivePresentation>& parts);

// Block matrix of maps; grid[r][c] : srcs[c] -> dsts[r], nullptr = zero block.
AddMap block_map(const std::vector<AdditivePresentation>& dsts,
                 const std::vector<AdditivePresentation>& srcs,
                 const std::vector<std::vector<const AddMap*>>& grid);

// --- submodules (G: rows are elements of P) ---

// Howell basis of span{rows of G, diag(orders)}; equal spans give equal bases.
ZmMat canonical_submodule(const AdditivePresentation& P, const ZmMat& G);
bool submodule_contains(const AdditivePresentation& P, const ZmMat& G, const Elem& x);
ZmMat submodule_sum(const AdditivePresentation& P, const ZmMat& G1, const ZmMat& G2);
ZmMat submodule_intersection(const AdditivePresentation& P, const ZmMat& G1, const ZmMat& G2);

struct SubPres {
    AdditivePresentation S;
    AddMap incl; // S -> P, injective
};
SubPres submodule_from_generators(const AdditivePresentation& P, const ZmMat& G);

struct QuotPres {
    AdditivePresentation Q;
    AddMap proj;   // P -> Q, surjective
    ZmMat section; // P.rank x Q.rank; proj(section(e_t)) = e_t (set-section)
};
QuotPres quotient_by_submodule(const AdditivePresentation& P, const ZmMat& G);
Elem section_apply(const QuotPres& q, const AdditivePresentation& P, const Elem& y);

struct KernelPres {
    AdditivePresentation K;
    AddMap incl; // K -> src(f)
};
KernelPres kernel_of_addmap(const AddMap& f);

ZmMat image_generators(const AddMap& f); // rows f(e_j), j over src rank
QuotPres cokernel_of_addmap(const AddMap& f);

// Elements of ker f as generator rows in src coordinates.
ZmMat kernel_generators(const AddMap& f);
// Generators of f^{-1}(span H) in src coordinates.
ZmMat preimage_generators(const AddMap& f, const ZmMat& H);

std::optional<Elem> solve_in_presentation(const AddMap& f, const Elem& y);

bool is_injective(const AddMap& f);
bool is_surjective(const AddMap& f);
bool is_isomorphism(const AddMap& f);

// Hom(P,Q) as a presentation: slot (i,j) contributes Z/gcd(e_i,d_j),
// matrix entry a(i,j) = (e_i/g)·t with t the slot coordinate.
struct HomSlot {
    size_t i, j;
    uint64_t g, scale;
};
struct HomGroup {
    AdditivePresentation src, dst;
    AdditivePresentation grp;
    std::vector<HomSlot> slots; // aligned with grp.orders

    AddMap to_map(const Elem& t) const;
    Elem from_map(const AddMap& f) const;
};
HomGroup hom_group(const AdditivePresentation& P, const AdditivePresentation& Q);

} // namespace dlab
