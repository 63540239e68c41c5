#pragma once

#include "derivedlab/random_gen.hpp"

#include <functional>
#include <memory>

namespace dlab {

struct CoverFailure : ComputeError {
    using ComputeError::ComputeError;
};

// Internal model of a full subcategory: an algebra B together with the basis
// of its image inside A, so that member modules can be re-read as B-modules
// (same presentation and matrices) and back.
struct UModel {
    AlgebraPtr A, B;
    ZmMat basis;  // rows: B-basis as elements of A
    AddMap basis_incl; // B additive group -> A additive group

    AModule to_inner(const AModule& M) const;   // member of the family, over B
    AModule from_inner(const AModule& Mb) const;
    AHom to_inner_hom(const AHom& f) const;
    AHom from_inner_hom(const AHom& f) const;
};

// A full subcategory of mod(A), given by a membership test and a cover
// provider: for an epimorphism a: S -> T with member(T), cover(a) returns
// v: V -> S with member(V) and a∘v still surjective. cocover is the dual
// provider: for a monomorphism m: T -> S with member(T) it returns
// q: S -> W with member(W) and q∘m injective.
struct SubcategorySpec {
    AlgebraPtr A;
    std::string name;
    std::function<bool(const AModule&)> member;
    std::function<AHom(const AHom&)> cover;
    bool mono_covers = false;
    std::function<AHom(const AHom&)> cocover;
    std::function<AModule(Rng&)> sample;
    std::shared_ptr<const UModel> model;
};

SubcategorySpec subcat_everything(AlgebraPtr A);

// modules killed by 1-e, for an idempotent e with (1-e)Ae = 0
SubcategorySpec subcat_idempotent_local(AlgebraPtr A, const Elem& e);

SubcategorySpec subcat_zero(AlgebraPtr A);

// random closure probes: submodules, quotients, sums, kernels, cokernels,
// extensions of sampled members stay members
bool spot_check_closure(const SubcategorySpec& U, Rng& rng, int trials);

} // namespace dlab
