#pragma once

#include "derivedlab/complex.hpp"

#include <random>

namespace dlab {

using Rng = std::mt19937_64;

Elem rand_elem(const AdditivePresentation& P, Rng& rng);
ZmMat rand_rows(const AdditivePresentation& P, size_t n, Rng& rng);

// random subquotient of a small free module
AModule rand_module(AlgebraPtr A, Rng& rng, size_t free_rank = 2);

AHom rand_hom(const AModule& M, const AModule& N, Rng& rng);

// bounded complex with random terms and differentials
Complex rand_complex(AlgebraPtr A, Rng& rng, int lo, size_t len, size_t free_rank = 1);

// direct sum of shifted identity cones and totalizations of module extensions
Complex rand_acyclic_complex(AlgebraPtr A, Rng& rng, size_t pieces = 2);

Homotopy rand_homotopy(const Complex& C, const Complex& D, Rng& rng);

} // namespace dlab
