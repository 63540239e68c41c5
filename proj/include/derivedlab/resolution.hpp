#pragma once

#include "complex.hpp"

namespace dlab {

struct ClassNotTrivial : ComputeError {
    using ComputeError::ComputeError;
};
struct DepthExceeded : ComputeError {
    using ComputeError::ComputeError;
};

// syzygy recurrence Ω^s ≅ Ω^t (1 ≤ s < t, Ω^s ≠ 0) forcing infinite length
struct PeriodicityCert {
    size_t s = 0, t = 0;
    AHom iso;
};

struct Resolution {
    AModule M;
    std::vector<ProjModule> P; // P[i] sits in cochain degree -i
    std::vector<AHom> d;       // d[i]: P[i+1].mod -> P[i].mod
    AHom aug;                  // P[0].mod -> M
    std::vector<AModule> syzygy; // syzygy[i] = Ω^{i+1}, kernel below P[i]
    bool minimal = true;
    bool complete = false; // final kernel vanished
    std::optional<PeriodicityCert> period;

    size_t length() const { return P.empty() ? 0 : P.size() - 1; }
    AModule term(size_t n) const; // zero beyond the end when complete
    AHom dmap(size_t n) const;    // term(n+1) -> term(n)
    ProjModule proj_term(size_t n) const;
    Complex complex() const; // degrees [-length, 0]
};

Resolution minimal_projective_resolution(const AModule& M, int depth);
bool resolution_is_minimal(const Resolution& R);
bool resolution_is_exact(const Resolution& R);

struct InjResolution {
    AModule M;
    std::vector<AModule> J;
    std::vector<AHom> d; // d[i]: J[i] -> J[i+1]
    AHom coaug;          // M -> J[0]
    bool complete = false;
    Complex complex() const; // degrees [0, length]
};
InjResolution injective_resolution(const AModule& M, int depth);

struct ExtGroup {
    AdditivePresentation grp;
    AModule N;
    AModule Pn, Pn1; // resolution terms n and n+1
    AHomSpace hs;    // Hom_A(P_n, N)
    KernelPres cocyc;
    QuotPres cls;
    size_t n = 0;

    AHom rep_of(const Elem& c) const;    // cocycle P_n -> N
    Elem class_of(const AHom& f) const;  // modulo coboundaries
    uint64_t card() const { return grp.card(); }
};
ExtGroup ext_group(const Resolution& R, const AModule& N, size_t n);

struct ModuleSES {
    AHom i, p;
};
ModuleSES make_module_ses(const AHom& i, const AHom& p); // validates exactness

ModuleSES ext1_to_ses(const Resolution& R, const ExtGroup& e1, const Elem& cls);
Elem ses_to_ext1(const Resolution& R, const ExtGroup& e1, const ModuleSES& s);

ProjModule proj_module_sum(const ProjModule& a, const ProjModule& b);

// middle resolution with degreewise split terms and resolution morphisms;
// incl/proj are chain-level maps over the sequence, incl_m/proj_n are the
// complementary level splittings (A-linear per degree only)
struct Horseshoe {
    Resolution E;
    std::vector<AHom> incl;   // incl[p]: RN.term(p) -> E.term(p)
    std::vector<AHom> proj;   // proj[p]: E.term(p) -> RM.term(p)
    std::vector<AHom> incl_m; // incl_m[p]: RM.term(p) -> E.term(p)
    std::vector<AHom> proj_n; // proj_n[p]: E.term(p) -> RN.term(p)
};
Horseshoe horseshoe(const ModuleSES& s, const Resolution& RN, const Resolution& RM);

// K exact except H^0; returns Q in degrees [-d, 0] with a quasi-isomorphism to K
struct Shortened {
    Complex Q;
    ChainMap q;
};
Shortened shorten_resolution(const Complex& K, int d);

struct CEResolution {
    int lo = 0;                          // column window base (= K.lo)
    std::vector<Complex> rows;           // rows[p]: horizontal complexes, p = 0..d
    std::vector<std::vector<AHom>> vert; // vert[p][k]: rows[p+1]^{lo+k} -> rows[p]^{lo+k}
    std::vector<Complex> hrows;          // zero-differential rows of cohomology-resolution terms
    std::vector<ChainMap> to_h, from_h;  // rows[p] <-> hrows[p]; to_h∘from_h = id
    Complex tot;
    ChainMap qi; // tot -> K
    bool closed = true;
};
CEResolution ce_resolution(const Complex& K, int d, bool require_closed = true);

struct GlDimResult {
    enum Kind { kFinite, kInfinite, kUnknown };
    Kind kind = kUnknown;
    int value = -1; // finite case
    size_t simple_index = 0;
    std::optional<PeriodicityCert> cert;
};
GlDimResult gldim_bounded(const FinAlgebra& A, AlgebraPtr ptr, int depth);

} // namespace dlab
