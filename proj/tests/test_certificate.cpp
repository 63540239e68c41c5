#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "derivedlab/certificate.hpp"
#include "derivedlab/random_gen.hpp"
#include "derivedlab/subcat.hpp"

using namespace dlab;

namespace {

// 0 -> <gens> -> M -> M/<gens> -> 0 as single-degree complexes
ComplexSES module_ses_at(const AModule& M, const ZmMat& gens, int deg) {
    SubModule S = a_submodule(M, gens);
    QuotModule Q = a_quotient(M, gens);
    ChainMap i = chain_map_from(Complex::single(S.S, deg), Complex::single(M, deg),
                                {{deg, S.incl}});
    ChainMap p = chain_map_from(Complex::single(M, deg), Complex::single(Q.Q, deg),
                                {{deg, Q.proj}});
    return make_ses(i, p);
}

Homotopy null_homotopy(const Complex& C) {
    std::vector<AHom> comps;
    for (int n = C.lo; n <= C.hi(); ++n) comps.push_back(a_zero(C.term(n), C.term(n - 1)));
    return Homotopy{C, C, C.lo, std::move(comps)};
}

Complex rand_member_complex(const SubcategorySpec& U, Rng& rng) {
    std::vector<Complex> parts;
    parts.push_back(Complex::single(U.sample(rng), (int)(rng() % 3) - 1));
    for (int i = 0; i < 2; ++i) {
        AModule W = U.sample(rng);
        parts.push_back(Complex(U.A, (int)(rng() % 3) - 1, {W, W}, {a_identity(W)}));
    }
    return complex_direct_sum(parts).sum;
}

// random d-stable span of L, returned as subcomplex/quotient exact sequence
ComplexSES rand_subquot_ses(const Complex& L, Rng& rng) {
    std::map<int, ZmMat> gens;
    ZmMat prev(L.A->mod, 0, 0);
    for (int n = L.lo; n <= L.hi(); ++n) {
        size_t rk = L.term(n).rank();
        std::vector<Elem> rows;
        if (rk > 0) {
            ZmMat R = rand_rows(L.term(n).pres, 1, rng);
            for (size_t r = 0; r < R.rows; ++r) rows.push_back(mat_row(R, r));
        }
        for (size_t r = 0; r < prev.rows; ++r)
            rows.push_back(L.diff(n - 1)(mat_row(prev, r)));
        ZmMat G(L.A->mod, rows.size(), rk);
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t j = 0; j < rk; ++j) G.at(r, j) = rows[r][j];
        gens[n] = canonical_submodule(L.term(n).pres, G);
        prev = gens[n];
    }
    SubComplexData K = subcomplex_from(L, gens);
    QuotComplexData Q = quotient_complex(L, gens);
    return make_ses(K.incl, Q.proj);
}

std::map<int, ZmMat> rand_spans(const Complex& T, Rng& rng) {
    std::map<int, ZmMat> D;
    for (int n = T.lo; n <= T.hi(); ++n) {
        if (T.term(n).rank() == 0 || rng() % 2 != 0) continue;
        D[n] = rand_rows(T.term(n).pres, 1, rng);
    }
    return D;
}

// free terms are injective over the self-injective presets used below
Complex rand_free_complex(AlgebraPtr A, Rng& rng) {
    std::vector<Complex> parts;
    for (int i = 0; i < 2; ++i) {
        int deg = (int)(rng() % 3) - 1;
        AModule F1 = free_module(A, 1 + rng() % 2);
        if (rng() % 2 == 0) {
            parts.push_back(Complex::single(F1, deg));
        } else {
            AModule F2 = free_module(A, 1 + rng() % 2);
            parts.push_back(Complex(A, deg, {F1, F2}, {rand_hom(F1, F2, rng)}));
        }
    }
    return complex_direct_sum(parts).sum;
}

bool all_members(const SubcategorySpec& U, const Complex& C) {
    for (int n = C.lo; n <= C.hi(); ++n)
        if (!U.member(C.term(n))) return false;
    return true;
}

void check_contained(const Complex& amb, const ChainMap& incl,
                     const std::map<int, ZmMat>& D) {
    for (const auto& [n, mat] : D) {
        ZmMat span = image_generators(incl.comp(n).add());
        for (size_t r = 0; r < mat.rows; ++r)
            CHECK(submodule_contains(amb.term(n).pres, span, mat_row(mat, r)));
    }
}

const char* kPresets[] = {
    "dual_numbers:2",  "zmod:4", "trunc_poly:2:3", "path_algebra:1->2:2",
    "product:dual_numbers:2,zmod:4", "upper_triangular:2:2",
};

} // namespace

TEST_CASE("nonsplit totalization certifies through the recursion") {
    AlgebraPtr A = make_preset("dual_numbers:2");
    AModule F = free_module(A, 1);
    ZmMat soc(2, 1, 2);
    soc.at(0, 1) = 1;
    ComplexSES ses = module_ses_at(F, soc, 0);
    Complex T = tot_ses(ses);

    REQUIRE(is_acyclic(T));
    REQUIRE(!homotopy_solve(chain_identity(T), chain_zero(T, T)).has_value());

    AbsAcyclicCert cert = certify_bounded_acyclic(T);
    CertCheck chk = verify_certificate(cert);
    CHECK(chk.ok);
    CHECK(chk.reason.empty());
    CHECK(cert.subject() == T);
}

TEST_CASE("empty and contractible complexes certify") {
    AlgebraPtr A = make_preset("zmod:4");
    AbsAcyclicCert z = certify_bounded_acyclic(Complex::zero(A));
    CHECK(verify_certificate(z).ok);
    CHECK(z.subject() == Complex::zero(A));

    AModule F = free_module(A, 2);
    Complex W(A, -1, {F, F}, {a_identity(F)});
    AbsAcyclicCert cw = certify_bounded_acyclic(W);
    CHECK(cw.node == AbsAcyclicCert::Node::HtpyEquiv);
    CHECK(verify_certificate(cw).ok);
    CHECK(cw.subject() == W);
}

TEST_CASE("random acyclic complexes certify across presets") {
    for (const char* name : kPresets) {
        CAPTURE(name);
        AlgebraPtr A = make_preset(name);
        Rng rng(11);
        for (int t = 0; t < 4; ++t) {
            Complex C = rand_acyclic_complex(A, rng);
            AbsAcyclicCert cert = certify_bounded_acyclic(C);
            CertCheck chk = verify_certificate(cert);
            CAPTURE(chk.path);
            CAPTURE(chk.reason);
            REQUIRE(chk.ok);
            REQUIRE(cert.subject() == C.trimmed());
        }
    }
}

TEST_CASE("complexes with cohomology are refused") {
    AlgebraPtr A = make_preset("dual_numbers:2");
    AModule F = free_module(A, 1);
    CHECK_THROWS_AS(certify_bounded_acyclic(Complex::single(F, 0)), NotAcyclic);

    ZmMat soc(2, 1, 2);
    soc.at(0, 1) = 1;
    SubModule S = a_submodule(F, soc);
    CHECK_THROWS_AS(certify_bounded_acyclic(Complex::from_maps(0, {S.incl})), NotAcyclic);

    AlgebraPtr Z4 = make_preset("zmod:4");
    AModule F4 = free_module(Z4, 1);
    ZmMat two(4, 1, 1);
    two.at(0, 0) = 2;
    SubModule S4 = a_submodule(F4, two);
    CHECK_THROWS_AS(certify_bounded_acyclic(Complex::from_maps(0, {S4.incl})), NotAcyclic);
}

TEST_CASE("tampered certificates fail verification") {
    AlgebraPtr A = make_preset("zmod:4");
    AModule F = free_module(A, 1);
    ZmMat two(4, 1, 1);
    two.at(0, 0) = 2;
    ComplexSES ses = module_ses_at(F, two, 0);
    Complex T = tot_ses(ses);
    AbsAcyclicCert cert = certify_bounded_acyclic(T);
    REQUIRE(verify_certificate(cert).ok);
    REQUIRE(cert.node == AbsAcyclicCert::Node::HtpyEquiv);

    AbsAcyclicCert bad = cert;
    bad.ha = null_homotopy(bad.ha->src);
    CertCheck chk = verify_certificate(bad);
    CHECK(!chk.ok);
    CHECK(!chk.reason.empty());

    // claiming the contraction of a nonsplit totalization
    Complex z = Complex::zero(A);
    ChainMap zz = chain_zero(z, z);
    AbsAcyclicCert leaf;
    leaf.ses = make_ses(zz, zz);
    AbsAcyclicCert bogus;
    bogus.node = AbsAcyclicCert::Node::HtpyEquiv;
    bogus.f = chain_zero(z, T);
    bogus.g = chain_zero(T, z);
    bogus.ha = null_homotopy(z);
    bogus.hb = null_homotopy(T);
    bogus.children.push_back(std::move(leaf));
    CertCheck bc = verify_certificate(bogus);
    CHECK(!bc.ok);
    CHECK(bc.reason == "second homotopy misses id - f∘g");
}

TEST_CASE("split summands of certified complexes verify") {
    AlgebraPtr A = make_preset("dual_numbers:2");
    AModule F = free_module(A, 1);
    ZmMat soc(2, 1, 2);
    soc.at(0, 1) = 1;
    Complex C = tot_ses(module_ses_at(F, soc, 0));
    Complex W(A, 0, {F, F}, {a_identity(F)});
    ComplexSum cs = complex_direct_sum({C, W});

    AbsAcyclicCert sm;
    sm.node = AbsAcyclicCert::Node::Summand;
    sm.f = cs.incl[0];
    sm.g = cs.proj[0];
    sm.children.push_back(certify_bounded_acyclic(cs.sum));
    CHECK(verify_certificate(sm).ok);
    CHECK(sm.subject() == C);

    AbsAcyclicCert wrong = sm;
    wrong.g = chain_zero(cs.sum, C);
    CHECK(!verify_certificate(wrong).ok);
}

TEST_CASE("socle inclusions admit no retraction and detect cohomology") {
    AlgebraPtr A = make_preset("dual_numbers:2");
    AModule F = free_module(A, 1);
    ZmMat soc(2, 1, 2);
    soc.at(0, 1) = 1;
    SubModule S = a_submodule(F, soc);
    CHECK(!module_retraction(S.incl).has_value());

    // chain maps [soc -> A] -> ΣA kill the socle; none are null-homotopic
    Complex CI = Complex::from_maps(0, {S.incl});
    HomotopyClasses hk = hom_K(CI, Complex::single(F, 1));
    CHECK(hk.card() == 2);

    AlgebraPtr Z4 = make_preset("zmod:4");
    AModule F4 = free_module(Z4, 1);
    ZmMat two(4, 1, 1);
    two.at(0, 0) = 2;
    SubModule S4 = a_submodule(F4, two);
    CHECK(!module_retraction(S4.incl).has_value());
}

TEST_CASE("maps from certified complexes to injective complexes vanish") {
    for (const char* name : {"dual_numbers:2", "zmod:4"}) {
        CAPTURE(name);
        AlgebraPtr A = make_preset(name);
        Rng rng(23);
        for (int t = 0; t < 3; ++t) {
            Complex C = rand_acyclic_complex(A, rng);
            AbsAcyclicCert cert = certify_bounded_acyclic(C);
            Complex I = rand_free_complex(A, rng);
            HomVanishing hv = hom_K_vanishing(cert, I);
            CHECK(hv.ok);
            CHECK(!hv.witness.has_value());
        }
    }
}

TEST_CASE("vanishing test rejects non-injective targets") {
    AlgebraPtr A = make_preset("upper_triangular:2:2");
    std::vector<AModule> sims = simple_modules(*A, A);
    const AModule* bad = nullptr;
    for (const auto& s : sims)
        if (!is_injective_module(s)) bad = &s;
    REQUIRE(bad != nullptr);

    AbsAcyclicCert cert = certify_bounded_acyclic(Complex::zero(A));
    CHECK_THROWS_AS(hom_K_vanishing(cert, Complex::single(*bad, 0)), ValidationError);
}

TEST_CASE("totalization completions stay inside the subcategory") {
    AlgebraPtr A = make_preset("zmod:6");
    SubcategorySpec U = subcat_idempotent_local(A, Elem{4});
    Rng rng(77);
    for (int t = 0; t < 8; ++t) {
        Complex L = rand_member_complex(U, rng);
        ComplexSES ses = rand_subquot_ses(L, rng);
        Complex T = tot_ses(ses);
        std::map<int, ZmMat> D = rand_spans(T, rng);

        CompletedSub got = complete_subcomplex_tot(ses, D, U);
        CHECK(verify_certificate(got.cert).ok);
        CHECK(got.cert.subject() == got.sub.S);
        CHECK(is_acyclic(got.sub.S));
        CHECK(all_members(U, got.sub.S));
        check_contained(T, got.sub.incl, D);
    }
}

TEST_CASE("cone completions combine the leg completions") {
    AlgebraPtr A = make_preset("zmod:6");
    SubcategorySpec U = subcat_idempotent_local(A, Elem{4});
    Rng rng(78);
    for (int t = 0; t < 6; ++t) {
        ComplexSES s1 = rand_subquot_ses(rand_member_complex(U, rng), rng);
        Complex T1 = tot_ses(s1);
        uint64_t mode = rng() % 3;
        ComplexSES s2 = mode == 0 ? rand_subquot_ses(rand_member_complex(U, rng), rng) : s1;
        Complex T2 = tot_ses(s2);

        ChainMap tmap = chain_zero(T1, T2);
        if (mode != 0) {
            std::map<int, AHom> sc;
            for (int n = T1.lo; n <= T1.hi(); ++n)
                sc.emplace(n, a_scal(mode == 1 ? 1 : 2, a_identity(T1.term(n))));
            tmap = chain_map_from(T1, T1, sc);
        }

        SubCompleter c1 = [&](const std::map<int, ZmMat>& dd) {
            return complete_subcomplex_tot(s1, dd, U);
        };
        SubCompleter c2 = [&](const std::map<int, ZmMat>& dd) {
            return complete_subcomplex_tot(s2, dd, U);
        };
        Complex CC = cone(tmap).cone;
        std::map<int, ZmMat> D = rand_spans(CC, rng);

        CompletedSub got = complete_subcomplex_cone(tmap, c1, c2, D);
        CHECK(verify_certificate(got.cert).ok);
        CHECK(got.cert.subject() == got.sub.S);
        CHECK(is_acyclic(got.sub.S));
        CHECK(all_members(U, got.sub.S));
        check_contained(CC, got.sub.incl, D);
    }
}

TEST_CASE("completion reports unreachable projected spans") {
    AlgebraPtr A = make_preset("zmod:6");
    AModule F = free_module(A, 1);
    ZmMat g(6, 1, 1);
    g.at(0, 0) = 2;
    ComplexSES ses = module_ses_at(F, g, 0);
    Complex T = tot_ses(ses);
    REQUIRE(T.term(1).rank() == 1);

    SubcategorySpec W = subcat_everything(A);
    W.cover = [A](const AHom& a) {
        AModule Z = zero_module(A);
        return AHom(Z, a.src, ZmMat(A->mod, a.src.rank(), 0));
    };
    std::map<int, ZmMat> D;
    ZmMat row(6, 1, 1);
    row.at(0, 0) = 1;
    D[1] = row;
    CHECK_THROWS_AS(complete_subcomplex_tot(ses, D, W), CoverFailure);
}
