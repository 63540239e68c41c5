#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "derivedlab/complex.hpp"

#include <random>
#include <set>

using namespace dlab;

namespace {

std::vector<Elem> all_elems(const AdditivePresentation& P) {
    std::vector<Elem> v;
    for (uint64_t i = 0; i < P.card(); ++i) v.push_back(index_elem(P, i));
    return v;
}

AModule rand_module(std::mt19937_64& rng, const AlgebraPtr& A, uint64_t max_card = 8) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        AModule F = free_module(A, 1 + rng() % 2);
        ZmMat G(F.pres.mod, 1 + rng() % 2, F.rank());
        for (size_t r = 0; r < G.rows; ++r)
            for (size_t c = 0; c < F.rank(); ++c) G.at(r, c) = rng() % F.pres.orders[c];
        AModule M = (rng() % 2) ? a_quotient(F, G).Q : a_submodule(F, G).S;
        if (M.card() <= max_card) return M;
    }
    return zero_module(A);
}

ChainMap rand_chain_map(std::mt19937_64& rng, const Complex& C, const Complex& D) {
    ChainMapSpace cms = chain_map_space(C, D);
    Elem t(cms.coords.rank());
    for (size_t i = 0; i < t.size(); ++i) t[i] = rng() % cms.coords.orders[i];
    return cms.from_coords(t);
}

Complex rand_complex(std::mt19937_64& rng, const AlgebraPtr& A, int depth) {
    if (depth == 0) return Complex::single(rand_module(rng, A), (int)(rng() % 3) - 1);
    Complex X = rand_complex(rng, A, depth - 1);
    Complex Y = rand_complex(rng, A, depth - 1);
    return cone(rand_chain_map(rng, X, Y)).cone;
}

uint64_t brute_h_card(const Complex& C, int n) {
    AHom d = C.diff(n), dp = C.diff(n - 1);
    uint64_t z = 0;
    for (const auto& x : all_elems(C.term(n).pres))
        if (elem_is_zero(d(x))) ++z;
    std::set<Elem> im;
    for (const auto& x : all_elems(C.term(n - 1).pres)) im.insert(dp(x));
    return z / im.size();
}

// the 3-term acyclic complex 0 -> Z/2 -> Z/4 -> Z/2 -> 0 over Z/4
Complex acyclic_z4_witness(const AlgebraPtr& A) {
    AModule Z2(A, AdditivePresentation(4, {2}), {ZmMat::from_rows(4, {{1}})});
    AModule Z4(A, AdditivePresentation(4, {4}), {ZmMat::from_rows(4, {{1}})});
    AHom d0(Z2, Z4, ZmMat::from_rows(4, {{2}}));
    AHom d1(Z4, Z2, ZmMat::from_rows(4, {{1}}));
    return Complex::from_maps(0, {d0, d1});
}

void check_homotopy_equation(const ChainMap& f, const ChainMap& g, const Homotopy& h) {
    const Complex& C = f.src;
    const Complex& D = f.dst;
    for (int n = std::min(C.lo, D.lo) - 1; n <= std::max(C.hi(), D.hi()) + 1; ++n) {
        AHom lhs = a_add(a_compose(D.diff(n - 1), h.comp(n)), a_compose(h.comp(n + 1), C.diff(n)));
        AHom rhs = a_sub(f.comp(n), g.comp(n));
        CHECK(lhs.a == rhs.a);
    }
}

} // namespace

TEST_CASE("complex construction validates differentials") {
    auto A = make_preset("zmod:4");
    AModule R = regular_module(A);
    AHom id = a_identity(R);
    CHECK_THROWS_AS(Complex::from_maps(0, {id, id}), ValidationError); // id∘id != 0
    AHom z = a_zero(R, R);
    Complex C = Complex::from_maps(0, {z, z});
    CHECK(C.lo == 0);
    CHECK(C.hi() == 2);
    CHECK(C.term(5).rank() == 0);
    CHECK(C.diff(5).is_zero());
    Complex t = Complex::single(zero_module(A), 3).trimmed();
    CHECK(t.is_zero_complex());
    CHECK(t == Complex::zero(A));
}

TEST_CASE("cone of multiplication by the dual-numbers radical") {
    auto A = make_preset("dual_numbers:2");
    AModule R = regular_module(A);
    Elem eps = {0, 1};
    AHom f(R, R, R.action_of(eps));
    ConeData cd = cone(ChainMap(Complex::single(R, 0), Complex::single(R, 0), 0, {f}));
    CHECK(cd.cone.lo == -1);
    CHECK(cd.cone.hi() == 0);
    CHECK(cd.cone.term(-1).card() == 4);
    CHECK(cd.cone.term(0).card() == 4);
    // kernel and cokernel of eps both have two elements
    CHECK(cohomology_at(cd.cone, -1).H.card() == 2);
    CHECK(cohomology_at(cd.cone, 0).H.card() == 2);
    CHECK(brute_h_card(cd.cone, -1) == 2);
    CHECK(brute_h_card(cd.cone, 0) == 2);
    CHECK(!is_acyclic(cd.cone));
    CHECK(!is_contractible(cd.cone));
}

TEST_CASE("cohomology matches brute enumeration on random cones") {
    std::mt19937_64 rng(11);
    for (const char* preset : {"zmod:4", "dual_numbers:2", "zmod:6"}) {
        auto A = make_preset(preset);
        for (int trial = 0; trial < 6; ++trial) {
            Complex C = rand_complex(rng, A, 1);
            for (int n = C.lo - 1; n <= C.hi() + 1; ++n)
                CHECK(cohomology_at(C, n).H.card() == brute_h_card(C, n));
        }
    }
}

TEST_CASE("cone of the identity is contractible") {
    std::mt19937_64 rng(12);
    auto A = make_preset("trunc_poly:3:2");
    for (int trial = 0; trial < 4; ++trial) {
        AModule M = rand_module(rng, A, 27);
        Complex C = Complex::single(M, (int)(rng() % 3) - 1);
        ConeData cd = cone(chain_identity(C));
        CHECK(is_acyclic(cd.cone));
        CHECK(is_contractible(cd.cone));
    }
}

TEST_CASE("quasi-isomorphism iff cone is acyclic") {
    std::mt19937_64 rng(13);
    for (const char* preset : {"zmod:4", "dual_numbers:2"}) {
        auto A = make_preset(preset);
        for (int trial = 0; trial < 8; ++trial) {
            Complex X = rand_complex(rng, A, 1);
            Complex Y = rand_complex(rng, A, 1);
            ChainMap f = rand_chain_map(rng, X, Y);
            CHECK(is_quasi_iso(f) == is_acyclic(cone(f).cone));
        }
    }
}

TEST_CASE("cone gives a degreewise exact sequence and acyclic totalization") {
    std::mt19937_64 rng(14);
    auto A = make_preset("zmod:4");
    for (int trial = 0; trial < 5; ++trial) {
        Complex X = rand_complex(rng, A, 1);
        Complex Y = rand_complex(rng, A, 1);
        ChainMap f = rand_chain_map(rng, X, Y);
        ConeData cd = cone(f);
        ComplexSES ses = make_ses(cd.incl_dst, cd.proj_shift);
        Complex T = tot_ses(ses);
        CHECK(is_acyclic(T));
    }
}

TEST_CASE("ses validation rejects inexact middle") {
    auto A = make_preset("zmod:4");
    AModule Z2(A, AdditivePresentation(4, {2}), {ZmMat::from_rows(4, {{1}})});
    AModule Z4 = regular_module(A);
    Complex CZ2 = Complex::single(Z2, 0), CZ4 = Complex::single(Z4, 0);
    AHom i(Z2, Z4, ZmMat::from_rows(4, {{2}}));
    ChainMap ic(CZ2, CZ4, 0, {i});
    ChainMap pc = chain_identity(CZ4);
    CHECK_THROWS_AS(make_ses(ic, pc), ValidationError);
}

TEST_CASE("euler characteristic is multiplicative over cones and cohomology") {
    std::mt19937_64 rng(15);
    auto A = make_preset("zmod:6");
    for (int trial = 0; trial < 6; ++trial) {
        Complex X = rand_complex(rng, A, 1);
        Complex Y = rand_complex(rng, A, 1);
        ChainMap f = rand_chain_map(rng, X, Y);
        auto [nc, dc] = euler_char(cone(f).cone);
        auto [nx, dx] = euler_char(X);
        auto [ny, dy] = euler_char(Y);
        // chi(cone) = chi(Y)/chi(X)
        CHECK(nc * dy * nx == dc * ny * dx);
        // chi computed from cohomology agrees
        uint64_t hn = 1, hd = 1;
        for (int n = X.lo - 1; n <= X.hi() + 1; ++n) {
            uint64_t c = cohomology_at(X, n).H.card();
            if (((n % 2) + 2) % 2 == 0)
                hn *= c;
            else
                hd *= c;
        }
        CHECK(nx * hd == dx * hn);
    }
}

TEST_CASE("shift moves cohomology and composes to identity") {
    std::mt19937_64 rng(16);
    auto A = make_preset("zmod:4");
    Complex C = rand_complex(rng, A, 2);
    Complex S = shift_complex(C, 1);
    for (int n = C.lo - 2; n <= C.hi() + 2; ++n)
        CHECK(cohomology_at(S, n).H.card() == cohomology_at(C, n + 1).H.card());
    CHECK(shift_complex(S, -1) == C);
}

TEST_CASE("truncations preserve cohomology on their side") {
    std::mt19937_64 rng(17);
    auto A = make_preset("dual_numbers:2");
    for (int trial = 0; trial < 4; ++trial) {
        Complex C = rand_complex(rng, A, 2);
        int n = C.lo + (int)(rng() % (uint64_t)(C.hi() - C.lo + 1));
        TruncAbove ta = truncate_above(C, n);
        for (int k = C.lo - 1; k <= C.hi() + 1; ++k) {
            uint64_t hk = cohomology_at(ta.C, k).H.card();
            if (k <= n) {
                CohomologyAt hc = cohomology_at(ta.C, k), hd = cohomology_at(C, k);
                CHECK(is_isomorphism(induced_map(ta.incl, hc, hd).add()));
            } else {
                CHECK(hk == 1);
            }
        }
        TruncBelow tb = truncate_below(C, n);
        for (int k = C.lo - 1; k <= C.hi() + 1; ++k) {
            uint64_t hk = cohomology_at(tb.C, k).H.card();
            if (k >= n) {
                CohomologyAt hc = cohomology_at(C, k), hd = cohomology_at(tb.C, k);
                CHECK(is_isomorphism(induced_map(tb.proj, hc, hd).add()));
            } else {
                CHECK(hk == 1);
            }
        }
    }
}

TEST_CASE("acyclic three-term witness is not contractible but its pieces are") {
    auto A = make_preset("zmod:4");
    Complex C = acyclic_z4_witness(A);
    CHECK(is_acyclic(C));
    CHECK(!is_contractible(C));

    std::map<int, ZmMat> gens;
    gens[0] = ZmMat::from_rows(4, {{1}});
    gens[1] = ZmMat::from_rows(4, {{2}});
    SubComplexData K = subcomplex_from(C, gens);
    CHECK(is_contractible(K.S));
    QuotComplexData Q = quotient_complex(C, gens);
    CHECK(is_contractible(Q.Q));
    // the inclusion of the contractible piece does not split
    CHECK(!split_mono_retraction(K.incl).has_value());
    // cardinalities multiply degreewise
    for (int n = 0; n <= 2; ++n)
        CHECK(K.S.term(n).card() * Q.Q.term(n).card() == C.term(n).card());
}

TEST_CASE("homotopy solving finds witnesses and respects the equation") {
    std::mt19937_64 rng(18);
    auto A = make_preset("zmod:4");
    for (int trial = 0; trial < 5; ++trial) {
        Complex C = rand_complex(rng, A, 1);
        Complex D = rand_complex(rng, A, 1);
        ChainMap f = rand_chain_map(rng, C, D);
        auto self = homotopy_solve(f, f);
        REQUIRE(self.has_value());
        check_homotopy_equation(f, f, *self);
        // perturb f by a boundary dh + hd and recover some homotopy
        std::vector<AHom> hc;
        int hlo = std::min(C.lo, D.lo + 1), hhi = std::max(C.hi(), D.hi() + 1);
        for (int n = hlo; n <= hhi; ++n) {
            AHomSpace hs = hom_space(C.term(n), D.term(n - 1));
            Elem t(hs.coords.rank());
            for (size_t i = 0; i < t.size(); ++i) t[i] = rng() % hs.coords.orders[i];
            hc.push_back(hs.from_coords(t));
        }
        Homotopy h{C, D, hlo, hc};
        std::map<int, AHom> pert;
        for (int n = std::min(C.lo, D.lo); n <= std::max(C.hi(), D.hi()); ++n)
            pert.emplace(n, a_add(a_compose(D.diff(n - 1), h.comp(n)),
                                  a_compose(h.comp(n + 1), C.diff(n))));
        ChainMap g = chain_add(f, chain_map_from(C, D, pert));
        auto found = homotopy_solve(f, g);
        REQUIRE(found.has_value());
        check_homotopy_equation(f, g, *found);
        CHECK(chain_homotopic(f, g));
    }
}

TEST_CASE("split mono retraction exists for direct summands") {
    std::mt19937_64 rng(19);
    auto A = make_preset("upper_triangular:2:2");
    for (int trial = 0; trial < 4; ++trial) {
        Complex X = rand_complex(rng, A, 1);
        Complex Y = rand_complex(rng, A, 1);
        ComplexSum s = complex_direct_sum({X, Y});
        auto r = split_mono_retraction(s.incl[0]);
        REQUIRE(r.has_value());
        ChainMap ri = chain_compose(*r, s.incl[0]);
        CHECK(ri == chain_identity(X));
    }
}

TEST_CASE("chain map space cardinality matches brute enumeration") {
    auto A = make_preset("zmod:4");
    AModule Z4 = regular_module(A);
    AModule Z2(A, AdditivePresentation(4, {2}), {ZmMat::from_rows(4, {{1}})});
    AHom d1(Z4, Z2, ZmMat::from_rows(4, {{1}}));
    AHom d2(Z2, Z4, ZmMat::from_rows(4, {{2}}));
    Complex C = Complex::from_maps(0, {d1});
    Complex D = Complex::from_maps(0, {d2});
    ChainMapSpace cms = chain_map_space(C, D);
    AHomSpace h0 = hom_space(C.term(0), D.term(0));
    AHomSpace h1 = hom_space(C.term(1), D.term(1));
    uint64_t count = 0;
    for (uint64_t i = 0; i < h0.coords.card(); ++i)
        for (uint64_t j = 0; j < h1.coords.card(); ++j) {
            AHom f0 = h0.from_coords(index_elem(h0.coords, i));
            AHom f1 = h1.from_coords(index_elem(h1.coords, j));
            if (a_compose(D.diff(0), f0).a == a_compose(f1, C.diff(0)).a) ++count;
        }
    CHECK(cms.coords.card() == count);
    // round trips
    for (uint64_t i = 0; i < cms.coords.card(); ++i) {
        Elem t = index_elem(cms.coords, i);
        ChainMap f = cms.from_coords(t);
        CHECK(cms.to_coords(f) == t);
    }
}

TEST_CASE("direct sums of complexes behave degreewise") {
    std::mt19937_64 rng(20);
    auto A = make_preset("zmod:6");
    Complex X = rand_complex(rng, A, 1);
    Complex Y = rand_complex(rng, A, 1);
    ComplexSum s = complex_direct_sum({X, Y});
    for (int n = s.sum.lo; n <= s.sum.hi(); ++n) {
        CHECK(s.sum.term(n).card() == X.term(n).card() * Y.term(n).card());
        CHECK(cohomology_at(s.sum, n).H.card() ==
              cohomology_at(X, n).H.card() * cohomology_at(Y, n).H.card());
    }
    ChainMap pi = chain_compose(s.proj[1], s.incl[0]);
    CHECK(pi.is_zero());
    ChainMap pid = chain_compose(s.proj[0], s.incl[0]);
    CHECK(pid == chain_identity(X));
}
