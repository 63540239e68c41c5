#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "derivedlab/additive.hpp"

#include <random>
#include <set>

using namespace dlab;

namespace {

std::vector<uint64_t> divisors_gt1(uint64_t m) {
    std::vector<uint64_t> ds;
    for (uint64_t d = 2; d <= m; ++d)
        if (m % d == 0) ds.push_back(d);
    return ds;
}

AdditivePresentation rand_pres(std::mt19937_64& rng, uint64_t m, size_t max_rank, uint64_t max_card) {
    auto ds = divisors_gt1(m);
    std::vector<uint64_t> ords;
    uint64_t card = 1;
    size_t r = rng() % (max_rank + 1);
    for (size_t i = 0; i < r; ++i) {
        uint64_t d = ds[rng() % ds.size()];
        if (card * d > max_card) break;
        ords.push_back(d);
        card *= d;
    }
    return AdditivePresentation(m, ords);
}

std::vector<Elem> all_elems(const AdditivePresentation& P) {
    std::vector<Elem> v;
    for (uint64_t i = 0; i < P.card(); ++i) v.push_back(index_elem(P, i));
    return v;
}

// brute-force closure of generator rows under addition
std::set<Elem> closure(const AdditivePresentation& P, const ZmMat& G) {
    std::set<Elem> s{elem_zero(P)};
    std::vector<Elem> gens;
    for (size_t r = 0; r < G.rows; ++r) gens.push_back(elem_reduce(P, G.row(r)));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Elem> cur(s.begin(), s.end());
        for (const auto& x : cur)
            for (const auto& g : gens)
                if (s.insert(elem_add(P, x, g)).second) grew = true;
    }
    return s;
}

ZmMat rand_gens(std::mt19937_64& rng, const AdditivePresentation& P, size_t nrows) {
    ZmMat G(P.mod, nrows, P.rank());
    for (size_t r = 0; r < nrows; ++r)
        for (size_t c = 0; c < P.rank(); ++c) G.at(r, c) = rng() % P.orders[c];
    return G;
}

AddMap rand_map(std::mt19937_64& rng, const AdditivePresentation& P, const AdditivePresentation& Q) {
    HomGroup hg = hom_group(P, Q);
    Elem t(hg.grp.rank());
    for (size_t i = 0; i < t.size(); ++i) t[i] = rng() % hg.grp.orders[i];
    return hg.to_map(t);
}

const std::vector<uint64_t> kMods = {2, 3, 4, 6, 8, 9, 12};

} // namespace

TEST_CASE("presentation: validation and cardinality") {
    CHECK_THROWS_AS(AdditivePresentation(4, {3}), ValidationError);
    CHECK_THROWS_AS(AdditivePresentation(4, {1}), ValidationError);
    CHECK_THROWS_AS(AdditivePresentation(1, {}), ValidationError);
    AdditivePresentation P(12, {4, 6, 2});
    CHECK(P.card() == 48);
    CHECK(AdditivePresentation(4, {}).card() == 1);
    for (uint64_t i = 0; i < P.card(); ++i)
        CHECK(elem_index(P, index_elem(P, i)) == i);
}

TEST_CASE("addmap: order compatibility is enforced") {
    AdditivePresentation P(4, {2}), Q(4, {4});
    ZmMat bad(4, 1, 1);
    bad.at(0, 0) = 1; // Z/2 -> Z/4 needs even entries
    CHECK_THROWS_AS(AddMap(P, Q, bad), ValidationError);
    ZmMat good(4, 1, 1);
    good.at(0, 0) = 2;
    AddMap f(P, Q, good);
    CHECK(f(Elem{1}) == Elem{2});
}

TEST_CASE("hom_group: cardinality matches brute-force count of valid matrices") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 2, 8), Q = rand_pres(rng, m, 2, 8);
        HomGroup hg = hom_group(P, Q);
        // count matrices a with a(i,j)*d_j ≡ 0 mod e_i, entries mod e_i
        uint64_t count = 1;
        for (size_t i = 0; i < Q.rank(); ++i)
            for (size_t j = 0; j < P.rank(); ++j) {
                uint64_t c = 0;
                for (uint64_t v = 0; v < Q.orders[i]; ++v)
                    if (mulmod(v, P.orders[j] % Q.orders[i], Q.orders[i]) == 0) ++c;
                count *= c;
            }
        CHECK(hg.grp.card() == count);
        for (uint64_t idx = 0; idx < std::min<uint64_t>(hg.grp.card(), 64); ++idx) {
            Elem t = index_elem(hg.grp, idx);
            CHECK(hg.from_map(hg.to_map(t)) == t);
        }
    }
}

TEST_CASE("addmap: composition agrees with pointwise application") {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 2, 12), Q = rand_pres(rng, m, 2, 12), R = rand_pres(rng, m, 2, 12);
        AddMap f = rand_map(rng, P, Q), g = rand_map(rng, Q, R);
        AddMap gf = compose(g, f);
        for (const auto& x : all_elems(P)) CHECK(gf(x) == g(f(x)));
        CHECK(compose(add_identity(Q), f) == f);
        CHECK(compose(f, add_identity(P)) == f);
        CHECK(map_sub(f, f).is_zero());
    }
}

TEST_CASE("kernel: presentation matches brute-force kernel set") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 60; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 3, 24), Q = rand_pres(rng, m, 2, 12);
        AddMap f = rand_map(rng, P, Q);
        std::set<Elem> ker;
        for (const auto& x : all_elems(P))
            if (elem_is_zero(f(x))) ker.insert(x);
        KernelPres kp = kernel_of_addmap(f);
        CHECK(kp.K.card() == ker.size());
        std::set<Elem> img;
        for (const auto& t : all_elems(kp.K)) {
            Elem x = kp.incl(t);
            CHECK(ker.count(x) == 1);
            img.insert(x);
        }
        CHECK(img.size() == ker.size()); // incl injective and onto the kernel
        CHECK(is_injective(f) == (ker.size() == 1));
        // first isomorphism theorem on cardinalities
        CHECK(closure(Q, image_generators(f)).size() * ker.size() == P.card());
    }
}

TEST_CASE("solve: agrees with exhaustive search") {
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 2, 16), Q = rand_pres(rng, m, 2, 16);
        AddMap f = rand_map(rng, P, Q);
        auto xs = all_elems(P);
        for (const auto& y : all_elems(Q)) {
            bool exists = false;
            for (const auto& x : xs)
                if (f(x) == y) { exists = true; break; }
            auto sol = solve_in_presentation(f, y);
            CHECK(sol.has_value() == exists);
            if (sol) CHECK(f(*sol) == y);
        }
    }
}

TEST_CASE("submodule: presentation and canonical form match closure oracle") {
    std::mt19937_64 rng(105);
    for (int trial = 0; trial < 60; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 3, 24);
        ZmMat G = rand_gens(rng, P, rng() % 3);
        auto cl = closure(P, G);
        SubPres sp = submodule_from_generators(P, G);
        CHECK(sp.S.card() == cl.size());
        std::set<Elem> img;
        for (const auto& t : all_elems(sp.S)) {
            Elem x = sp.incl(t);
            CHECK(cl.count(x) == 1);
            img.insert(x);
        }
        CHECK(img.size() == cl.size());
        // canonical form: independent of the generating set
        ZmMat Gfull(P.mod, cl.size(), P.rank());
        size_t rr = 0;
        for (const auto& x : cl) {
            for (size_t c = 0; c < P.rank(); ++c) Gfull.at(rr, c) = x[c];
            ++rr;
        }
        CHECK(canonical_submodule(P, G) == canonical_submodule(P, Gfull));
        for (const auto& x : all_elems(P))
            CHECK(submodule_contains(P, G, x) == (cl.count(x) == 1));
    }
}

TEST_CASE("quotient: cardinality, fibers and section") {
    std::mt19937_64 rng(106);
    for (int trial = 0; trial < 60; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 3, 24);
        ZmMat G = rand_gens(rng, P, rng() % 3);
        auto cl = closure(P, G);
        QuotPres qp = quotient_by_submodule(P, G);
        CHECK(qp.Q.card() * cl.size() == P.card());
        std::set<Elem> image;
        for (const auto& x : all_elems(P)) {
            Elem y = qp.proj(x);
            image.insert(y);
            CHECK(elem_is_zero(y) == (cl.count(x) == 1));
        }
        CHECK(image.size() == qp.Q.card());
        for (const auto& y : all_elems(qp.Q))
            CHECK(qp.proj(section_apply(qp, P, y)) == y);
    }
}

TEST_CASE("cokernel: quotient by the image") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 2, 12), Q = rand_pres(rng, m, 3, 24);
        AddMap f = rand_map(rng, P, Q);
        auto img = closure(Q, image_generators(f));
        QuotPres ck = cokernel_of_addmap(f);
        CHECK(ck.Q.card() * img.size() == Q.card());
        CHECK(compose(ck.proj, f).is_zero());
        CHECK(is_surjective(ck.proj));
        CHECK(is_surjective(f) == (img.size() == Q.card()));
    }
}

TEST_CASE("sum, intersection, preimage match set oracles") {
    std::mt19937_64 rng(108);
    for (int trial = 0; trial < 40; ++trial) {
        uint64_t m = kMods[rng() % kMods.size()];
        auto P = rand_pres(rng, m, 3, 24);
        ZmMat G1 = rand_gens(rng, P, 1 + rng() % 2), G2 = rand_gens(rng, P, 1 + rng() % 2);
        auto c1 = closure(P, G1), c2 = closure(P, G2);

        std::set<Elem> su;
        for (const auto& x : c1)
            for (const auto& y : c2) su.insert(elem_add(P, x, y));
        ZmMat sum = submodule_sum(P, G1, G2);
        CHECK(closure(P, sum).size() == su.size());
        for (const auto& x : su) CHECK(in_row_span(sum, x));

        std::set<Elem> in;
        for (const auto& x : c1)
            if (c2.count(x)) in.insert(x);
        ZmMat inter = submodule_intersection(P, G1, G2);
        auto icl = closure(P, inter);
        CHECK(icl.size() == in.size());
        for (const auto& x : in) CHECK(in_row_span(inter, x));

        auto Q = rand_pres(rng, m, 2, 12);
        AddMap f = rand_map(rng, P, Q);
        ZmMat H = rand_gens(rng, Q, 1);
        auto hcl = closure(Q, H);
        std::set<Elem> pre;
        for (const auto& x : all_elems(P))
            if (hcl.count(f(x))) pre.insert(x);
        ZmMat pg = preimage_generators(f, H);
        ZmMat pgr(P.mod, pg.rows, pg.cols);
        for (size_t r = 0; r < pg.rows; ++r) {
            Elem e = elem_reduce(P, pg.row(r));
            for (size_t c = 0; c < pg.cols; ++c) pgr.at(r, c) = e[c];
        }
        CHECK(closure(P, pgr).size() == pre.size());
    }
}

TEST_CASE("direct sum and block maps") {
    std::mt19937_64 rng(109);
    uint64_t m = 12;
    auto A = rand_pres(rng, m, 2, 12), B = rand_pres(rng, m, 2, 12), C = rand_pres(rng, m, 2, 12);
    DirectSum ds = direct_sum({A, B});
    CHECK(ds.sum.card() == A.card() * B.card());
    for (size_t k = 0; k < 2; ++k)
        CHECK(compose(ds.proj[k], ds.incl[k]) == add_identity(k == 0 ? A : B));
    AddMap idsum = map_add(compose(ds.incl[0], ds.proj[0]), compose(ds.incl[1], ds.proj[1]));
    CHECK(idsum == add_identity(ds.sum));

    AddMap f = rand_map(rng, A, C), g = rand_map(rng, B, C);
    AddMap h = block_map({C}, {A, B}, {{&f, &g}});
    for (const auto& x : all_elems(A))
        for (const auto& y : all_elems(B)) {
            Elem xy = x;
            xy.insert(xy.end(), y.begin(), y.end());
            CHECK(h(xy) == elem_add(C, f(x), g(y)));
        }
}

TEST_CASE("frozen examples over Z/4") {
    // span{(2,1)} in Z/4 ⊕ Z/2 has two elements
    AdditivePresentation P(4, {4, 2});
    ZmMat G(4, 1, 2);
    G.at(0, 0) = 2;
    G.at(0, 1) = 1;
    SubPres sp = submodule_from_generators(P, G);
    CHECK(sp.S.card() == 2);
    QuotPres qp = quotient_by_submodule(P, G);
    CHECK(qp.Q.card() == 4);

    // multiplication by 2 on Z/4: kernel and cokernel both Z/2
    AdditivePresentation Z4(4, {4});
    ZmMat two(4, 1, 1);
    two.at(0, 0) = 2;
    AddMap f(Z4, Z4, two);
    CHECK(kernel_of_addmap(f).K.orders == std::vector<uint64_t>{2});
    CHECK(cokernel_of_addmap(f).Q.orders == std::vector<uint64_t>{2});

    // Hom(Z/2, Z/4) ≅ Z/2
    AdditivePresentation Z2(4, {2});
    HomGroup hg = hom_group(Z2, Z4);
    CHECK(hg.grp.orders == std::vector<uint64_t>{2});
}
