#include "derivedlab/additive.hpp"

#include <numeric>

namespace dlab {

Elem mat_row(const ZmMat& M, size_t r) {
    Elem x(M.cols);
    for (size_t j = 0; j < M.cols; ++j) x[j] = M.at(r, j);
    return x;
}

AdditivePresentation::AdditivePresentation(uint64_t m, std::vector<uint64_t> ords)
    : mod(m), orders(std::move(ords)) {
    if (mod < 2) throw ValidationError("presentation: modulus must be >= 2");
    for (uint64_t d : orders) {
        if (d < 2) throw ValidationError("presentation: order must be >= 2");
        if (mod % d) throw ValidationError("presentation: order must divide modulus");
    }
}

uint64_t AdditivePresentation::card() const {
    unsigned __int128 c = 1;
    for (uint64_t d : orders) {
        c *= d;
        if (c > UINT64_MAX) throw ComputeError("presentation: cardinality overflow");
    }
    return (uint64_t)c;
}

Elem elem_zero(const AdditivePresentation& P) { return Elem(P.rank(), 0); }

Elem elem_reduce(const AdditivePresentation& P, Elem x) {
    if (x.size() != P.rank()) throw ValidationError("element: wrong rank");
    for (size_t i = 0; i < x.size(); ++i) x[i] %= P.orders[i];
    return x;
}

Elem elem_add(const AdditivePresentation& P, const Elem& x, const Elem& y) {
    if (x.size() != P.rank() || y.size() != P.rank()) throw ValidationError("element: wrong rank");
    Elem z(P.rank());
    for (size_t i = 0; i < z.size(); ++i) z[i] = addmod(x[i], y[i], P.orders[i]);
    return z;
}

Elem elem_sub(const AdditivePresentation& P, const Elem& x, const Elem& y) {
    if (x.size() != P.rank() || y.size() != P.rank()) throw ValidationError("element: wrong rank");
    Elem z(P.rank());
    for (size_t i = 0; i < z.size(); ++i) z[i] = submod(x[i] % P.orders[i], y[i] % P.orders[i], P.orders[i]);
    return z;
}

Elem elem_scal(const AdditivePresentation& P, uint64_t c, const Elem& x) {
    if (x.size() != P.rank()) throw ValidationError("element: wrong rank");
    Elem z(P.rank());
    for (size_t i = 0; i < z.size(); ++i) z[i] = mulmod(c % P.orders[i], x[i], P.orders[i]);
    return z;
}

bool elem_is_zero(const Elem& x) {
    for (uint64_t v : x)
        if (v) return false;
    return true;
}

uint64_t elem_index(const AdditivePresentation& P, const Elem& x) {
    if (x.size() != P.rank()) throw ValidationError("element: wrong rank");
    uint64_t idx = 0;
    for (size_t i = 0; i < x.size(); ++i) idx = idx * P.orders[i] + (x[i] % P.orders[i]);
    return idx;
}

Elem index_elem(const AdditivePresentation& P, uint64_t idx) {
    Elem x(P.rank());
    for (size_t i = P.rank(); i-- > 0;) {
        x[i] = idx % P.orders[i];
        idx /= P.orders[i];
    }
    return x;
}

namespace {

void reduce_rows(ZmMat& a, const std::vector<uint64_t>& orders) {
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) a.at(i, j) %= orders[i];
}

} // namespace

AddMap::AddMap(AdditivePresentation s, AdditivePresentation d, ZmMat m)
    : src(std::move(s)), dst(std::move(d)), a(std::move(m)) {
    if (src.mod != dst.mod || a.mod != src.mod) throw ValidationError("addmap: modulus mismatch");
    if (a.rows != dst.rank() || a.cols != src.rank()) throw ValidationError("addmap: shape mismatch");
    reduce_rows(a, dst.orders);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j) {
            uint64_t need = dst.orders[i] / std::gcd(dst.orders[i], src.orders[j]);
            if (a.at(i, j) % need) throw ValidationError("addmap: entry not compatible with orders");
        }
}

Elem AddMap::operator()(const Elem& x) const {
    if (x.size() != src.rank()) throw ValidationError("addmap: wrong element rank");
    Elem y(dst.rank(), 0);
    for (size_t i = 0; i < dst.rank(); ++i) {
        uint64_t e = dst.orders[i], acc = 0;
        for (size_t j = 0; j < src.rank(); ++j)
            acc = addmod(acc, mulmod(a.at(i, j) % e, x[j] % e, e), e);
        y[i] = acc;
    }
    return y;
}

bool AddMap::is_zero() const { return a.is_zero(); }

bool AddMap::operator==(const AddMap& o) const {
    return src == o.src && dst == o.dst && a == o.a;
}

AddMap add_identity(const AdditivePresentation& P) {
    return AddMap(P, P, ZmMat::identity(P.mod, P.rank()));
}

AddMap add_zero(const AdditivePresentation& P, const AdditivePresentation& Q) {
    return AddMap(P, Q, ZmMat(P.mod, Q.rank(), P.rank()));
}

AddMap compose(const AddMap& g, const AddMap& f) {
    if (!(f.dst == g.src)) throw ValidationError("compose: middle presentations differ");
    return AddMap(f.src, g.dst, mat_mul(g.a, f.a));
}

AddMap map_add(const AddMap& f, const AddMap& g) {
    if (!(f.src == g.src && f.dst == g.dst)) throw ValidationError("map_add: shape mismatch");
    return AddMap(f.src, f.dst, mat_add(f.a, g.a));
}

AddMap map_sub(const AddMap& f, const AddMap& g) {
    if (!(f.src == g.src && f.dst == g.dst)) throw ValidationError("map_sub: shape mismatch");
    return AddMap(f.src, f.dst, mat_sub(f.a, g.a));
}

AddMap map_neg(const AddMap& f) { return AddMap(f.src, f.dst, mat_neg(f.a)); }

AddMap map_scal(uint64_t c, const AddMap& f) { return AddMap(f.src, f.dst, mat_scal(c, f.a)); }

DirectSum direct_sum(const std::vector<AdditivePresentation>& parts) {
    if (parts.empty()) throw ValidationError("direct_sum: need at least one part");
    uint64_t m = parts[0].mod;
    std::vector<uint64_t> ords;
    for (const auto& p : parts) {
        if (p.mod != m) throw ValidationError("direct_sum: modulus mismatch");
        ords.insert(ords.end(), p.orders.begin(), p.orders.end());
    }
    DirectSum ds{AdditivePresentation(m, ords), {}, {}};
    size_t off = 0;
    for (const auto& p : parts) {
        ZmMat in(m, ds.sum.rank(), p.rank());
        ZmMat pr(m, p.rank(), ds.sum.rank());
        for (size_t i = 0; i < p.rank(); ++i) {
            in.at(off + i, i) = 1;
            pr.at(i, off + i) = 1;
        }
        ds.incl.emplace_back(p, ds.sum, std::move(in));
        ds.proj.emplace_back(ds.sum, p, std::move(pr));
        off += p.rank();
    }
    return ds;
}

AddMap block_map(const std::vector<AdditivePresentation>& dsts,
                 const std::vector<AdditivePresentation>& srcs,
                 const std::vector<std::vector<const AddMap*>>& grid) {
    if (grid.size() != dsts.size()) throw ValidationError("block_map: grid rows mismatch");
    DirectSum dsum = direct_sum(dsts), ssum = direct_sum(srcs);
    ZmMat a(dsum.sum.mod, dsum.sum.rank(), ssum.sum.rank());
    size_t roff = 0;
    for (size_t r = 0; r < dsts.size(); ++r) {
        if (grid[r].size() != srcs.size()) throw ValidationError("block_map: grid cols mismatch");
        size_t coff = 0;
        for (size_t c = 0; c < srcs.size(); ++c) {
            const AddMap* f = grid[r][c];
            if (f) {
                if (!(f->src == srcs[c] && f->dst == dsts[r]))
                    throw ValidationError("block_map: block shape mismatch");
                for (size_t i = 0; i < f->a.rows; ++i)
                    for (size_t j = 0; j < f->a.cols; ++j)
                        a.at(roff + i, coff + j) = f->a.at(i, j);
            }
            coff += srcs[c].rank();
        }
        roff += dsts[r].rank();
    }
    return AddMap(ssum.sum, dsum.sum, std::move(a));
}

namespace {

// Rows spanning the same Z/m-module as the element set of span{G} in P,
// i.e. span{G, diag(orders)}.
ZmMat full_span_rows(const AdditivePresentation& P, const ZmMat& G) {
    if (G.cols != P.rank() || G.mod != P.mod) throw ValidationError("submodule: generator shape mismatch");
    ZmMat d(P.mod, P.rank(), P.rank());
    for (size_t i = 0; i < P.rank(); ++i) d.at(i, i) = P.orders[i] % P.mod;
    return vstack(G, d);
}

struct QuotData {
    std::vector<uint64_t> factors; // one per ambient coordinate slot, gcd-normalized
    ZmMat U, Uinv;                 // from smith of (relations)^T
};

// Quotient (Z/m)^k / rowspan(rel): coordinates w = x·U^T, factor t has order
// gcd(D_tt, m). U comes from smith(rel^T) so only the tracked side is used.
QuotData quotient_data(uint64_t mod, size_t k, const ZmMat& rel) {
    ZmMat padded = vstack(rel, ZmMat(mod, k, k));
    SmithForm sf = smith(padded.transpose());
    QuotData qd;
    qd.factors.assign(sf.diag.begin(), sf.diag.begin() + k);
    qd.U = sf.U;
    qd.Uinv = sf.Uinv;
    return qd;
}

} // namespace

ZmMat canonical_submodule(const AdditivePresentation& P, const ZmMat& G) {
    return howell(full_span_rows(P, G)).basis;
}

bool submodule_contains(const AdditivePresentation& P, const ZmMat& G, const Elem& x) {
    ZmMat H = canonical_submodule(P, G);
    return in_row_span(H, elem_reduce(P, x));
}

ZmMat submodule_sum(const AdditivePresentation& P, const ZmMat& G1, const ZmMat& G2) {
    return canonical_submodule(P, vstack(G1, G2));
}

SubPres submodule_from_generators(const AdditivePresentation& P, const ZmMat& G) {
    uint64_t m = P.mod;
    size_t k = G.rows;
    // relations among the generators: c with Σ c_g G_g = 0 in P
    ZmMat scaled(m, k, P.rank());
    for (size_t g = 0; g < k; ++g)
        for (size_t i = 0; i < P.rank(); ++i)
            scaled.at(g, i) = mulmod(m / P.orders[i], G.at(g, i), m);
    ZmMat rel = left_kernel(scaled);
    QuotData qd = quotient_data(m, k, rel);

    std::vector<uint64_t> ords;
    std::vector<size_t> keep;
    for (size_t t = 0; t < k; ++t)
        if (qd.factors[t] > 1) {
            ords.push_back(qd.factors[t]);
            keep.push_back(t);
        }
    AdditivePresentation S(m, ords);
    // generator combination for coordinate t: column t of U^{-1} applied to G
    ZmMat gu = mat_mul(G.transpose(), qd.Uinv); // P.rank x k
    ZmMat inc(m, P.rank(), keep.size());
    for (size_t c = 0; c < keep.size(); ++c)
        for (size_t i = 0; i < P.rank(); ++i) inc.at(i, c) = gu.at(i, keep[c]);
    return SubPres{S, AddMap(S, P, std::move(inc))};
}

QuotPres quotient_by_submodule(const AdditivePresentation& P, const ZmMat& G) {
    uint64_t m = P.mod;
    size_t p = P.rank();
    ZmMat rel = full_span_rows(P, G);
    QuotData qd = quotient_data(m, p, rel);

    std::vector<uint64_t> ords;
    std::vector<size_t> keep;
    for (size_t t = 0; t < p; ++t)
        if (qd.factors[t] > 1) {
            ords.push_back(qd.factors[t]);
            keep.push_back(t);
        }
    AdditivePresentation Q(m, ords);
    ZmMat pr(m, keep.size(), p);
    for (size_t r = 0; r < keep.size(); ++r)
        for (size_t j = 0; j < p; ++j) pr.at(r, j) = qd.U.at(keep[r], j);
    ZmMat sec(m, p, keep.size());
    for (size_t j = 0; j < p; ++j)
        for (size_t c = 0; c < keep.size(); ++c)
            sec.at(j, c) = qd.Uinv.at(j, keep[c]) % P.orders[j];
    return QuotPres{Q, AddMap(P, Q, std::move(pr)), std::move(sec)};
}

Elem section_apply(const QuotPres& q, const AdditivePresentation& P, const Elem& y) {
    if (y.size() != q.Q.rank()) throw ValidationError("section: wrong element rank");
    Elem x(P.rank(), 0);
    for (size_t j = 0; j < P.rank(); ++j) {
        uint64_t acc = 0, d = P.orders[j];
        for (size_t c = 0; c < q.Q.rank(); ++c)
            acc = addmod(acc, mulmod(q.section.at(j, c) % d, y[c] % d, d), d);
        x[j] = acc;
    }
    return x;
}

namespace {

// Solutions x in (Z/m)^p of the lifted system for f(x) = 0.
ZmMat lifted_kernel_rows(const AddMap& f) {
    uint64_t m = f.src.mod;
    ZmMat B(m, f.dst.rank(), f.src.rank());
    for (size_t i = 0; i < f.dst.rank(); ++i)
        for (size_t j = 0; j < f.src.rank(); ++j)
            B.at(i, j) = mulmod(m / f.dst.orders[i], f.a.at(i, j), m);
    return right_kernel(B);
}

} // namespace

KernelPres kernel_of_addmap(const AddMap& f) {
    ZmMat gens = lifted_kernel_rows(f);
    SubPres sp = submodule_from_generators(f.src, gens);
    return KernelPres{sp.S, sp.incl};
}

ZmMat kernel_generators(const AddMap& f) { return lifted_kernel_rows(f); }

ZmMat image_generators(const AddMap& f) { return f.a.transpose(); }

QuotPres cokernel_of_addmap(const AddMap& f) {
    return quotient_by_submodule(f.dst, image_generators(f));
}

ZmMat preimage_generators(const AddMap& f, const ZmMat& H) {
    QuotPres q = quotient_by_submodule(f.dst, H);
    return kernel_generators(compose(q.proj, f));
}

ZmMat submodule_intersection(const AdditivePresentation& P, const ZmMat& G1, const ZmMat& G2) {
    SubPres s1 = submodule_from_generators(P, G1);
    ZmMat pre = preimage_generators(s1.incl, G2); // elements of S1 landing in span G2
    ZmMat gens = mat_mul(pre, s1.incl.a.transpose());
    return canonical_submodule(P, gens);
}

std::optional<Elem> solve_in_presentation(const AddMap& f, const Elem& y) {
    if (y.size() != f.dst.rank()) throw ValidationError("solve: wrong element rank");
    uint64_t m = f.src.mod;
    ZmMat B(m, f.dst.rank(), f.src.rank());
    std::vector<uint64_t> rhs(f.dst.rank());
    for (size_t i = 0; i < f.dst.rank(); ++i) {
        for (size_t j = 0; j < f.src.rank(); ++j)
            B.at(i, j) = mulmod(m / f.dst.orders[i], f.a.at(i, j), m);
        rhs[i] = mulmod(m / f.dst.orders[i], y[i] % f.dst.orders[i], m);
    }
    auto x = solve_col(B, rhs);
    if (!x) return std::nullopt;
    return elem_reduce(f.src, std::move(*x));
}

bool is_injective(const AddMap& f) { return kernel_of_addmap(f).K.rank() == 0; }

bool is_surjective(const AddMap& f) {
    ZmMat img = canonical_submodule(f.dst, image_generators(f));
    ZmMat full = canonical_submodule(f.dst, ZmMat::identity(f.dst.mod, f.dst.rank()));
    return img == full;
}

bool is_isomorphism(const AddMap& f) { return is_injective(f) && is_surjective(f); }

HomGroup hom_group(const AdditivePresentation& P, const AdditivePresentation& Q) {
    if (P.mod != Q.mod) throw ValidationError("hom_group: modulus mismatch");
    HomGroup hg{P, Q, AdditivePresentation(P.mod, {}), {}};
    std::vector<uint64_t> ords;
    for (size_t i = 0; i < Q.rank(); ++i)
        for (size_t j = 0; j < P.rank(); ++j) {
            uint64_t g = std::gcd(Q.orders[i], P.orders[j]);
            if (g > 1) {
                ords.push_back(g);
                hg.slots.push_back(HomSlot{i, j, g, Q.orders[i] / g});
            }
        }
    hg.grp = AdditivePresentation(P.mod, ords);
    return hg;
}

AddMap HomGroup::to_map(const Elem& t) const {
    if (t.size() != slots.size()) throw ValidationError("hom_group: wrong coordinate rank");
    ZmMat a(src.mod, dst.rank(), src.rank());
    for (size_t s = 0; s < slots.size(); ++s)
        a.at(slots[s].i, slots[s].j) = mulmod(slots[s].scale, t[s] % slots[s].g, dst.orders[slots[s].i]);
    return AddMap(src, dst, std::move(a));
}

Elem HomGroup::from_map(const AddMap& f) const {
    if (!(f.src == src && f.dst == dst)) throw ValidationError("hom_group: map shape mismatch");
    Elem t(slots.size());
    for (size_t s = 0; s < slots.size(); ++s) {
        uint64_t v = f.a.at(slots[s].i, slots[s].j);
        t[s] = (v / slots[s].scale) % slots[s].g;
    }
    return t;
}

} // namespace dlab
