#include "derivedlab/algebra.hpp"

#include <numeric>

namespace dlab {

namespace {

// equality of matrices as maps into ⊕ Z/orders[row]
bool rows_equal(const ZmMat& x, const ZmMat& y, const std::vector<uint64_t>& orders) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t j = 0; j < x.cols; ++j)
            if (x.at(i, j) % orders[i] != y.at(i, j) % orders[i]) return false;
    return true;
}

void check_bilinear_table(const std::vector<ZmMat>& tbl, const std::vector<uint64_t>& left_ords,
                          const std::vector<uint64_t>& right_ords, const std::vector<uint64_t>& out_ords,
                          const char* what) {
    for (size_t i = 0; i < tbl.size(); ++i)
        for (size_t t = 0; t < tbl[i].rows; ++t)
            for (size_t j = 0; j < tbl[i].cols; ++j) {
                uint64_t pair_ord = std::gcd(left_ords[i], right_ords[j]);
                uint64_t need = out_ords[t] / std::gcd(out_ords[t], pair_ord);
                if (tbl[i].at(t, j) % need)
                    throw ValidationError(std::string(what) + ": entry incompatible with orders");
            }
}

} // namespace

FinAlgebra::FinAlgebra(uint64_t m, std::vector<uint64_t> ords, std::vector<ZmMat> mul_tbl, Elem one,
                       std::vector<Elem> idem, std::string nm)
    : mod(m), orders(std::move(ords)), mult(std::move(mul_tbl)), unit(std::move(one)),
      idempotents(std::move(idem)), name(std::move(nm)) {
    rank = orders.size();
    AdditivePresentation P(mod, orders); // validates orders
    if (mult.size() != rank) throw ValidationError("algebra: table size mismatch");
    for (const auto& t : mult)
        if (t.mod != mod || t.rows != rank || t.cols != rank)
            throw ValidationError("algebra: table shape mismatch");
    if (unit.size() != rank) throw ValidationError("algebra: unit shape mismatch");
    for (auto& t : mult)
        for (size_t r = 0; r < rank; ++r)
            for (size_t c = 0; c < rank; ++c) t.at(r, c) %= orders[r];
    check_bilinear_table(mult, orders, orders, orders, "algebra");
    // unit law
    ZmMat lu = left_mult(unit), id = ZmMat::identity(mod, rank);
    if (!rows_equal(lu, id, orders)) throw ValidationError("algebra: unit is not a left unit");
    for (size_t i = 0; i < rank; ++i) {
        Elem bi(rank, 0);
        bi[i] = 1;
        if (elem_reduce(P, mul(bi, unit)) != elem_reduce(P, bi))
            throw ValidationError("algebra: unit is not a right unit");
    }
    // associativity on basis triples
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j) {
            ZmMat lhs = mat_mul(mult[i], mult[j]);
            ZmMat rhs(mod, rank, rank);
            for (size_t t = 0; t < rank; ++t) {
                uint64_t c = mult[i].at(t, j);
                if (c) rhs = mat_add(rhs, mat_scal(c, mult[t]));
            }
            if (!rows_equal(lhs, rhs, orders)) throw ValidationError("algebra: not associative");
        }
    if (idempotents.empty()) idempotents = {unit};
    Elem sum(rank, 0);
    for (const auto& e : idempotents) {
        if (e.size() != rank) throw ValidationError("algebra: idempotent shape mismatch");
        if (elem_reduce(P, mul(e, e)) != elem_reduce(P, e))
            throw ValidationError("algebra: idempotent is not idempotent");
        sum = elem_add(P, sum, elem_reduce(P, e));
    }
    for (size_t i = 0; i < idempotents.size(); ++i)
        for (size_t j = 0; j < idempotents.size(); ++j)
            if (i != j && !elem_is_zero(elem_reduce(P, mul(idempotents[i], idempotents[j]))))
                throw ValidationError("algebra: idempotents not orthogonal");
    if (sum != elem_reduce(P, unit)) throw ValidationError("algebra: idempotents do not sum to 1");
}

Elem FinAlgebra::mul(const Elem& x, const Elem& y) const {
    if (x.size() != rank || y.size() != rank) throw ValidationError("algebra: element shape");
    Elem z(rank, 0);
    for (size_t t = 0; t < rank; ++t) {
        uint64_t d = orders[t], acc = 0;
        for (size_t i = 0; i < rank; ++i) {
            if (!x[i]) continue;
            uint64_t row = 0;
            for (size_t j = 0; j < rank; ++j)
                row = addmod(row, mulmod(mult[i].at(t, j) % d, y[j] % d, d), d);
            acc = addmod(acc, mulmod(x[i] % d, row, d), d);
        }
        z[t] = acc;
    }
    return z;
}

ZmMat FinAlgebra::left_mult(const Elem& x) const {
    ZmMat L(mod, rank, rank);
    for (size_t i = 0; i < rank; ++i)
        if (x[i] % orders[i]) L = mat_add(L, mat_scal(x[i] % orders[i], mult[i]));
    for (size_t t = 0; t < rank; ++t)
        for (size_t j = 0; j < rank; ++j) L.at(t, j) %= orders[t];
    return L;
}

ZmMat FinAlgebra::right_mult(const Elem& x) const {
    ZmMat R(mod, rank, rank);
    for (size_t j = 0; j < rank; ++j) {
        Elem bj(rank, 0);
        bj[j] = 1;
        Elem col = mul(bj, x);
        for (size_t t = 0; t < rank; ++t) R.at(t, j) = col[t];
    }
    return R;
}

bool FinAlgebra::is_unit_elem(const Elem& x) const {
    AdditivePresentation P = pres();
    AddMap L(P, P, left_mult(x));
    return solve_in_presentation(L, elem_reduce(P, unit)).has_value();
}

bool FinAlgebra::is_commutative() const {
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j)
            for (size_t t = 0; t < rank; ++t)
                if (mult[i].at(t, j) % orders[t] != mult[j].at(t, i) % orders[t]) return false;
    return true;
}

FinAlgebra FinAlgebra::opposite() const {
    std::vector<ZmMat> op(rank, ZmMat(mod, rank, rank));
    for (size_t i = 0; i < rank; ++i)
        for (size_t t = 0; t < rank; ++t)
            for (size_t j = 0; j < rank; ++j) op[i].at(t, j) = mult[j].at(t, i);
    return FinAlgebra(mod, orders, std::move(op), unit, idempotents, name + "^op");
}

bool FinAlgebra::operator==(const FinAlgebra& o) const {
    return mod == o.mod && orders == o.orders && mult == o.mult && unit == o.unit &&
           idempotents == o.idempotents;
}

AModule::AModule(AlgebraPtr alg, AdditivePresentation p, std::vector<ZmMat> action)
    : A(std::move(alg)), pres(std::move(p)), act(std::move(action)) {
    if (!A) throw ValidationError("module: algebra missing");
    if (pres.mod != A->mod) throw ValidationError("module: modulus mismatch");
    if (act.size() != A->rank) throw ValidationError("module: action size mismatch");
    for (const auto& t : act)
        if (t.mod != pres.mod || t.rows != pres.rank() || t.cols != pres.rank())
            throw ValidationError("module: action shape mismatch");
    for (auto& t : act)
        for (size_t r = 0; r < pres.rank(); ++r)
            for (size_t c = 0; c < pres.rank(); ++c) t.at(r, c) %= pres.orders[r];
    check_bilinear_table(act, A->orders, pres.orders, pres.orders, "module");
    ZmMat lu = action_of(A->unit);
    if (!rows_equal(lu, ZmMat::identity(pres.mod, pres.rank()), pres.orders))
        throw ValidationError("module: unit does not act as identity");
    for (size_t i = 0; i < A->rank; ++i)
        for (size_t j = 0; j < A->rank; ++j) {
            ZmMat lhs = mat_mul(act[i], act[j]);
            ZmMat rhs(pres.mod, pres.rank(), pres.rank());
            for (size_t t = 0; t < A->rank; ++t) {
                uint64_t c = A->mult[i].at(t, j);
                if (c) rhs = mat_add(rhs, mat_scal(c, act[t]));
            }
            if (!rows_equal(lhs, rhs, pres.orders))
                throw ValidationError("module: action not associative");
        }
}

ZmMat AModule::action_of(const Elem& a) const {
    ZmMat L(pres.mod, pres.rank(), pres.rank());
    for (size_t i = 0; i < A->rank; ++i)
        if (a[i] % A->orders[i]) L = mat_add(L, mat_scal(a[i] % A->orders[i], act[i]));
    for (size_t t = 0; t < pres.rank(); ++t)
        for (size_t j = 0; j < pres.rank(); ++j) L.at(t, j) %= pres.orders[t];
    return L;
}

Elem AModule::act_elem(const Elem& a, const Elem& x) const {
    ZmMat L = action_of(a);
    Elem y(pres.rank(), 0);
    for (size_t t = 0; t < pres.rank(); ++t) {
        uint64_t d = pres.orders[t], acc = 0;
        for (size_t j = 0; j < pres.rank(); ++j)
            acc = addmod(acc, mulmod(L.at(t, j) % d, x[j] % d, d), d);
        y[t] = acc;
    }
    return y;
}

bool AModule::operator==(const AModule& o) const {
    return *A == *o.A && pres == o.pres && act == o.act;
}

AModule zero_module(AlgebraPtr A) {
    uint64_t m = A->mod;
    size_t rk = A->rank;
    return AModule(std::move(A), AdditivePresentation(m, {}),
                   std::vector<ZmMat>(rk, ZmMat(m, 0, 0)));
}

AModule regular_module(AlgebraPtr A) {
    auto pres = A->pres();
    auto act = A->mult;
    return AModule(std::move(A), std::move(pres), std::move(act));
}

AModule free_module(AlgebraPtr A, size_t n) {
    if (n == 0) return zero_module(std::move(A));
    return mod_direct_sum(std::vector<AModule>(n, regular_module(A))).sum;
}

AHom::AHom(AModule s, AModule d, ZmMat m) : src(std::move(s)), dst(std::move(d)), a(std::move(m)) {
    if (!(*src.A == *dst.A)) throw ValidationError("hom: different algebras");
    AddMap f(src.pres, dst.pres, a); // validates additive well-formedness
    a = f.a;
    for (size_t i = 0; i < src.A->rank; ++i) {
        ZmMat lhs = mat_mul(a, src.act[i]);
        ZmMat rhs = mat_mul(dst.act[i], a);
        if (!rows_equal(lhs, rhs, dst.pres.orders))
            throw ValidationError("hom: not linear over the algebra");
    }
}

AddMap AHom::add() const { return AddMap(src.pres, dst.pres, a); }

Elem AHom::operator()(const Elem& x) const { return add()(x); }

bool AHom::is_zero() const {
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t j = 0; j < a.cols; ++j)
            if (a.at(i, j) % dst.pres.orders[i]) return false;
    return true;
}

bool AHom::operator==(const AHom& o) const {
    if (!(src == o.src && dst == o.dst)) return false;
    return rows_equal(a, o.a, dst.pres.orders);
}

AHom a_identity(const AModule& M) { return AHom(M, M, ZmMat::identity(M.pres.mod, M.rank())); }

AHom a_zero(const AModule& M, const AModule& N) {
    return AHom(M, N, ZmMat(M.pres.mod, N.rank(), M.rank()));
}

AHom a_compose(const AHom& g, const AHom& f) {
    if (!(f.dst == g.src)) throw ValidationError("compose: middle modules differ");
    return AHom(f.src, g.dst, mat_mul(g.a, f.a));
}

AHom a_add(const AHom& f, const AHom& g) { return AHom(f.src, f.dst, mat_add(f.a, g.a)); }
AHom a_sub(const AHom& f, const AHom& g) { return AHom(f.src, f.dst, mat_sub(f.a, g.a)); }
AHom a_neg(const AHom& f) { return AHom(f.src, f.dst, mat_neg(f.a)); }
AHom a_scal(uint64_t c, const AHom& f) { return AHom(f.src, f.dst, mat_scal(c, f.a)); }

ModDirectSum mod_direct_sum(const std::vector<AModule>& parts) {
    if (parts.empty()) throw ValidationError("mod_direct_sum: need at least one part");
    AlgebraPtr A = parts[0].A;
    std::vector<AdditivePresentation> ps;
    for (const auto& p : parts) {
        if (!(*p.A == *A)) throw ValidationError("mod_direct_sum: different algebras");
        ps.push_back(p.pres);
    }
    DirectSum ds = direct_sum(ps);
    std::vector<ZmMat> act;
    for (size_t i = 0; i < A->rank; ++i) {
        ZmMat blk(A->mod, ds.sum.rank(), ds.sum.rank());
        size_t off = 0;
        for (const auto& p : parts) {
            for (size_t r = 0; r < p.rank(); ++r)
                for (size_t c = 0; c < p.rank(); ++c) blk.at(off + r, off + c) = p.act[i].at(r, c);
            off += p.rank();
        }
        act.push_back(std::move(blk));
    }
    AModule sum(A, ds.sum, std::move(act));
    ModDirectSum out{sum, {}, {}};
    for (size_t k = 0; k < parts.size(); ++k) {
        out.incl.emplace_back(parts[k], sum, ds.incl[k].a);
        out.proj.emplace_back(sum, parts[k], ds.proj[k].a);
    }
    return out;
}

AHom a_block_map(const std::vector<AModule>& dsts, const std::vector<AModule>& srcs,
                 const std::vector<std::vector<const AHom*>>& grid) {
    ModDirectSum dsum = mod_direct_sum(dsts), ssum = mod_direct_sum(srcs);
    ZmMat a(dsum.sum.pres.mod, dsum.sum.rank(), ssum.sum.rank());
    size_t roff = 0;
    for (size_t r = 0; r < dsts.size(); ++r) {
        if (grid[r].size() != srcs.size()) throw ValidationError("block_map: grid cols mismatch");
        size_t coff = 0;
        for (size_t c = 0; c < srcs.size(); ++c) {
            const AHom* f = grid[r][c];
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
    return AHom(ssum.sum, dsum.sum, std::move(a));
}

AHomSpace hom_space(const AModule& M, const AModule& N) {
    if (!(*M.A == *N.A)) throw ValidationError("hom_space: different algebras");
    HomGroup hg = hom_group(M.pres, N.pres);
    size_t nb = M.A->rank;
    std::vector<AdditivePresentation> copies(nb, hg.grp);
    AdditivePresentation target =
        nb ? direct_sum(copies).sum : AdditivePresentation(M.pres.mod, {});
    ZmMat delta(M.pres.mod, target.rank(), hg.grp.rank());
    for (size_t s = 0; s < hg.grp.rank(); ++s) {
        Elem es(hg.grp.rank(), 0);
        es[s] = 1;
        AddMap fs = hg.to_map(es);
        size_t off = 0;
        for (size_t b = 0; b < nb; ++b) {
            AddMap actM(M.pres, M.pres, M.act[b]);
            AddMap actN(N.pres, N.pres, N.act[b]);
            AddMap defect = map_sub(compose(actN, fs), compose(fs, actM));
            Elem co = hg.from_map(defect);
            for (size_t t = 0; t < co.size(); ++t) delta.at(off + t, s) = co[t];
            off += co.size();
        }
    }
    AddMap D(hg.grp, target, std::move(delta));
    KernelPres kp = kernel_of_addmap(D);
    return AHomSpace{M, N, hg, kp.K, kp.incl};
}

AHom AHomSpace::from_coords(const Elem& t) const {
    AddMap f = hg.to_map(incl(t));
    return AHom(M, N, f.a);
}

Elem AHomSpace::to_coords(const AHom& f) const {
    Elem hco = hg.from_map(f.add());
    auto t = solve_in_presentation(incl, hco);
    if (!t) throw ComputeError("hom_space: map is not in the space");
    return *t;
}

} // namespace dlab
