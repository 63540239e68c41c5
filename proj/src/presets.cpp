#include "derivedlab/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace dlab {

namespace {

std::vector<std::string> split(const std::string& s, char ch) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(ch, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

uint64_t parse_num(const std::string& s, uint64_t lo, uint64_t hi, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ValidationError(std::string("preset: bad ") + what + " '" + s + "'");
    uint64_t v = std::stoull(s);
    if (v < lo || v > hi) throw ValidationError(std::string("preset: ") + what + " out of range");
    return v;
}

bool is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

AlgebraPtr dual_numbers(uint64_t p) {
    ZmMat l1 = ZmMat::identity(p, 2);
    ZmMat le(p, 2, 2);
    le.at(1, 0) = 1; // ε·1 = ε, ε·ε = 0
    return std::make_shared<FinAlgebra>(p, std::vector<uint64_t>{p, p},
                                        std::vector<ZmMat>{l1, le}, Elem{1, 0},
                                        std::vector<Elem>{{1, 0}},
                                        "dual_numbers:" + std::to_string(p));
}

AlgebraPtr zmod(uint64_t n) {
    ZmMat one = ZmMat::identity(n, 1);
    // orthogonal idempotent per prime-power factor
    std::vector<std::pair<uint64_t, uint64_t>> factors; // (q = p^a)
    uint64_t rest = n;
    for (uint64_t d = 2; d * d <= rest; ++d)
        if (rest % d == 0) {
            uint64_t q = 1;
            while (rest % d == 0) { q *= d; rest /= d; }
            factors.push_back({d, q});
        }
    if (rest > 1) factors.push_back({rest, rest});
    std::vector<Elem> idem;
    for (auto [p, q] : factors) {
        uint64_t r = n / q;
        if (r == 1) { idem.push_back({1}); continue; }
        uint64_t inv = 0;
        for (uint64_t k = 1; k < q; ++k)
            if (mulmod(r % q, k, q) == 1) { inv = k; break; }
        idem.push_back({mulmod(r, inv, n)});
    }
    return std::make_shared<FinAlgebra>(n, std::vector<uint64_t>{n}, std::vector<ZmMat>{one},
                                        Elem{1}, idem, "zmod:" + std::to_string(n));
}

AlgebraPtr trunc_poly(uint64_t p, uint64_t n) {
    size_t r = n;
    std::vector<ZmMat> mult;
    for (size_t i = 0; i < r; ++i) {
        ZmMat L(p, r, r);
        for (size_t j = 0; j < r; ++j)
            if (i + j < r) L.at(i + j, j) = 1;
        mult.push_back(std::move(L));
    }
    Elem one(r, 0);
    one[0] = 1;
    return std::make_shared<FinAlgebra>(p, std::vector<uint64_t>(r, p), std::move(mult), one,
                                        std::vector<Elem>{one},
                                        "trunc_poly:" + std::to_string(p) + ":" + std::to_string(n));
}

AlgebraPtr path_algebra(const std::string& arrows_spec, uint64_t p) {
    struct Arrow { uint64_t from, to; };
    std::vector<Arrow> arrows;
    std::vector<uint64_t> verts;
    for (const auto& part : split(arrows_spec, ',')) {
        size_t pos = part.find("->");
        if (pos == std::string::npos) throw ValidationError("preset: arrow must look like u->v");
        uint64_t u = parse_num(part.substr(0, pos), 1, 64, "vertex");
        uint64_t v = parse_num(part.substr(pos + 2), 1, 64, "vertex");
        arrows.push_back({u, v});
        verts.push_back(u);
        verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    // basis = paths, built by length; a path is (source, target, arrow sequence)
    struct Path { uint64_t src, dst; std::vector<size_t> seq; };
    std::vector<Path> paths;
    for (uint64_t v : verts) paths.push_back({v, v, {}});
    size_t lo = 0;
    while (lo < paths.size()) {
        size_t hi = paths.size();
        for (size_t i = lo; i < hi; ++i)
            for (size_t a = 0; a < arrows.size(); ++a)
                if (arrows[a].from == paths[i].dst) {
                    Path q = paths[i];
                    q.seq.push_back(a);
                    q.dst = arrows[a].to;
                    paths.push_back(std::move(q));
                    if (paths.size() > 512) throw ValidationError("preset: quiver has too many paths (cyclic?)");
                }
        lo = hi;
    }
    std::map<std::pair<uint64_t, std::vector<size_t>>, size_t> index;
    for (size_t i = 0; i < paths.size(); ++i) index[{paths[i].src, paths[i].seq}] = i;

    size_t r = paths.size();
    std::vector<ZmMat> mult(r, ZmMat(p, r, r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            // path_i ∘ path_j, defined when src(path_i) == dst(path_j)
            if (paths[i].src != paths[j].dst) continue;
            std::vector<size_t> seq = paths[j].seq;
            seq.insert(seq.end(), paths[i].seq.begin(), paths[i].seq.end());
            auto it = index.find({paths[j].src, seq});
            if (it == index.end()) throw ComputeError("preset: path composition missing");
            mult[i].at(it->second, j) = 1;
        }
    Elem one(r, 0);
    std::vector<Elem> idem;
    for (size_t i = 0; i < verts.size(); ++i) {
        one[i] = 1; // trivial paths come first
        Elem e(r, 0);
        e[i] = 1;
        idem.push_back(e);
    }
    return std::make_shared<FinAlgebra>(p, std::vector<uint64_t>(r, p), std::move(mult), one, idem,
                                        "path_algebra:" + arrows_spec + ":" + std::to_string(p));
}

AlgebraPtr product_algebra(const AlgebraPtr& A, const AlgebraPtr& B, const std::string& name) {
    uint64_t m = std::lcm(A->mod, B->mod);
    size_t r = A->rank + B->rank;
    std::vector<uint64_t> ords = A->orders;
    ords.insert(ords.end(), B->orders.begin(), B->orders.end());
    std::vector<ZmMat> mult;
    for (size_t i = 0; i < r; ++i) {
        ZmMat L(m, r, r);
        if (i < A->rank) {
            for (size_t t = 0; t < A->rank; ++t)
                for (size_t j = 0; j < A->rank; ++j) L.at(t, j) = A->mult[i].at(t, j);
        } else {
            for (size_t t = 0; t < B->rank; ++t)
                for (size_t j = 0; j < B->rank; ++j)
                    L.at(A->rank + t, A->rank + j) = B->mult[i - A->rank].at(t, j);
        }
        mult.push_back(std::move(L));
    }
    auto embed = [&](const Elem& x, bool second) {
        Elem y(r, 0);
        size_t off = second ? A->rank : 0;
        for (size_t i = 0; i < x.size(); ++i) y[off + i] = x[i];
        return y;
    };
    Elem one = embed(A->unit, false);
    Elem oneB = embed(B->unit, true);
    for (size_t i = 0; i < r; ++i) one[i] = addmod(one[i], oneB[i], ords[i]);
    std::vector<Elem> idem;
    for (const auto& e : A->idempotents) idem.push_back(embed(e, false));
    for (const auto& e : B->idempotents) idem.push_back(embed(e, true));
    return std::make_shared<FinAlgebra>(m, std::move(ords), std::move(mult), one, idem, name);
}

AlgebraPtr upper_triangular(uint64_t p, uint64_t n) {
    // basis E_ij for i <= j; E_ij E_kl = δ_jk E_il
    std::vector<std::pair<uint64_t, uint64_t>> basis;
    for (uint64_t i = 0; i < n; ++i)
        for (uint64_t j = i; j < n; ++j) basis.push_back({i, j});
    size_t r = basis.size();
    std::map<std::pair<uint64_t, uint64_t>, size_t> index;
    for (size_t t = 0; t < r; ++t) index[basis[t]] = t;
    std::vector<ZmMat> mult(r, ZmMat(p, r, r));
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) {
            auto [i, j] = basis[a];
            auto [k, l] = basis[b];
            if (j == k) mult[a].at(index[{i, l}], b) = 1;
        }
    Elem one(r, 0);
    std::vector<Elem> idem;
    for (uint64_t i = 0; i < n; ++i) {
        one[index[{i, i}]] = 1;
        Elem e(r, 0);
        e[index[{i, i}]] = 1;
        idem.push_back(e);
    }
    return std::make_shared<FinAlgebra>(p, std::vector<uint64_t>(r, p), std::move(mult), one, idem,
                                        "upper_triangular:" + std::to_string(p) + ":" + std::to_string(n));
}

} // namespace

AlgebraPtr make_preset(const std::string& spec) {
    size_t pos = spec.find(':');
    std::string kind = spec.substr(0, pos);
    std::string rest = pos == std::string::npos ? "" : spec.substr(pos + 1);
    if (kind == "dual_numbers") {
        uint64_t p = parse_num(rest, 2, 1u << 20, "prime");
        if (!is_prime(p)) throw ValidationError("preset: dual_numbers needs a prime");
        return dual_numbers(p);
    }
    if (kind == "zmod") return zmod(parse_num(rest, 2, 1u << 20, "modulus"));
    if (kind == "trunc_poly") {
        auto parts = split(rest, ':');
        if (parts.size() != 2) throw ValidationError("preset: trunc_poly:p:n");
        uint64_t p = parse_num(parts[0], 2, 1u << 20, "prime");
        if (!is_prime(p)) throw ValidationError("preset: trunc_poly needs a prime");
        return trunc_poly(p, parse_num(parts[1], 1, 16, "degree"));
    }
    if (kind == "path_algebra") {
        size_t last = rest.rfind(':');
        if (last == std::string::npos) throw ValidationError("preset: path_algebra:<arrows>:p");
        uint64_t p = parse_num(rest.substr(last + 1), 2, 1u << 20, "prime");
        if (!is_prime(p)) throw ValidationError("preset: path_algebra needs a prime");
        return path_algebra(rest.substr(0, last), p);
    }
    if (kind == "product") {
        size_t comma = rest.find(',');
        if (comma == std::string::npos) throw ValidationError("preset: product:<a>,<b>");
        AlgebraPtr A = make_preset(rest.substr(0, comma));
        AlgebraPtr B = make_preset(rest.substr(comma + 1));
        return product_algebra(A, B, "product:" + rest);
    }
    if (kind == "upper_triangular") {
        auto parts = split(rest, ':');
        if (parts.size() != 2) throw ValidationError("preset: upper_triangular:p:n");
        uint64_t p = parse_num(parts[0], 2, 1u << 20, "prime");
        if (!is_prime(p)) throw ValidationError("preset: upper_triangular needs a prime");
        return upper_triangular(p, parse_num(parts[1], 1, 8, "size"));
    }
    throw ValidationError("preset: unknown kind '" + kind + "'");
}

std::vector<std::string> preset_names() {
    return {"dual_numbers:p", "zmod:n", "trunc_poly:p:n", "path_algebra:<u->v,...>:p",
            "product:<a>,<b>", "upper_triangular:p:n"};
}

} // namespace dlab
