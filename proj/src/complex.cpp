#include "brownlevi/complex.hpp"

#include <algorithm>

namespace brownlevi {

std::size_t ChainHash::operator()(const Chain& c) const {
    std::size_t h = 0x84222325u + c.size();
    for (int v : c) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ull + (h >> 17);
    return h;
}

std::optional<int> ChainComplex::find(const Chain& c) const {
    auto it = index.find(c);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

bool ChainComplex::contains_vertex(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

ChainComplex order_complex(const PosetPtr& poset, std::vector<int> vertices, Anchor anchor, int anchor_id,
                           const Limits& limits) {
    ChainComplex c;
    c.poset = poset;
    c.anchor = anchor;
    c.anchor_id = anchor == Anchor::None ? -1 : anchor_id;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (anchor != Anchor::None) {
        vertices.erase(std::remove(vertices.begin(), vertices.end(), anchor_id), vertices.end());
        for (int v : vertices) {
            const bool ok = anchor == Anchor::Bottom ? poset->less(anchor_id, v) : poset->less(v, anchor_id);
            if (!ok) throw Error(ErrorKind::InvalidArgument, "anchor is not comparable with every vertex");
        }
    }
    c.vertices = vertices;
    std::vector<char> in(static_cast<std::size_t>(poset->size()), 0);
    for (int v : vertices) in[static_cast<std::size_t>(v)] = 1;
    const std::size_t bound = limits.max_simplices * 10;
    auto emit = [&](const Chain& ch) {
        Chain full;
        if (anchor == Anchor::Bottom) full.push_back(anchor_id);
        full.insert(full.end(), ch.begin(), ch.end());
        if (anchor == Anchor::Top) full.push_back(anchor_id);
        c.index.emplace(full, static_cast<int>(c.chains.size()));
        c.chains.push_back(std::move(full));
        if (c.chains.size() > bound) throw Error(ErrorKind::TooLargeComplex, "chain enumeration exceeds the bound");
    };
    if (anchor != Anchor::None) emit({});
    Chain cur;
    std::function<void(int)> dfs = [&](int v) {
        cur.push_back(v);
        emit(cur);
        for (int w : poset->above(v))
            if (in[static_cast<std::size_t>(w)]) dfs(w);
        cur.pop_back();
    };
    for (int v : vertices) dfs(v);
    return c;
}

Chain conjugate_chain(const SubgroupPoset& P, const Chain& c, Elem g) {
    Chain out;
    out.reserve(c.size());
    for (int v : c) out.push_back(P.conjugate_id(v, g));
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup chain_stabilizer(const SubgroupPoset& P, const Chain& c) {
    Subgroup S = whole_group(P.group());
    for (int v : c) {
        const Subgroup N = P.normalizer(v);
        if (N.order() == S.order() && N == S) continue;
        S = intersection(S, N);
    }
    return S;
}

ChainOrbitTable chains_of(ChainComplex complex) {
    ChainOrbitTable t;
    t.complex = std::move(complex);
    const ChainComplex& c = t.complex;
    const SubgroupPoset& P = *c.poset;
    const std::uint64_t order = P.group()->order();
    t.orbit_of.assign(c.size(), -1);
    Chain img;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (t.orbit_of[i] >= 0) continue;
        const int oid = static_cast<int>(t.orbits.size());
        t.orbit_of[i] = oid;
        std::vector<int> queue{static_cast<int>(i)};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const Chain& ch = c.chains[static_cast<std::size_t>(queue[q])];
            for (std::size_t s = 0; s < P.generator_count(); ++s) {
                img.clear();
                for (int v : ch) img.push_back(P.act(v, s));
                std::sort(img.begin(), img.end());
                auto j = c.find(img);
                if (!j) throw Error(ErrorKind::InvalidArgument, "complex is not stable under the group");
                if (t.orbit_of[static_cast<std::size_t>(*j)] < 0) {
                    t.orbit_of[static_cast<std::size_t>(*j)] = oid;
                    queue.push_back(*j);
                }
            }
        }
        ChainOrbit o;
        o.rep = static_cast<int>(i);
        o.size = queue.size();
        o.dim = c.dim(i);
        o.stabilizer = chain_stabilizer(P, c.chains[i]);
        if (o.size * o.stabilizer.order() != order)
            throw Error(ErrorKind::InvalidArgument, "orbit-stabilizer mismatch on a chain orbit");
        t.orbits.push_back(std::move(o));
    }
    return t;
}

long long euler_characteristic(const ChainComplex& c) {
    long long chi = 0;
    for (std::size_t i = 0; i < c.size(); ++i) chi += (c.dim(i) % 2 == 0) ? 1 : -1;
    return chi;
}

long long reduced_euler_characteristic(const ChainComplex& c) {
    const long long chi = euler_characteristic(c);
    return c.size() == 0 ? chi : chi - 1;
}

ChainComplex fixed_subcomplex(const ChainComplex& c, const Subgroup& H, const Limits& limits) {
    std::vector<int> fixed;
    for (int v : c.vertices)
        if (normalizes_all(H, c.poset->member(v))) fixed.push_back(v);
    return order_complex(c.poset, fixed, c.anchor, c.anchor_id, limits);
}

BigInt alternating_sum(const ChainOrbitTable& t, const GroupFunction& f) {
    BigInt s = 0;
    for (const auto& o : t.orbits) {
        const BigInt v = f(o.stabilizer);
        if (o.dim % 2 == 0)
            s += v;
        else
            s -= v;
    }
    return s;
}

BrownCongruence brown_congruence_check(const GroupPtr& G, int ell, const Limits& limits) {
    auto P = enumerate_ell_subgroups(G, ell, trivial_subgroup(G), limits);
    const LPoset L = make_lposet(P, ell, trivial_subgroup(G), LPosetKind::SStar);
    const ChainComplex c = order_complex(P, L.vertices, Anchor::None, -1, limits);
    BrownCongruence r;
    r.chi = euler_characteristic(c);
    r.sylow_order = ell_part(BigInt(G->order()), ell);
    r.pass = (BigInt(r.chi) - 1) % r.sylow_order == 0;
    return r;
}

}  // namespace brownlevi
