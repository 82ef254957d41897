#include "brownlevi/contractibility.hpp"

#include <algorithm>
#include <set>

namespace brownlevi {

ContractibilityCertificate join_contractibility_certificate(const PosetPtr& poset, const std::vector<int>& vertices_in,
                                                            int x0, const Subgroup& stabilizer, const Limits& limits) {
    ContractibilityCertificate cert;
    cert.x0 = x0;
    std::vector<int> vertices = vertices_in;
    std::sort(vertices.begin(), vertices.end());
    if (!std::binary_search(vertices.begin(), vertices.end(), x0)) {
        cert.detail = "x0 is not a vertex";
        return cert;
    }
    const SubgroupPoset& P = *poset;
    cert.lub.assign(vertices.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const int x = vertices[i];
        std::vector<int> ub;
        for (int u : vertices)
            if (P.leq(x, u) && P.leq(x0, u)) ub.push_back(u);
        for (int u : ub) {
            bool least = true;
            for (int w : ub)
                if (!P.leq(u, w)) {
                    least = false;
                    break;
                }
            if (least) {
                cert.lub[i] = u;
                break;
            }
        }
        if (cert.lub[i] < 0 && cert.failing_vertex < 0) cert.failing_vertex = x;
    }
    if (cert.failing_vertex >= 0) {
        cert.detail = "no least upper bound with x0";
        return cert;
    }
    const ChainComplex c = order_complex(poset, vertices, Anchor::None, -1, limits);
    cert.homology = homology(c, limits);
    cert.reduced_chi = reduced_euler_characteristic(c);
    // Fixed subposets under each cyclic subgroup of the stabilizer and the stabilizer itself.
    std::set<std::vector<int>> fixed_sets;
    auto fixed_by = [&](const std::function<bool(int)>& fixes) {
        std::vector<int> f;
        for (int v : vertices)
            if (fixes(v)) f.push_back(v);
        return f;
    };
    for (Elem g : stabilizer.elements()) fixed_sets.insert(fixed_by([&](int v) { return P.normalized_by(v, g); }));
    fixed_sets.insert(fixed_by([&](int v) { return normalizes_all(stabilizer, P.member(v)); }));
    for (const auto& f : fixed_sets) {
        ++cert.fixed_sets_checked;
        const ChainComplex fc = order_complex(poset, f, Anchor::None, -1, limits);
        if (f.empty() || reduced_euler_characteristic(fc) != 0) cert.fixed_sets_acyclic = false;
    }
    cert.pass = cert.homology.acyclic() && cert.reduced_chi == 0 && cert.fixed_sets_acyclic;
    if (!cert.pass) cert.detail = "homology or fixed-point check failed";
    return cert;
}

}  // namespace brownlevi
