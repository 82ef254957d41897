#include "brownlevi/automorphism.hpp"

#include <algorithm>
#include <optional>

namespace brownlevi {
namespace {

std::optional<Elem> image(const MatrixGroup& G, const Automorphism& a, Elem x) {
    switch (a.kind) {
        case Automorphism::Kind::Inner:
            return G.conj(x, a.g);
        case Automorphism::Kind::FieldPower: {
            FqMatrix m = G.matrix(x);
            std::uint64_t e = 1;
            for (int i = 0; i < a.power; ++i) e *= static_cast<std::uint64_t>(G.field().p());
            for (auto& v : m.a) v = G.field().pow(v, e);
            return G.find(m);
        }
        case Automorphism::Kind::TransposeInverse:
            return G.find(linalg::transpose(G.matrix(G.inv(x))));
    }
    return std::nullopt;
}

}  // namespace

std::string Automorphism::describe() const {
    switch (kind) {
        case Kind::Inner: return "inner(" + std::to_string(g) + ")";
        case Kind::FieldPower: return "field-power(" + std::to_string(power) + ")";
        case Kind::TransposeInverse: return "transpose-inverse";
    }
    return "?";
}

Elem apply_automorphism(const MatrixGroup& G, const Automorphism& a, Elem x) {
    auto y = image(G, a, x);
    if (!y) throw Error(ErrorKind::InvalidArgument, a.describe() + " does not preserve " + G.name());
    return *y;
}

Subgroup apply_automorphism(const Automorphism& a, const Subgroup& S) {
    const MatrixGroup& G = S.ambient();
    std::vector<Elem> out;
    out.reserve(S.order());
    for (Elem x : S.elements()) out.push_back(apply_automorphism(G, a, x));
    std::sort(out.begin(), out.end());
    std::vector<Elem> gens;
    for (Elem x : S.generators()) gens.push_back(apply_automorphism(G, a, x));
    return Subgroup(S.ambient_ptr(), std::move(out), std::move(gens));
}

bool preserves(const MatrixGroup& G, const Automorphism& a) {
    for (Elem x : G.generators())
        if (!image(G, a, x)) return false;
    return true;
}

std::vector<Automorphism> standard_automorphisms(const GroupPtr& G) {
    std::vector<Automorphism> out;
    for (Elem g : G->generators()) out.push_back({Automorphism::Kind::Inner, g, 1});
    if (G->field().k() > 1) {
        Automorphism f{Automorphism::Kind::FieldPower, 0, 1};
        if (preserves(*G, f)) out.push_back(f);
    }
    Automorphism t{Automorphism::Kind::TransposeInverse, 0, 1};
    if (preserves(*G, t)) out.push_back(t);
    return out;
}

}  // namespace brownlevi
