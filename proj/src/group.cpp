#include "brownlevi/group.hpp"

#include "brownlevi/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace brownlevi {
namespace {

constexpr Elem kEmpty = 0xFFFFFFFFu;

std::uint64_t fnv(const std::uint8_t* b, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= b[i];
        h *= 1099511628211ull;
    }
    return h ^ (h >> 29);
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

void mat_mul_bytes(const FiniteField& F, int n, const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::uint8_t s = 0;
            for (int k = 0; k < n; ++k) {
                const std::uint8_t x = a[i * n + k];
                if (x) s = F.add(s, F.mul(x, b[k * n + j]));
            }
            out[i * n + j] = s;
        }
}

}  // namespace

ElemSet::ElemSet(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.assign(cap, kEmpty);
}

void ElemSet::grow() {
    std::vector<Elem> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    count_ = 0;
    for (Elem x : old)
        if (x != kEmpty) insert(x);
}

bool ElemSet::insert(Elem x) {
    if (2 * (count_ + 1) > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t h = mix(x) & mask;
    while (slots_[h] != kEmpty) {
        if (slots_[h] == x) return false;
        h = (h + 1) & mask;
    }
    slots_[h] = x;
    ++count_;
    return true;
}

bool ElemSet::contains(Elem x) const {
    const std::size_t mask = slots_.size() - 1;
    std::size_t h = mix(x) & mask;
    while (slots_[h] != kEmpty) {
        if (slots_[h] == x) return true;
        h = (h + 1) & mask;
    }
    return false;
}

std::uint64_t MatrixGroup::hash_bytes(const std::uint8_t* b) const { return fnv(b, nn_); }

GroupPtr MatrixGroup::generate(std::shared_ptr<const FiniteField> F, int n, const std::vector<FqMatrix>& gens,
                               std::string name, std::uint64_t max_order) {
    std::shared_ptr<MatrixGroup> G(new MatrixGroup());
    G->name_ = std::move(name);
    G->field_ = F;
    G->n_ = n;
    G->nn_ = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    const std::size_t nn = G->nn_;
    std::vector<FqMatrix> ginv;
    for (const auto& g : gens) {
        if (g.rows != n || g.cols != n) throw Error(ErrorKind::InvalidArgument, "generator has wrong shape");
        FqMatrix inv;
        if (!linalg::invert(*F, g, inv)) throw Error(ErrorKind::InvalidArgument, "generator is singular");
        ginv.push_back(inv);
    }
    // Breadth-first enumeration with a temporary hash index.
    std::vector<std::uint8_t> raw;
    std::vector<std::uint32_t> parent, via;
    std::vector<std::uint32_t> tab(1024, kEmpty);
    auto lookup_or_insert = [&](const std::uint8_t* b, bool& inserted) -> std::uint32_t {
        std::uint64_t mask = tab.size() - 1;
        std::uint64_t h = fnv(b, nn) & mask;
        while (tab[h] != kEmpty) {
            if (std::equal(b, b + nn, raw.data() + static_cast<std::size_t>(tab[h]) * nn)) {
                inserted = false;
                return tab[h];
            }
            h = (h + 1) & mask;
        }
        const auto id = static_cast<std::uint32_t>(raw.size() / nn);
        raw.insert(raw.end(), b, b + nn);
        tab[h] = id;
        inserted = true;
        if (2 * (id + 1) > tab.size()) {
            std::vector<std::uint32_t> nt(tab.size() * 2, kEmpty);
            mask = nt.size() - 1;
            for (std::uint32_t k = 0; k <= id; ++k) {
                std::uint64_t hh = fnv(raw.data() + static_cast<std::size_t>(k) * nn, nn) & mask;
                while (nt[hh] != kEmpty) hh = (hh + 1) & mask;
                nt[hh] = k;
            }
            tab.swap(nt);
        }
        return id;
    };
    const FqMatrix I = FqMatrix::identity(n);
    bool ins = false;
    lookup_or_insert(I.a.data(), ins);
    parent.push_back(0);
    via.push_back(0);
    std::vector<std::uint8_t> buf(nn);
    for (std::uint32_t cur = 0; cur < raw.size() / nn; ++cur) {
        const std::vector<std::uint8_t> x(raw.begin() + static_cast<std::ptrdiff_t>(cur * nn),
                                          raw.begin() + static_cast<std::ptrdiff_t>((cur + 1) * nn));
        for (std::size_t s = 0; s < gens.size(); ++s) {
            mat_mul_bytes(*F, n, x.data(), gens[s].a.data(), buf.data());
            lookup_or_insert(buf.data(), ins);
            if (ins) {
                parent.push_back(cur);
                via.push_back(static_cast<std::uint32_t>(s));
                if (parent.size() > max_order)
                    throw Error(ErrorKind::TooLarge, G->name_ + " exceeds the order bound " + std::to_string(max_order));
            }
        }
    }
    const std::size_t N = raw.size() / nn;
    // Inverses along the BFS tree: (p s)^{-1} = s^{-1} p^{-1}.
    std::vector<std::uint8_t> rawinv(raw.size());
    std::copy(I.a.begin(), I.a.end(), rawinv.begin());
    for (std::size_t k = 1; k < N; ++k)
        mat_mul_bytes(*F, n, ginv[via[k]].a.data(), rawinv.data() + static_cast<std::size_t>(parent[k]) * nn,
                      rawinv.data() + k * nn);
    std::vector<std::uint32_t> order(N);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(raw.begin() + static_cast<std::ptrdiff_t>(a * nn),
                                            raw.begin() + static_cast<std::ptrdiff_t>((a + 1) * nn),
                                            raw.begin() + static_cast<std::ptrdiff_t>(b * nn),
                                            raw.begin() + static_cast<std::ptrdiff_t>((b + 1) * nn));
    });
    G->count_ = N;
    G->entries_.resize(raw.size());
    for (std::size_t k = 0; k < N; ++k)
        std::copy(raw.begin() + static_cast<std::ptrdiff_t>(order[k] * nn),
                  raw.begin() + static_cast<std::ptrdiff_t>((order[k] + 1) * nn),
                  G->entries_.begin() + static_cast<std::ptrdiff_t>(k * nn));
    G->build_index();
    G->inverse_.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        auto inv = G->find(rawinv.data() + static_cast<std::size_t>(order[k]) * nn);
        G->inverse_[k] = *inv;
    }
    G->identity_ = *G->find(I);
    for (const auto& g : gens) {
        const Elem e = *G->find(g);
        if (e != G->identity_ && std::find(G->gens_.begin(), G->gens_.end(), e) == G->gens_.end()) G->gens_.push_back(e);
    }
    return G;
}

void MatrixGroup::build_index() {
    std::size_t cap = 16;
    while (cap < 2 * count_) cap <<= 1;
    table_.assign(cap, kEmpty);
    mask_ = cap - 1;
    for (std::size_t k = 0; k < count_; ++k) {
        std::uint64_t h = hash_bytes(data(static_cast<Elem>(k))) & mask_;
        while (table_[h] != kEmpty) h = (h + 1) & mask_;
        table_[h] = static_cast<Elem>(k);
    }
}

FqMatrix MatrixGroup::matrix(Elem x) const {
    FqMatrix m(n_, n_);
    std::copy(data(x), data(x) + nn_, m.a.begin());
    return m;
}

std::optional<Elem> MatrixGroup::find(const std::uint8_t* b) const {
    std::uint64_t h = hash_bytes(b) & mask_;
    while (table_[h] != kEmpty) {
        const Elem e = table_[h];
        if (std::equal(b, b + nn_, data(e))) return e;
        h = (h + 1) & mask_;
    }
    return std::nullopt;
}

std::optional<Elem> MatrixGroup::find(const FqMatrix& m) const {
    if (m.rows != n_ || m.cols != n_) return std::nullopt;
    return find(m.a.data());
}

Elem MatrixGroup::mul(Elem a, Elem b) const {
    thread_local std::vector<std::uint8_t> buf;
    buf.resize(nn_);
    mat_mul_bytes(*field_, n_, data(a), data(b), buf.data());
    auto r = find(buf.data());
    if (!r) throw Error(ErrorKind::InvalidArgument, "product left the group");
    return *r;
}

Elem MatrixGroup::pow(Elem x, std::uint64_t e) const {
    Elem r = identity_;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

std::uint64_t MatrixGroup::element_order(Elem x) const {
    std::uint64_t k = 1;
    for (Elem y = x; y != identity_; y = mul(y, x)) ++k;
    return k;
}

std::uint64_t fingerprint_of(const std::vector<Elem>& sorted) {
    std::uint64_t h = mix(sorted.size());
    for (Elem x : sorted) h = mix(h ^ x);
    return h;
}

Subgroup::Subgroup(GroupPtr G, std::vector<Elem> sorted_elements, std::vector<Elem> gens) : d_(std::make_shared<Data>()) {
    d_->G = std::move(G);
    d_->elems = std::move(sorted_elements);
    d_->fingerprint = fingerprint_of(d_->elems);
    if (!gens.empty()) {
        std::call_once(d_->gens_once, [&] { d_->gens = std::move(gens); });
    }
}

bool Subgroup::contains(Elem x) const { return std::binary_search(d_->elems.begin(), d_->elems.end(), x); }

long Subgroup::index_of(Elem x) const {
    auto it = std::lower_bound(d_->elems.begin(), d_->elems.end(), x);
    if (it == d_->elems.end() || *it != x) return -1;
    return static_cast<long>(it - d_->elems.begin());
}

const std::vector<Elem>& Subgroup::generators() const {
    std::call_once(d_->gens_once, [this] {
        const MatrixGroup& G = *d_->G;
        std::vector<Elem> gens;
        ElemSet cur(d_->elems.size());
        cur.insert(G.identity());
        std::vector<Elem> list{G.identity()};
        for (Elem x : d_->elems) {
            if (cur.contains(x)) continue;
            gens.push_back(x);
            // Extend the closure by the new generator.
            for (std::size_t i = 0; i < list.size(); ++i) {
                for (Elem s : gens) {
                    const Elem y = G.mul(list[i], s);
                    if (cur.insert(y)) list.push_back(y);
                }
            }
            if (list.size() == d_->elems.size()) break;
        }
        d_->gens = std::move(gens);
    });
    return d_->gens;
}

bool Subgroup::is_abelian() const {
    std::call_once(d_->abelian_once, [this] {
        const auto& g = generators();
        const MatrixGroup& G = ambient();
        bool ab = true;
        for (std::size_t i = 0; i < g.size() && ab; ++i)
            for (std::size_t j = i + 1; j < g.size() && ab; ++j)
                if (G.mul(g[i], g[j]) != G.mul(g[j], g[i])) ab = false;
        d_->abelian = ab;
    });
    return d_->abelian;
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
    if (o.order() % order() != 0) return false;
    return std::includes(o.elements().begin(), o.elements().end(), elements().begin(), elements().end());
}

bool Subgroup::same_as(const Subgroup& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->fingerprint == o.d_->fingerprint && d_->elems == o.d_->elems;
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (order() != o.order()) return order() < o.order();
    return elements() < o.elements();
}

std::string Subgroup::describe() const {
    std::ostringstream os;
    os << "<order " << order() << (is_abelian() ? ", abelian" : "") << ">";
    return os.str();
}

Subgroup whole_group(const GroupPtr& G) {
    std::vector<Elem> all(G->order());
    std::iota(all.begin(), all.end(), 0u);
    return Subgroup(G, std::move(all), G->generators());
}

Subgroup trivial_subgroup(const GroupPtr& G) { return Subgroup(G, {G->identity()}); }

Subgroup subgroup_closure(const GroupPtr& G, const std::vector<Elem>& gens_in) {
    std::vector<Elem> gens;
    for (Elem g : gens_in)
        if (g != G->identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    ElemSet seen(16);
    std::vector<Elem> list{G->identity()};
    seen.insert(G->identity());
    for (std::size_t i = 0; i < list.size(); ++i)
        for (Elem s : gens) {
            const Elem y = G->mul(list[i], s);
            if (seen.insert(y)) list.push_back(y);
        }
    std::sort(list.begin(), list.end());
    if (gens.empty()) return Subgroup(G, std::move(list));
    return Subgroup(G, std::move(list), std::move(gens));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
    if (b.is_subgroup_of(a)) return a;
    if (a.is_subgroup_of(b)) return b;
    std::vector<Elem> g = a.generators();
    for (Elem x : b.generators()) g.push_back(x);
    return subgroup_closure(a.ambient_ptr(), g);
}

Subgroup join_element(const Subgroup& a, Elem x) {
    if (a.contains(x)) return a;
    std::vector<Elem> g = a.generators();
    g.push_back(x);
    return subgroup_closure(a.ambient_ptr(), g);
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
    std::vector<Elem> out;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                          std::back_inserter(out));
    return Subgroup(a.ambient_ptr(), std::move(out));
}

Subgroup filter_subgroup(const Subgroup& H, const std::function<bool(Elem)>& pred) {
    std::vector<Elem> out;
    for (Elem x : H.elements())
        if (pred(x)) out.push_back(x);
    return Subgroup(H.ambient_ptr(), std::move(out));
}

Subgroup conjugate(const Subgroup& S, Elem g) {
    const MatrixGroup& G = S.ambient();
    std::vector<Elem> out;
    out.reserve(S.order());
    for (Elem s : S.elements()) out.push_back(G.conj(s, g));
    std::sort(out.begin(), out.end());
    std::vector<Elem> gens;
    for (Elem s : S.generators()) gens.push_back(G.conj(s, g));
    return Subgroup(S.ambient_ptr(), std::move(out), std::move(gens));
}

bool normalizes(Elem g, const Subgroup& S) {
    const MatrixGroup& G = S.ambient();
    for (Elem s : S.generators())
        if (!S.contains(G.conj(s, g))) return false;
    return true;
}

bool normalizes_all(const Subgroup& H, const Subgroup& S) {
    for (Elem g : H.generators())
        if (!normalizes(g, S)) return false;
    return true;
}

Subgroup centralizer_in(const Subgroup& H, const Subgroup& S) {
    const MatrixGroup& G = H.ambient();
    const auto& gens = S.generators();
    return filter_subgroup(H, [&](Elem x) {
        for (Elem s : gens)
            if (G.mul(x, s) != G.mul(s, x)) return false;
        return true;
    });
}

Subgroup normalizer_in(const Subgroup& H, const Subgroup& S) {
    if (S.is_trivial()) return H;
    return filter_subgroup(H, [&](Elem x) { return normalizes(x, S); });
}

Subgroup commutator_subgroup(const Subgroup& S) {
    const MatrixGroup& G = S.ambient();
    const auto& gens = S.generators();
    std::vector<Elem> comms;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(G.commutator(gens[i], gens[j]));
    Subgroup D = subgroup_closure(S.ambient_ptr(), comms);
    // Normal closure in S.
    bool changed = true;
    while (changed) {
        changed = false;
        for (Elem g : gens) {
            for (Elem d : std::vector<Elem>(D.generators())) {
                const Elem c = G.conj(d, g);
                if (!D.contains(c)) {
                    D = join_element(D, c);
                    changed = true;
                }
            }
        }
    }
    return D;
}

Subgroup product_subgroup(const Subgroup& A, const Subgroup& B) {
    Subgroup J = join(A, B);
    const Subgroup I = intersection(A, B);
    if (J.order() * I.order() != A.order() * B.order())
        throw Error(ErrorKind::NotCommuting, "subgroups do not permute");
    return J;
}

Subgroup sylow_subgroup(const Subgroup& H, int ell) {
    const std::uint64_t target = static_cast<std::uint64_t>(ell_part(BigInt(H.order()), ell));
    const MatrixGroup& G = H.ambient();
    Subgroup P = trivial_subgroup(H.ambient_ptr());
    while (P.order() < target) {
        const Subgroup N = normalizer_in(H, P);
        bool grown = false;
        for (Elem x : N.elements()) {
            if (P.contains(x)) continue;
            if (G.pow(x, target) != G.identity()) continue;
            P = join_element(P, x);
            grown = true;
            break;
        }
        if (!grown) throw Error(ErrorKind::InvalidArgument, "Sylow construction stalled");
    }
    return P;
}

Subgroup center(const Subgroup& H) { return centralizer_in(H, H); }

Subgroup ell_part_subgroup(const Subgroup& A, int ell) {
    const std::uint64_t part = static_cast<std::uint64_t>(ell_part(BigInt(A.order()), ell));
    const MatrixGroup& G = A.ambient();
    return filter_subgroup(A, [&](Elem x) { return G.pow(x, part) == G.identity(); });
}

int ClassData::l_ell(int ell) const {
    int c = 0;
    for (auto o : orders)
        if (o % static_cast<std::uint64_t>(ell) != 0) ++c;
    return c;
}

int ClassData::class_index(Elem x) const {
    const long i = group.index_of(x);
    if (i < 0) throw Error(ErrorKind::InvalidArgument, "element outside the group");
    return static_cast<int>(class_of[static_cast<std::size_t>(i)]);
}

ClassData conjugacy_classes(const Subgroup& H) {
    ClassData cd;
    cd.group = H;
    const MatrixGroup& G = H.ambient();
    const auto& elems = H.elements();
    const auto& gens = H.generators();
    const std::uint32_t unset = 0xFFFFFFFFu;
    cd.class_of.assign(elems.size(), unset);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (cd.class_of[i] != unset) continue;
        const auto cid = static_cast<std::uint32_t>(cd.reps.size());
        std::vector<Elem> orbit{elems[i]};
        cd.class_of[i] = cid;
        for (std::size_t t = 0; t < orbit.size(); ++t)
            for (Elem g : gens) {
                const Elem y = G.conj(orbit[t], g);
                const auto pos = static_cast<std::size_t>(H.index_of(y));
                if (cd.class_of[pos] == unset) {
                    cd.class_of[pos] = cid;
                    orbit.push_back(y);
                }
            }
        cd.reps.push_back(elems[i]);
        cd.sizes.push_back(orbit.size());
        cd.orders.push_back(G.element_order(elems[i]));
    }
    for (Elem r : cd.reps) cd.inverse_class.push_back(cd.class_index(G.inv(r)));
    return cd;
}

GroupPtr build_gl(int n, int q, std::uint64_t max_order) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "rank must be positive");
    auto F = FiniteField::make(q);
    BigInt predicted = order_poly_gl(n).evaluate(q);
    if (predicted > max_order)
        throw Error(ErrorKind::TooLarge, "GL(" + std::to_string(n) + "," + std::to_string(q) + ") has order " +
                                             predicted.str() + " above the bound " + std::to_string(max_order));
    std::vector<FqMatrix> gens;
    for (int i = 0; i < n; ++i) {
        FqMatrix d = FqMatrix::identity(n);
        d.at(i, i) = F->primitive();
        if (!d.is_identity()) gens.push_back(d);
    }
    for (int i = 0; i + 1 < n; ++i) {
        FqMatrix u = FqMatrix::identity(n), l = FqMatrix::identity(n);
        u.at(i, i + 1) = 1;
        l.at(i + 1, i) = 1;
        gens.push_back(u);
        gens.push_back(l);
    }
    return MatrixGroup::generate(F, n, gens, "GL(" + std::to_string(n) + "," + std::to_string(q) + ")", max_order);
}

GroupPtr build_sym(int n, std::uint64_t max_order) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "degree must be positive");
    BigInt fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (fact > max_order) throw Error(ErrorKind::TooLarge, "S_" + std::to_string(n) + " above the order bound");
    auto F = FiniteField::make(2);
    auto perm_matrix = [n](const std::vector<int>& img) {
        FqMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(img[i], i) = 1;
        return m;
    };
    std::vector<FqMatrix> gens;
    if (n >= 2) {
        std::vector<int> t(n), c(n);
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[0], t[1]);
        for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
        gens.push_back(perm_matrix(t));
        if (n > 2) gens.push_back(perm_matrix(c));
    }
    return MatrixGroup::generate(F, n, gens, "S_" + std::to_string(n), max_order);
}

GroupPtr build_from_generators(int q, int n, const std::vector<FqMatrix>& gens, const std::string& name,
                               std::uint64_t max_order) {
    return MatrixGroup::generate(FiniteField::make(q), n, gens, name, max_order);
}

}  // namespace brownlevi
