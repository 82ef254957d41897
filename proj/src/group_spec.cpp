#include "brownlevi/group_spec.hpp"

#include "brownlevi/numtheory.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace brownlevi {
namespace {

int parse_int(const std::string& key, const std::string& v) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw Error(ErrorKind::Parse, "BadInteger: field '" + key + "' has value '" + v + "'");
    return out;
}

}  // namespace

GroupSpec GroupSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "UnknownKind: missing ':' in '" + text + "'");
    const std::string kind = text.substr(0, colon);
    std::map<std::string, std::string> fields;
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, "MissingField: malformed item '" + item + "'");
        fields[item.substr(0, eq)] = item.substr(eq + 1);
    }
    auto need = [&](const std::string& key) {
        auto it = fields.find(key);
        if (it == fields.end()) throw Error(ErrorKind::Parse, "MissingField: '" + key + "' in '" + text + "'");
        return parse_int(key, it->second);
    };
    GroupSpec s;
    if (kind == "gl") {
        s.kind = Kind::GL;
        s.n = need("n");
        s.q = need("q");
        if (fields.size() != 2) throw Error(ErrorKind::Parse, "UnknownField in '" + text + "'");
        if (s.n < 1) throw Error(ErrorKind::Parse, "OutOfRange: n must be positive");
        auto pk = prime_power_decomposition(static_cast<std::uint64_t>(std::max(s.q, 0)));
        if (pk.first == 0) throw Error(ErrorKind::Parse, "InvalidFieldOrder: q = " + std::to_string(s.q));
        if (s.q > 256) throw Error(ErrorKind::Parse, "OutOfRange: q must be at most 256");
    } else if (kind == "perm") {
        s.kind = Kind::Sym;
        s.n = need("sym");
        if (fields.size() != 1) throw Error(ErrorKind::Parse, "UnknownField in '" + text + "'");
        if (s.n < 1 || s.n > 12) throw Error(ErrorKind::Parse, "OutOfRange: sym must lie in [1, 12]");
    } else if (kind == "cyc") {
        s.kind = Kind::Cyclic;
        s.n = need("n");
        if (fields.size() != 1) throw Error(ErrorKind::Parse, "UnknownField in '" + text + "'");
        if (s.n < 1 || s.n > 250) throw Error(ErrorKind::Parse, "OutOfRange: cyclic order must lie in [1, 250]");
    } else {
        throw Error(ErrorKind::Parse, "UnknownKind: '" + kind + "'");
    }
    return s;
}

std::string GroupSpec::to_string() const {
    if (kind == Kind::GL) return "gl:n=" + std::to_string(n) + ",q=" + std::to_string(q);
    if (kind == Kind::Cyclic) return "cyc:n=" + std::to_string(n);
    return "perm:sym=" + std::to_string(n);
}

GroupPtr build_group(const GroupSpec& spec, std::uint64_t max_order) {
    if (spec.is_gl()) return build_gl(spec.n, spec.q, max_order);
    if (spec.kind == GroupSpec::Kind::Cyclic) {
        std::uint64_t p = 2;
        while (!is_prime(p) || (p - 1) % static_cast<std::uint64_t>(spec.n) != 0) ++p;
        if (p > 251) throw Error(ErrorKind::TooLarge, "no prime field below 256 contains a cyclic group of order " + std::to_string(spec.n));
        const auto n = static_cast<std::uint64_t>(spec.n);
        auto has_order_n = [&](std::uint64_t x) {
            for (auto r : prime_factors(n))
                if (pow_mod(x, n / r, p) == 1) return false;
            return true;
        };
        std::uint64_t g = 1;
        for (std::uint64_t c = 2; c < p && !has_order_n(g); ++c) g = pow_mod(c, (p - 1) / n, p);
        FqMatrix m(1, 1);
        m.a[0] = static_cast<std::uint8_t>(g);
        return build_from_generators(static_cast<int>(p), 1, {m}, "C" + std::to_string(spec.n), max_order);
    }
    return build_sym(spec.n, max_order);
}

}  // namespace brownlevi
