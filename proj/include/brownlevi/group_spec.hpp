#pragma once

#include "brownlevi/group.hpp"

#include <string>

namespace brownlevi {

// Textual group description: "gl:n=<int>,q=<int>", "perm:sym=<int>" or
// "cyc:n=<int>" (cyclic, realised inside GL_1(p) for the least prime p = 1 mod n).
struct GroupSpec {
    enum class Kind { GL, Sym, Cyclic };
    Kind kind = Kind::GL;
    int n = 0;
    int q = 0;

    static GroupSpec parse(const std::string& text);
    std::string to_string() const;
    bool is_gl() const { return kind == Kind::GL; }
};

GroupPtr build_group(const GroupSpec& spec, std::uint64_t max_order);

}  // namespace brownlevi
