#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace brownlevi {

enum class ErrorKind {
    InvalidArgument,
    NotCyclotomicProduct,
    InvalidPrime,
    TooLarge,
    TooManySubgroups,
    TooLargeComplex,
    TooLargeForCharacters,
    NotCommuting,
    NotAbelian,
    DefiningCharacteristic,
    InDomain,
    NotEClosed,
    Hypothesis,
    Parse,
    Config,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    bool is_resource_limit() const;

private:
    ErrorKind kind_;
};

// Resource bounds shared by all modules.
struct Limits {
    std::uint64_t max_group_order = 2000000;
    std::uint64_t max_sylow_order = 4096;
    std::uint64_t max_subgroups = 20000;
    std::uint64_t max_simplices = 200000;
    std::uint64_t max_char_order = 100000;
    std::uint64_t max_char_classes = 300;
};

}  // namespace brownlevi
