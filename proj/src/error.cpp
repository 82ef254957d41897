#include "brownlevi/error.hpp"

namespace brownlevi {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotCyclotomicProduct: return "NotCyclotomicProduct";
        case ErrorKind::InvalidPrime: return "InvalidPrime";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::TooManySubgroups: return "TooManySubgroups";
        case ErrorKind::TooLargeComplex: return "TooLargeComplex";
        case ErrorKind::TooLargeForCharacters: return "TooLargeForCharacters";
        case ErrorKind::NotCommuting: return "NotCommuting";
        case ErrorKind::NotAbelian: return "NotAbelian";
        case ErrorKind::DefiningCharacteristic: return "DefiningCharacteristic";
        case ErrorKind::InDomain: return "InDomainError";
        case ErrorKind::NotEClosed: return "NotEClosed";
        case ErrorKind::Hypothesis: return "HypothesisError";
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::Config: return "ConfigError";
    }
    return "Error";
}

bool Error::is_resource_limit() const {
    switch (kind_) {
        case ErrorKind::TooLarge:
        case ErrorKind::TooManySubgroups:
        case ErrorKind::TooLargeComplex:
        case ErrorKind::TooLargeForCharacters:
            return true;
        default:
            return false;
    }
}

}  // namespace brownlevi
