#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dualrep {

enum class ErrorKind {
    invalid_parameter,
    not_projective,
    not_invariant,
    internal_consistency,
    construction_failure,
    precondition,
    no_witness,
    parameterization_failure,
    invalid_pair,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace dualrep
