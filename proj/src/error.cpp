#include "dualrep/error.hpp"

namespace dualrep {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_parameter: return "invalid-parameter";
        case ErrorKind::not_projective: return "not-projective";
        case ErrorKind::not_invariant: return "not-invariant";
        case ErrorKind::internal_consistency: return "internal-consistency";
        case ErrorKind::construction_failure: return "construction-failure";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::no_witness: return "no-witness-exists";
        case ErrorKind::parameterization_failure: return "parameterization-failure";
        case ErrorKind::invalid_pair: return "invalid-pair";
    }
    return "unknown";
}

}  // namespace dualrep
