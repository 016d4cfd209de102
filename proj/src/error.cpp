#include "datum/error.hpp"

namespace datum {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::empty_alphabet: return "EmptyAlphabet";
    case Errc::mixed_dimension: return "MixedDimension";
    case Errc::duplicate_member: return "DuplicateMember";
    case Errc::invalid_character: return "InvalidCharacter";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::domain_violation: return "DomainViolation";
    case Errc::budget_exhausted: return "BudgetExhausted";
    case Errc::mu_divergence: return "MuDivergence";
    case Errc::successor_overflow: return "SuccessorOverflow";
    case Errc::out_of_grid: return "OutOfGrid";
    case Errc::incomplete_table: return "IncompleteTable";
    case Errc::bad_table_row: return "BadTableRow";
    case Errc::signature_mismatch: return "SignatureMismatch";
    case Errc::unknown_builtin: return "UnknownBuiltin";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_a_sub_alphabet: return "NotASubAlphabet";
    case Errc::empty_witness: return "EmptyWitness";
    case Errc::focal_domain_mismatch: return "FocalDomainMismatch";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::duplicate_node: return "DuplicateNode";
    case Errc::unverified_edge: return "UnverifiedEdge";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::unsupported_format: return "UnsupportedFormat";
    case Errc::no_path: return "NoPath";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::closure_cap_exceeded: return "ClosureCapExceeded";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

} // namespace datum
