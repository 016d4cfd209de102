#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace datum {

/// Failure codes shared by the whole library. Verification failures that are
/// part of normal operation (a law with counterexamples) are reported through
/// VerificationReport instead; Errc is for contract breaches.
enum class Errc {
  empty_alphabet,
  mixed_dimension,
  duplicate_member,
  invalid_character,
  arity_mismatch,
  domain_violation,
  budget_exhausted,
  mu_divergence,
  successor_overflow,
  out_of_grid,
  incomplete_table,
  bad_table_row,
  signature_mismatch,
  unknown_builtin,
  index_out_of_range,
  not_a_sub_alphabet,
  empty_witness,
  focal_domain_mismatch,
  kind_mismatch,
  unknown_node,
  duplicate_node,
  unverified_edge,
  duplicate_edge,
  unsupported_format,
  no_path,
  verification_failed,
  closure_cap_exceeded,
};

/// Stable identifier, e.g. "DomainViolation". Used in diagnostics and tests.
std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

} // namespace datum
