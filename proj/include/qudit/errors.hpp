// Error taxonomy shared by all modules. Every failure is reported as a
// DomainError carrying a stable name that the CLI surfaces verbatim.
#pragma once

#include <stdexcept>
#include <string>

namespace qudit {

enum class errc {
  not_invertible,
  dimension_mismatch,
  not_symplectic,
  phase_parity_violation,
  index_out_of_range,
  even_dimension,
  inconsistent,
  internal_contract_violation,
  non_commuting,
  wrong_group_size,
  phase_condition_violation,
  label_phase_mismatch,
  invalid_parameter,
  invalid_operation,
  dimension_cap,
  shape_mismatch,
};

const char* errc_name(errc code) noexcept;

class DomainError : public std::runtime_error {
public:
  DomainError(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw DomainError(code, message);
}

inline void require(bool ok, errc code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace qudit
