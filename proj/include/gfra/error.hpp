#ifndef GFRA_ERROR_HPP
#define GFRA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gfra {

enum class ErrorCode {
  not_normalized,
  negative_mass,
  degree_out_of_range,
  too_many_replicas,
  duplicate_user_id,
  unknown_user,
  priority_out_of_range,
  count_mismatch,
  negative_count,
  syntax_error,
  unknown_key,
  missing_section,
  invalid_value,
  io_error,
  invalid_argument,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace gfra

#endif
