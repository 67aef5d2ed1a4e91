#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrti {

enum class ErrorKind {
  invalid_argument,
  invalid_pair,
  invalid_params,
  numeric_failure,
  spin_wave_instability,
  gapless_mode,
  degenerate_quench,
  size_cap,
  domain_error,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lrti
