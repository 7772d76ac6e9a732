#pragma once

#include <stdexcept>
#include <string>

namespace gpfree {

// Structured error codes. The CLI maps these to stable names and exit codes,
// so every throwing path in the library goes through gpfree::error.
enum class errc {
  overflow,
  ratio_trivial,
  odd_length,
  window_too_small,
  empty_window,
  requires_h_above_e,
  parse_error,
  not_ascending,
  not_process_ready,
  invalid_argument,
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::overflow: return "overflow";
    case errc::ratio_trivial: return "ratio_trivial";
    case errc::odd_length: return "odd_length";
    case errc::window_too_small: return "window_too_small";
    case errc::empty_window: return "empty_window";
    case errc::requires_h_above_e: return "requires_h_above_e";
    case errc::parse_error: return "parse_error";
    case errc::not_ascending: return "not_ascending";
    case errc::not_process_ready: return "not_process_ready";
    case errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace gpfree
