#pragma once

#include <optional>

#include "gpfree/errors.hpp"

namespace support {

// Runs f and reports the structured error code it threw, if any.
template <typename F>
std::optional<gpfree::errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const gpfree::error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace support
