#pragma once

#include "csas/error.hpp"

namespace check {

// True when fn throws csas::Error with exactly this code.
template <typename Fn>
bool throws_code(csas::ErrorCode code, Fn&& fn) {
  try {
    fn();
  } catch (const csas::Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace check
