#pragma once

// Small helpers shared by the unit tests.

#include <string>
#include <utility>

#include "core/common.hpp"

namespace testq {

// Runs f and reports the Status it failed with (Ok when it did not throw).
template <typename F>
qkron::Status thrown_status(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const qkron::Error& e) {
    return e.status();
  }
  return qkron::Status::Ok;
}

template <typename F>
std::string thrown_message(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const qkron::Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace testq
