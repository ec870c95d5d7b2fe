#pragma once

#include <optional>

namespace baskafuzz {

/// Thread cap from BASKAFUZZ_THREADS, if set to a positive integer.
std::optional<int> thread_cap_from_env();

/// Applies BASKAFUZZ_THREADS to the OpenMP runtime. Returns the thread
/// count parallel regions will use.
int apply_thread_cap_from_env();

}  // namespace baskafuzz
