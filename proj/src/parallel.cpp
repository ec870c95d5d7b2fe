#include "baskafuzz/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace baskafuzz {

std::optional<int> thread_cap_from_env() {
  const char* raw = std::getenv("BASKAFUZZ_THREADS");
  if (raw == nullptr) return std::nullopt;
  int value = 0;
  const char* end = raw + std::strlen(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value <= 0) return std::nullopt;
  return value;
}

int apply_thread_cap_from_env() {
#ifdef _OPENMP
  if (const auto cap = thread_cap_from_env()) omp_set_num_threads(*cap);
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace baskafuzz
