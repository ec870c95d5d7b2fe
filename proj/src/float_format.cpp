#include "baskafuzz/float_format.hpp"

#include <array>
#include <charconv>

namespace baskafuzz {

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return {buffer.data(), result.ptr};
}

}  // namespace baskafuzz
