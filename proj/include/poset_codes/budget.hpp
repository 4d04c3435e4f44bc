#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "errors.hpp"

namespace poset_codes {

// Upper bound on the number of items any exhaustive scan may visit.
struct Budget {
  static constexpr std::uint64_t kDefaultMaxEnum = std::uint64_t{1} << 22;

  std::uint64_t max_enum = kDefaultMaxEnum;

  void require(std::uint64_t cost, const std::string& what) const {
    if (cost > max_enum) {
      throw ResourceError(what + " needs " + std::to_string(cost) +
                          " items, above the enumeration bound --max-enum=" +
                          std::to_string(max_enum));
    }
  }
};

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

}  // namespace poset_codes
