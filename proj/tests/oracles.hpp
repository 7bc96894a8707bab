#pragma once

#include <cstdint>
#include <vector>

// Test-side reference implementations, independent of the library.
namespace oracle {

// Full 2^k x 2^k Laver table by the defining recursion, rows from the top down.
inline std::vector<std::vector<std::uint32_t>> laver_rows(unsigned k) {
  const std::uint32_t n = 1u << k;
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n, 0));
  for (std::uint32_t b = 0; b < n; ++b) t[0][b] = b;
  for (std::uint32_t m = n; m-- > 1;) {
    t[m][1] = (m + 1) & (n - 1);
    for (std::uint32_t b = 2; b < n; ++b) t[m][b] = t[t[m][b - 1]][t[m][1]];
  }
  return t;
}

inline unsigned valuation(std::uint32_t a, unsigned k) {
  if (a == 0) return k;
  unsigned v = 0;
  while (!(a & 1)) {
    a >>= 1;
    ++v;
  }
  return v;
}

}  // namespace oracle
