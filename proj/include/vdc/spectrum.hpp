#pragma once

#include <vector>

#include "vdc/arith.hpp"
#include "vdc/error.hpp"

namespace vdc {

// Shifted primes p-1 that do not exceed n.
struct Spectrum {
  u64 n = 0;
  std::vector<u64> freqs;
};

inline Spectrum build_spectrum(u64 n) {
  if (n == 0) throw DomainError("build_spectrum: n must be positive");
  if (n > kMaxFactorizable) throw RangeError("build_spectrum: n too large");
  check_sieve_budget(n + 1);
  Spectrum s;
  s.n = n;
  for_each_prime(n + 1, [&](u64 p) { s.freqs.push_back(p - 1); });
  return s;
}

}  // namespace vdc
