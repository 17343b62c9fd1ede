#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fqdyn::detail {

/// Product of two coefficient vectors with entries in [0, p), reduced mod p.
/// Uses number-theoretic transforms over one to three word primes, chosen so
/// that the exact integer convolution is recoverable by CRT.
std::vector<std::uint64_t> convolve_mod(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                        std::uint64_t p);

}  // namespace fqdyn::detail
