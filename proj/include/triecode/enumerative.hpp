#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "triecode/bigint.hpp"

namespace triecode {

// Enumerative (combinatorial number system) code for fixed-weight bit blocks:
// a block of width w with x ones is identified by its colex rank among all
// C(w, x) same-weight blocks. The payload contract is ceil(log2 C(w, x)) bits
// per block.

// Rank of the block: sum over the j-th smallest one-position p_j (0-based) of
// C(p_j, j), j = 1..x.
mpz_class enumerative_encode(std::span<const std::uint8_t> bits);

// Inverse; offset must lie in [0, C(width, ones)).
std::vector<std::uint8_t> enumerative_decode(std::uint32_t width, std::uint32_t ones,
                                             const mpz_class& offset);

// ceil(log2 C(width, ones)): exact bit budget of one block.
std::uint64_t enumerative_code_bits(std::uint32_t width, std::uint32_t ones);

}  // namespace triecode
