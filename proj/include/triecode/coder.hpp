#pragma once

#include <cstdint>
#include <vector>

#include "triecode/bigint.hpp"
#include "triecode/trie.hpp"

namespace triecode {

// Exact interval state [l, l + s) of the arithmetic coder.
struct RationalInterval {
    mpq_class l = 0;
    mpq_class s = 1;

    void check() const {
        TRIECODE_CHECK(l >= 0 && s > 0 && l + s <= 1, "interval left [0,1)");
    }
};

// Arithmetic code of a trie: d payload bits (the truncated interval
// midpoint) plus the k-order model tables needed to invert it.
struct TrieCode {
    std::uint32_t k = 0;
    std::uint64_t n = 0;
    Alphabet alphabet;
    ContextStats model;

    std::uint64_t d = 0;                 // payload bit count, ceil(log2(2/s))
    std::vector<std::uint8_t> payload;   // MSB-first, zero-padded to bytes

    // Final interval, kept for diagnostics (not serialized).
    RationalInterval final_interval;

    bool payload_bit(std::uint64_t i) const {  // 1-based
        return payload[(i - 1) / 8] >> (7 - (i - 1) % 8) & 1;
    }
    // Truncated midpoint sum_{i<=d} b_i 2^-i as an exact rational.
    mpq_class truncated_value() const;
};

// Iterates nodes in pre-order and symbols in alphabet order, shrinking the
// interval by p_w(c) / (1 - p_w(c)); emits the first d = ceil(log2(2/s))
// bits of the midpoint. d <= n H_k + 2 and -log2 s = n H_k exactly.
TrieCode compress(const Trie& t, std::uint32_t k);

// Pre-order simulation driven by exact comparisons of the truncated value
// against the sub-interval boundaries; inverse of compress.
Trie decompress(const TrieCode& code);

// Model budget of the reachability bound: (sigma + 1) sigma^k ceil(log2 n).
std::uint64_t model_size_bits(std::size_t sigma, std::uint32_t k, std::uint64_t n);

}  // namespace triecode
