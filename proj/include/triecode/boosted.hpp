#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "triecode/bitvector.hpp"
#include "triecode/enumerative.hpp"

namespace triecode {

// Fixed-block entropy-compressed bitvector: the input is cut into blocks of
// size b (the last may be shorter) and each block is stored as its
// enumerative code, so the payload is sum_i ceil(log2 C(|B^i|, x_i)) bits.
// Queries decode one block on demand (O(b) work).
class BoostedBitvector {
   public:
    BoostedBitvector() = default;
    BoostedBitvector(std::span<const std::uint8_t> bits, std::uint64_t block_size);

    // Rebuilds from directory data (deserialization path).
    BoostedBitvector(std::uint64_t m, std::uint64_t block_size,
                     std::vector<std::uint32_t> block_ones, std::vector<mpz_class> offsets);

    std::uint64_t size() const { return m_; }
    std::uint64_t ones() const { return ones_; }
    std::uint64_t block_size() const { return b_; }
    std::uint64_t num_blocks() const { return block_ones_.size(); }
    std::uint32_t block_ones(std::uint64_t i) const { return block_ones_[i]; }
    const mpz_class& block_offset(std::uint64_t i) const { return offsets_[i]; }
    std::uint64_t block_width(std::uint64_t i) const;
    // Cumulative ones before block i (the R table row).
    std::uint64_t pre_rank(std::uint64_t i) const { return pre_ranks_[i]; }

    std::uint64_t payload_bits() const { return payload_bits_; }
    std::uint64_t nonempty_blocks() const { return nonempty_blocks_; }

    bool get(std::uint64_t i) const;            // 1 <= i <= m
    std::uint64_t rank(std::uint64_t i) const;  // 0 <= i <= m
    std::int64_t prank(std::uint64_t i) const;  // R row + in-block partial rank
    std::uint64_t select(std::uint64_t j) const;  // binary search over pre_ranks

    std::vector<std::uint8_t> decode_block(std::uint64_t i) const;
    std::vector<std::uint8_t> decode_all() const;

   private:
    void rebuild_pre_ranks();

    std::uint64_t m_ = 0;
    std::uint64_t b_ = 1;
    std::uint64_t ones_ = 0;
    std::uint64_t payload_bits_ = 0;
    std::uint64_t nonempty_blocks_ = 0;
    std::vector<std::uint32_t> block_ones_;
    std::vector<mpz_class> offsets_;
    std::vector<std::uint64_t> pre_ranks_;
};

// Default block size b = max(8, ceil(sigma log^2 n)), capped so that
// on-demand block decode stays cheap.
std::uint64_t default_block_size(std::uint64_t n, std::size_t sigma);

// Unary overlay S = 1^{x_1} 0 1^{x_2} 0 ... 1^{x_t} 0 over the per-block one
// counts of one boosted bitvector. select(j) locates the owning block from S
// and finishes inside the decoded block.
class SelectOverlay {
   public:
    SelectOverlay() = default;
    explicit SelectOverlay(std::span<const std::uint32_t> block_ones);

    // Owning block (0-based) of the j-th one.
    std::uint64_t owning_block(std::uint64_t j) const;

    std::uint64_t select(const BoostedBitvector& v, std::uint64_t j) const;

    const PlainBitvector& s() const { return s_; }

   private:
    PlainBitvector s_;
};

}  // namespace triecode
