#include "triecode/boosted.hpp"

#include <cmath>
#include <stdexcept>

namespace triecode {

BoostedBitvector::BoostedBitvector(std::span<const std::uint8_t> bits, std::uint64_t block_size)
    : m_(bits.size()), b_(block_size) {
    TRIECODE_CHECK(b_ >= 1, "block size must be >= 1");
    const std::uint64_t t = (m_ + b_ - 1) / b_;
    block_ones_.reserve(t);
    offsets_.reserve(t);
    for (std::uint64_t i = 0; i < t; ++i) {
        std::uint64_t lo = i * b_;
        std::uint64_t w = std::min(b_, m_ - lo);
        std::span<const std::uint8_t> blk = bits.subspan(lo, w);
        std::uint32_t x = 0;
        for (std::uint8_t bit : blk) x += bit ? 1 : 0;
        block_ones_.push_back(x);
        offsets_.push_back(x == 0 ? mpz_class{0} : enumerative_encode(blk));
    }
    rebuild_pre_ranks();
}

BoostedBitvector::BoostedBitvector(std::uint64_t m, std::uint64_t block_size,
                                   std::vector<std::uint32_t> block_ones,
                                   std::vector<mpz_class> offsets)
    : m_(m), b_(block_size), block_ones_(std::move(block_ones)), offsets_(std::move(offsets)) {
    TRIECODE_CHECK(b_ >= 1, "block size must be >= 1");
    TRIECODE_CHECK(block_ones_.size() == offsets_.size(), "directory size mismatch");
    TRIECODE_CHECK(block_ones_.size() == (m_ + b_ - 1) / b_, "block count mismatch");
    rebuild_pre_ranks();
}

void BoostedBitvector::rebuild_pre_ranks() {
    pre_ranks_.assign(block_ones_.size(), 0);
    ones_ = 0;
    payload_bits_ = 0;
    nonempty_blocks_ = 0;
    for (std::uint64_t i = 0; i < block_ones_.size(); ++i) {
        pre_ranks_[i] = ones_;
        ones_ += block_ones_[i];
        std::uint64_t w = block_width(i);
        TRIECODE_CHECK(block_ones_[i] <= w, "block ones exceed block width");
        payload_bits_ += enumerative_code_bits(static_cast<std::uint32_t>(w), block_ones_[i]);
        if (block_ones_[i] > 0) ++nonempty_blocks_;
    }
}

std::uint64_t BoostedBitvector::block_width(std::uint64_t i) const {
    std::uint64_t lo = i * b_;
    return std::min(b_, m_ - lo);
}

std::vector<std::uint8_t> BoostedBitvector::decode_block(std::uint64_t i) const {
    return enumerative_decode(static_cast<std::uint32_t>(block_width(i)), block_ones_[i],
                              offsets_[i]);
}

std::vector<std::uint8_t> BoostedBitvector::decode_all() const {
    std::vector<std::uint8_t> out;
    out.reserve(m_);
    for (std::uint64_t i = 0; i < num_blocks(); ++i) {
        auto blk = decode_block(i);
        out.insert(out.end(), blk.begin(), blk.end());
    }
    return out;
}

bool BoostedBitvector::get(std::uint64_t i) const {
    if (i < 1 || i > m_) throw std::out_of_range("bitvector position out of range");
    std::uint64_t blk = (i - 1) / b_;
    if (block_ones_[blk] == 0) return false;
    return decode_block(blk)[(i - 1) % b_] != 0;
}

std::uint64_t BoostedBitvector::rank(std::uint64_t i) const {
    if (i > m_) throw std::out_of_range("rank position out of range");
    if (i == 0) return 0;
    std::uint64_t blk = (i - 1) / b_;
    std::uint64_t r = pre_ranks_[blk];
    if (block_ones_[blk] == 0) return r;
    std::uint64_t in = (i - 1) % b_;
    if (in + 1 == block_width(blk)) return r + block_ones_[blk];
    auto bits = decode_block(blk);
    for (std::uint64_t p = 0; p <= in; ++p) r += bits[p];
    return r;
}

std::int64_t BoostedBitvector::prank(std::uint64_t i) const {
    if (i < 1 || i > m_) throw std::out_of_range("prank position out of range");
    std::uint64_t blk = (i - 1) / b_;
    if (block_ones_[blk] == 0) return -1;
    auto bits = decode_block(blk);
    std::uint64_t in = (i - 1) % b_;
    if (!bits[in]) return -1;
    std::uint64_t r = pre_ranks_[blk];
    for (std::uint64_t p = 0; p <= in; ++p) r += bits[p];
    return static_cast<std::int64_t>(r);
}

std::uint64_t BoostedBitvector::select(std::uint64_t j) const {
    if (j < 1 || j > ones_) throw std::out_of_range("select rank out of range");
    // last block with pre_rank < j
    std::uint64_t lo = 0, hi = num_blocks() - 1;
    while (lo < hi) {
        std::uint64_t mid = (lo + hi + 1) / 2;
        if (pre_ranks_[mid] < j)
            lo = mid;
        else
            hi = mid - 1;
    }
    auto bits = decode_block(lo);
    std::uint64_t need = j - pre_ranks_[lo];
    for (std::uint64_t p = 0; p < bits.size(); ++p) {
        if (!bits[p]) continue;
        if (--need == 0) return lo * b_ + p + 1;
    }
    TRIECODE_CHECK(false, "select: block directory inconsistent");
    return 0;
}

std::uint64_t default_block_size(std::uint64_t n, std::size_t sigma) {
    double lg = n <= 1 ? 0.0 : std::log2(static_cast<double>(n));
    std::uint64_t b = static_cast<std::uint64_t>(std::ceil(static_cast<double>(sigma) * lg * lg));
    return std::min<std::uint64_t>(4096, std::max<std::uint64_t>(8, b));
}

SelectOverlay::SelectOverlay(std::span<const std::uint32_t> block_ones) {
    std::vector<std::uint8_t> s;
    std::uint64_t total = 0;
    for (std::uint32_t x : block_ones) total += x;
    s.reserve(total + block_ones.size());
    for (std::uint32_t x : block_ones) {
        s.insert(s.end(), x, 1);
        s.push_back(0);
    }
    s_ = PlainBitvector(s);
}

std::uint64_t SelectOverlay::owning_block(std::uint64_t j) const {
    // In S the j-th one sits at position j + (#separator zeros before it),
    // and that zero count is the 0-based owning block index.
    std::uint64_t pos = s_.select(j);
    return pos - j;
}

std::uint64_t SelectOverlay::select(const BoostedBitvector& v, std::uint64_t j) const {
    if (j < 1 || j > v.ones()) throw std::out_of_range("select rank out of range");
    std::uint64_t blk = owning_block(j);
    std::uint64_t before = v.pre_rank(blk);
    auto bits = v.decode_block(blk);
    std::uint64_t need = j - before;
    for (std::uint64_t p = 0; p < bits.size(); ++p) {
        if (!bits[p]) continue;
        if (--need == 0) return blk * v.block_size() + p + 1;
    }
    TRIECODE_CHECK(false, "overlay select: inconsistent S");
    return 0;
}

}  // namespace triecode
