#include "triecode/bitvector.hpp"

#include <bit>
#include <stdexcept>

namespace triecode {

PlainBitvector::PlainBitvector(std::span<const std::uint8_t> bits) : m_(bits.size()) {
    words_.assign((m_ + kWordBits - 1) / kWordBits + 1, 0);
    for (std::uint64_t i = 0; i < m_; ++i)
        if (bits[i]) words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);

    super_.assign(words_.size() / kWordsPerSuper + 1, 0);
    block_.assign(words_.size(), 0);
    std::uint64_t acc = 0;
    for (std::uint64_t w = 0; w < words_.size(); ++w) {
        if (w % kWordsPerSuper == 0) super_[w / kWordsPerSuper] = acc;
        block_[w] = static_cast<std::uint16_t>(acc - super_[w / kWordsPerSuper]);
        acc += static_cast<std::uint64_t>(std::popcount(words_[w]));
    }
    ones_ = acc;

    select_sample_.reserve(ones_ / kSelectSample + 1);
    std::uint64_t seen = 0;
    for (std::uint64_t i = 0; i < m_; ++i) {
        if (!(words_[i / kWordBits] >> (i % kWordBits) & 1)) continue;
        if (seen % kSelectSample == 0) select_sample_.push_back(i + 1);
        ++seen;
    }
}

bool PlainBitvector::get(std::uint64_t i) const {
    if (i < 1 || i > m_) throw std::out_of_range("bitvector position out of range");
    std::uint64_t p = i - 1;
    return words_[p / kWordBits] >> (p % kWordBits) & 1;
}

std::uint64_t PlainBitvector::rank(std::uint64_t i) const {
    if (i > m_) throw std::out_of_range("rank position out of range");
    if (i == 0) return 0;
    std::uint64_t p = i - 1;  // count bits [0..p]
    std::uint64_t w = p / kWordBits;
    std::uint64_t r = super_[w / kWordsPerSuper] + block_[w];
    std::uint64_t mask = (p % kWordBits == kWordBits - 1)
                             ? ~std::uint64_t{0}
                             : ((std::uint64_t{1} << (p % kWordBits + 1)) - 1);
    return r + static_cast<std::uint64_t>(std::popcount(words_[w] & mask));
}

std::int64_t PlainBitvector::prank(std::uint64_t i) const {
    if (i < 1 || i > m_) throw std::out_of_range("prank position out of range");
    return get(i) ? static_cast<std::int64_t>(rank(i)) : -1;
}

std::uint64_t PlainBitvector::select(std::uint64_t j) const {
    if (j < 1 || j > ones_) throw std::out_of_range("select rank out of range");
    std::uint64_t pos = select_sample_[(j - 1) / kSelectSample];  // rank of this one:
    std::uint64_t seen = (j - 1) / kSelectSample * kSelectSample + 1;
    if (seen == j) return pos;
    std::uint64_t need = j - seen;  // ones strictly after pos
    std::uint64_t p = pos - 1;
    std::uint64_t w = p / kWordBits;
    std::uint64_t off = p % kWordBits;
    std::uint64_t cur = off == kWordBits - 1 ? 0 : words_[w] & ~((std::uint64_t{2} << off) - 1);
    while (static_cast<std::uint64_t>(std::popcount(cur)) < need) {
        need -= static_cast<std::uint64_t>(std::popcount(cur));
        cur = words_[++w];
    }
    for (std::uint64_t k = 1; k < need; ++k) cur &= cur - 1;  // drop need-1 lowest ones
    return w * kWordBits + static_cast<std::uint64_t>(std::countr_zero(cur)) + 1;
}

std::uint64_t PlainBitvector::directory_bits() const {
    return 64 * super_.size() + 16 * block_.size() + 64 * select_sample_.size();
}

}  // namespace triecode
