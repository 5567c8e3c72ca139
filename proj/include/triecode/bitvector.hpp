#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace triecode {

// Static bitvector with O(1) rank and sampled select. Positions are 1-based
// to match the query conventions used throughout (rank(i) counts ones in
// B[1..i]; rank(0) = 0 is allowed).
class PlainBitvector {
   public:
    PlainBitvector() = default;
    explicit PlainBitvector(std::span<const std::uint8_t> bits);

    std::uint64_t size() const { return m_; }
    std::uint64_t ones() const { return ones_; }
    bool get(std::uint64_t i) const;  // 1 <= i <= m

    std::uint64_t rank(std::uint64_t i) const;   // 0 <= i <= m
    std::int64_t prank(std::uint64_t i) const;   // rank(i) if B[i] = 1 else -1
    std::uint64_t select(std::uint64_t j) const; // 1 <= j <= ones

    std::uint64_t directory_bits() const;  // measured auxiliary space

   private:
    static constexpr std::uint64_t kWordBits = 64;
    static constexpr std::uint64_t kWordsPerSuper = 8;
    static constexpr std::uint64_t kSelectSample = 64;

    std::uint64_t m_ = 0;
    std::uint64_t ones_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> super_;          // ones before each superblock
    std::vector<std::uint16_t> block_;          // ones before each word, within superblock
    std::vector<std::uint64_t> select_sample_;  // position of one (kSelectSample*j + 1)
};

// Full rank answered through select probes only: binary search on
// the ones. Uses at most ceil(log2(ones)) + 1 probes; *probes reports the
// count when non-null. Works on anything exposing ones() and select(j).
template <class SelectCapable>
std::uint64_t rank_via_select(const SelectCapable& v, std::uint64_t i,
                              std::uint64_t* probes = nullptr) {
    if (probes) *probes = 0;
    std::uint64_t lo = 1, hi = v.ones(), r = 0;
    while (lo <= hi) {
        std::uint64_t j = lo + (hi - lo) / 2;
        if (probes) ++(*probes);
        std::uint64_t pos = v.select(j);
        if (pos == i) return j;
        if (pos < i) {
            r = j;
            lo = j + 1;
        } else {
            hi = j - 1;
        }
    }
    return r;
}

}  // namespace triecode
