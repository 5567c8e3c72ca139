#include "triecode/enumerative.hpp"

namespace triecode {

mpz_class enumerative_encode(std::span<const std::uint8_t> bits) {
    std::uint64_t ones = 0;
    for (std::uint8_t b : bits) ones += b ? 1 : 0;
    mpz_class offset = 0;
    if (ones == 0) return offset;
    // Mirror of the decode scan: c tracks C(pos, j) down the positions, one
    // word multiply/divide per step.
    std::uint64_t j = ones;
    std::int64_t pos = static_cast<std::int64_t>(bits.size()) - 1;
    mpz_class c = binomial(static_cast<std::uint64_t>(pos), j);
    while (j >= 1) {
        if (bits[static_cast<std::size_t>(pos)]) {
            offset += c;
            if (pos > 0) {
                c *= static_cast<unsigned long>(j);
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(pos));
            }
            --j;
        } else {
            c *= static_cast<unsigned long>(static_cast<std::uint64_t>(pos) - j);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(pos));
        }
        --pos;
    }
    return offset;
}

std::vector<std::uint8_t> enumerative_decode(std::uint32_t width, std::uint32_t ones,
                                             const mpz_class& offset) {
    TRIECODE_CHECK(ones <= width, "more ones than block width");
    std::vector<std::uint8_t> bits(width, 0);
    mpz_class rem = offset;
    if (ones == 0) {
        TRIECODE_CHECK(rem == 0, "offset out of range for empty block");
        return bits;
    }
    // Scan positions from high to low keeping c = C(pos, j) updated with one
    // word multiply/divide per step: greedy colex unranking.
    std::uint64_t j = ones;
    std::int64_t pos = static_cast<std::int64_t>(width) - 1;
    mpz_class c = binomial(static_cast<std::uint64_t>(pos), j);
    while (j >= 1) {
        TRIECODE_CHECK(pos >= 0, "offset out of range for block");
        if (c <= rem) {
            bits[static_cast<std::size_t>(pos)] = 1;
            rem -= c;
            // C(pos, j) -> C(pos - 1, j - 1) = C(pos, j) * j / pos
            if (pos > 0) {
                c *= static_cast<unsigned long>(j);
                mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(pos));
            }
            --j;
        } else {
            // C(pos, j) -> C(pos - 1, j) = C(pos, j) * (pos - j) / pos
            c *= static_cast<unsigned long>(static_cast<std::uint64_t>(pos) - j);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(pos));
        }
        --pos;
    }
    TRIECODE_CHECK(rem == 0, "offset not fully consumed");
    return bits;
}

std::uint64_t enumerative_code_bits(std::uint32_t width, std::uint32_t ones) {
    mpz_class c = binomial(width, ones);
    TRIECODE_CHECK(c >= 1, "invalid (width, ones) pair");
    if (c == 1) return 0;
    mpz_class top = c - 1;  // offsets occupy [0, C-1]
    return mpz_sizeinbase(top.get_mpz_t(), 2);
}

}  // namespace triecode
